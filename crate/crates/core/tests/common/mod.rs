//! Helpers shared by the integration tests.

#![allow(dead_code)]

use sccat::termlang::{typecheck, Env, Obj, Term};

/// The objects `A` and `A*`.
pub fn atoms() -> [Obj; 2] {
    let a = Obj::named("A");
    [a.clone(), a.dual()]
}

fn leaves() -> Vec<Term> {
    let mut out = Vec::new();
    for x in atoms() {
        out.push(Term::Id(x.clone()));
        out.push(Term::Eta(x.clone()));
        out.push(Term::Epsilon(x.clone()));
        for y in atoms() {
            out.push(Term::Sym(x.clone(), y));
        }
    }
    out
}

/// Every well-typed structural term over `A` and `A*` with at most
/// `max_nodes` constructors, grouped by size, with its type.
pub fn structural_corpus(max_nodes: usize, unary: bool) -> Vec<(Term, Obj, Obj)> {
    let env = Env::new().with_obj("A", 2);
    let typed = |t: Term| typecheck(&t, &env).ok().map(|(d, c)| (t, d, c));
    let mut by_size: Vec<Vec<(Term, Obj, Obj)>> = vec![Vec::new(), leaves().into_iter().filter_map(typed).collect()];
    for n in 2..=max_nodes {
        let mut level = Vec::new();
        if unary {
            for (t, d, c) in &by_size[n - 1] {
                let t = Box::new(t.clone());
                level.push((Term::Dagger(t.clone()), c.clone(), d.clone()));
                level.push((Term::Conj(t.clone()), d.dual(), c.dual()));
                level.push((Term::Transp(t), c.dual(), d.dual()));
            }
        }
        for left in 1..n - 1 {
            let right = n - 1 - left;
            for (g, gd, gc) in &by_size[left] {
                for (f, fd, fc) in &by_size[right] {
                    level.push((Term::tensor(g.clone(), f.clone()), gd.tensor(fd), gc.tensor(fc)));
                    if fc == gd {
                        level.push((Term::compose(g.clone(), f.clone()), fd.clone(), gc.clone()));
                    }
                }
            }
        }
        by_size.push(level);
    }
    by_size.into_iter().flatten().collect()
}
