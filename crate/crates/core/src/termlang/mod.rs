//! A small language for morphisms of the free compact closed category.
//!
//! Terms are parsed ([`parse`]), typed against an [`Env`] of object and
//! generator declarations ([`typecheck`]), evaluated into any matrix model
//! ([`eval`]), and compared either through their wiring normal form or by
//! evaluation on random models ([`terms_equal`]).

mod equal;
mod eval;
mod normal;
mod parser;
mod syntax;
mod wiring;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::error::CategoryError;

pub use equal::{terms_equal, Equality, Strategy, Verdict};
pub use eval::{eval, Model};
pub use normal::{normalize, Core};
pub use parser::{parse, parse_program, Decl, Program};
pub use syntax::{Atom, Base, Obj, Term};
pub use wiring::{core_wiring, wiring_normal_form, BoxLabel, End, Step, Wiring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("type error: {0}")]
    Type(String),
    #[error("unbound generator `{0}`")]
    UnboundGenerator(String),
    #[error("object `{0}` has no dimension")]
    UnboundObject(String),
    #[error(transparent)]
    Category(#[from] CategoryError),
}

impl TermError {
    pub(crate) fn syntax(line: usize, col: usize, message: impl Into<String>) -> Self {
        TermError::Syntax { line, col, message: message.into() }
    }
}

/// A generator's declared type and, optionally, its matrix as written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenDecl {
    pub dom: Obj,
    pub cod: Obj,
    pub matrix: Option<String>,
}

/// Declared objects (with dimensions) and generators.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Env {
    pub dims: BTreeMap<String, usize>,
    pub gens: BTreeMap<String, GenDecl>,
}

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    pub fn with_obj(mut self, name: &str, dim: usize) -> Self {
        self.dims.insert(name.to_string(), dim);
        self
    }

    pub fn with_gen(mut self, name: &str, dom: Obj, cod: Obj) -> Self {
        self.gens.insert(name.to_string(), GenDecl { dom, cod, matrix: None });
        self
    }

    /// Adds a file's declarations; later declarations win.
    pub fn extend(&mut self, decls: &[Decl]) {
        for d in decls {
            match d {
                Decl::Obj { name, dim } => {
                    self.dims.insert(name.clone(), *dim);
                }
                Decl::Gen { name, dom, cod, matrix } => {
                    let matrix = matrix.clone().or_else(|| self.gens.get(name).and_then(|g| g.matrix.clone()));
                    self.gens.insert(name.clone(), GenDecl { dom: dom.clone(), cod: cod.clone(), matrix });
                }
            }
        }
    }
}

fn mismatch(what: &str, expected: &Obj, found: &Obj) -> TermError {
    TermError::Type(format!("{what}: expected `{expected}`, found `{found}`"))
}

/// Domain and codomain of a term.
pub fn typecheck(t: &Term, env: &Env) -> Result<(Obj, Obj), TermError> {
    Ok(match t {
        Term::Gen(n) => {
            let g = env.gens.get(n).ok_or_else(|| TermError::UnboundGenerator(n.clone()))?;
            (g.dom.clone(), g.cod.clone())
        }
        Term::Id(a) => (a.clone(), a.clone()),
        Term::Compose(g, f) => {
            let (fd, fc) = typecheck(f, env)?;
            let (gd, gc) = typecheck(g, env)?;
            if fc != gd {
                return Err(TermError::Type(format!(
                    "cannot compose `{g}` after `{f}`: codomain `{fc}` is not domain `{gd}`"
                )));
            }
            (fd, gc)
        }
        Term::Tensor(a, b) => {
            let (ad, ac) = typecheck(a, env)?;
            let (bd, bc) = typecheck(b, env)?;
            (ad.tensor(&bd), ac.tensor(&bc))
        }
        Term::Sym(a, b) => (a.tensor(b), b.tensor(a)),
        Term::Eta(a) => (Obj::unit(), a.dual().tensor(a)),
        Term::Epsilon(a) => (a.tensor(&a.dual()), Obj::unit()),
        Term::Dagger(t) => {
            let (d, c) = typecheck(t, env)?;
            (c, d)
        }
        Term::Conj(t) => {
            let (d, c) = typecheck(t, env)?;
            (d.dual(), c.dual())
        }
        Term::Transp(t) => {
            let (d, c) = typecheck(t, env)?;
            (c.dual(), d.dual())
        }
        Term::Name(t) => {
            let (d, c) = typecheck(t, env)?;
            (Obj::unit(), d.dual().tensor(&c))
        }
        Term::Coname(t) => {
            let (d, c) = typecheck(t, env)?;
            (d.tensor(&c.dual()), Obj::unit())
        }
        Term::Trace(t, c) => {
            let (d, k) = typecheck(t, env)?;
            let a = d.strip_suffix(c).ok_or_else(|| mismatch("trace domain must end in the traced object", c, &d))?;
            let b = k.strip_suffix(c).ok_or_else(|| mismatch("trace codomain must end in the traced object", c, &k))?;
            (a, b)
        }
        Term::ScalarMul(_, t) => typecheck(t, env)?,
    })
}

/// Splits `dom(t) = A ⊗ C`, `cod(t) = B ⊗ C` for a trace over `C`.
pub(crate) fn trace_split(t: &Term, c: &Obj, env: &Env) -> Result<(Obj, Obj), TermError> {
    typecheck(&Term::Trace(Box::new(t.clone()), c.clone()), env)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env() -> Env {
        let a = Obj::named("A");
        let b = Obj::named("B");
        Env::new().with_obj("A", 2).with_obj("B", 3).with_gen("f", a.clone(), b.clone()).with_gen("g", b, a)
    }

    fn ty(src: &str) -> Result<(Obj, Obj), TermError> {
        typecheck(&parse(src).unwrap(), &env())
    }

    #[test]
    fn triangle_is_an_endomorphism() {
        let a = Obj::named("A");
        assert_eq!(ty("(eps(A) * id(A)) . (id(A) * eta(A))").unwrap(), (a.clone(), a));
        assert!(ty("eps(A) . (id(A) * eta(A))").is_err());
    }

    #[test]
    fn name_typing() {
        let (d, c) = ty("name(f)").unwrap();
        assert!(d.is_unit());
        assert_eq!(c, Obj::named("A").dual().tensor(&Obj::named("B")));
        let (d, c) = ty("coname(f)").unwrap();
        assert_eq!((d.to_string(), c.to_string()), ("A * B^*".to_string(), "I".to_string()));
    }

    #[test]
    fn mismatches_name_the_objects() {
        let err = ty("f . f").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains('B') && msg.contains('A'), "{msg}");
        assert!(matches!(ty("h"), Err(TermError::UnboundGenerator(n)) if n == "h"));
        assert!(matches!(ty("tr(f; A)"), Err(TermError::Type(_))));
    }

    #[test]
    fn unary_operations() {
        let (a, b) = (Obj::named("A"), Obj::named("B"));
        assert_eq!(ty("dg(f)").unwrap(), (b.clone(), a.clone()));
        assert_eq!(ty("conj(f)").unwrap(), (a.dual(), b.dual()));
        assert_eq!(ty("transp(f)").unwrap(), (b.dual(), a.dual()));
        assert_eq!(ty("tr(f * id(A); A)").unwrap().1, b);
        assert_eq!(ty("2 @ f").unwrap(), (a, b));
    }

    #[test]
    fn env_merges_matrices() {
        let mut e = Env::new();
        e.extend(&parse_program("gen f : 2 -> 2 = [[1,0],[0,1]];").unwrap().decls);
        e.extend(&parse_program("gen f : 2 -> 2;").unwrap().decls);
        assert!(e.gens["f"].matrix.is_some());
    }
}
