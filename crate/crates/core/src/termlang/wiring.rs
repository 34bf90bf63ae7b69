//! Wiring normal form: the connectivity of a string diagram.
//!
//! A primitive term becomes a port graph. Units are caps joining their two
//! codomain ports, counits are cups, symmetries cross wires, generators are
//! boxes with one port per object factor. Composition glues codomain ports
//! to domain ports and follows wires through the seam, so cup/cap zigzags
//! straighten out and closed circles are counted. Boxes with a single input
//! and a single output are then absorbed into the wire passing through them,
//! leaving an ordered list of steps on that wire.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use super::normal::{normalize, Core};
use super::syntax::{Atom, Base};
use super::{Env, TermError};
use crate::semiring::{ComplexRational, Semiring};

/// An endpoint of a wire: a boundary port, or a port of a box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Dom(usize),
    Cod(usize),
    In(usize, usize),
    Out(usize, usize),
}

impl End {
    fn rebox(self, f: impl Fn(usize) -> usize) -> End {
        match self {
            End::In(b, k) => End::In(f(b), k),
            End::Out(b, k) => End::Out(f(b), k),
            other => other,
        }
    }
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            End::Dom(i) => write!(f, "dom{i}"),
            End::Cod(i) => write!(f, "cod{i}"),
            End::In(b, k) => write!(f, "box{b}.in{k}"),
            End::Out(b, k) => write!(f, "box{b}.out{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxLabel {
    pub name: String,
    pub conj: bool,
}

impl fmt::Display for BoxLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.name, if self.conj { "_*" } else { "" })
    }
}

/// Passing through a one-in one-out box, along (`forward`) or against it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub label: BoxLabel,
    pub forward: bool,
}

impl Step {
    fn flipped(&self) -> Step {
        Step { label: self.label.clone(), forward: !self.forward }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.label, if self.forward { "" } else { "^T" })
    }
}

fn reversed(steps: &[Step]) -> Vec<Step> {
    steps.iter().rev().map(Step::flipped).collect()
}

/// The normal form. `wires` is a perfect matching on the endpoints, sorted,
/// each oriented from its smaller endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wiring {
    pub dom_ports: usize,
    pub cod_ports: usize,
    /// Boxes that were not absorbed into a wire.
    pub boxes: Vec<BoxLabel>,
    pub wires: Vec<(End, End, Vec<Step>)>,
    /// Plain closed circles, counted per underlying object.
    pub loops: BTreeMap<Base, usize>,
    /// Closed circles that pass through boxes, up to rotation and reversal.
    pub labeled_loops: Vec<Vec<Step>>,
    /// Scalar literals with their conjugation flags.
    pub scalars: Vec<(String, bool)>,
}

impl Wiring {
    pub fn loop_count(&self) -> usize {
        self.loops.values().sum::<usize>() + self.labeled_loops.len()
    }

    pub fn is_identity(&self) -> bool {
        self.dom_ports == self.cod_ports
            && self.boxes.is_empty()
            && self.loop_count() == 0
            && self.scalars.is_empty()
            && self.wires.iter().enumerate().all(|(i, (a, b, s))| *a == End::Dom(i) && *b == End::Cod(i) && s.is_empty())
    }

    /// Product of the scalar literals read as complex rationals, if they all parse.
    pub fn scalar_value(&self) -> Option<ComplexRational> {
        self.scalars.iter().try_fold(ComplexRational::one(), |acc, (lit, conj)| {
            let s = ComplexRational::parse_literal(lit).ok()?;
            Some(acc.mul(&if *conj { s.conj() } else { s }))
        })
    }

    fn with_boxes_renamed(&self, perm: &[usize]) -> Vec<(End, End, Vec<Step>)> {
        let mut wires: Vec<_> = self
            .wires
            .iter()
            .map(|(a, b, s)| orient(a.rebox(|k| perm[k]), b.rebox(|k| perm[k]), s.clone()))
            .collect();
        wires.sort();
        wires
    }

    /// Whether the two wirings agree up to renaming boxes with equal labels.
    /// `None` when there are too many candidate renamings to try.
    pub fn isomorphic(&self, other: &Wiring) -> Option<bool> {
        let same_shape = self.dom_ports == other.dom_ports
            && self.cod_ports == other.cod_ports
            && self.loops == other.loops
            && self.labeled_loops == other.labeled_loops
            && self.wires.len() == other.wires.len();
        let (mut mine, mut theirs) = (self.boxes.clone(), other.boxes.clone());
        mine.sort();
        theirs.sort();
        if !same_shape || mine != theirs {
            return Some(false);
        }
        let mut groups: BTreeMap<&BoxLabel, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for (k, l) in self.boxes.iter().enumerate() {
            groups.entry(l).or_default().0.push(k);
        }
        for (k, l) in other.boxes.iter().enumerate() {
            groups.entry(l).or_default().1.push(k);
        }
        let candidates: u128 = groups.values().map(|(a, _)| (1..=a.len() as u128).product::<u128>()).product();
        if candidates > 200_000 {
            return None;
        }
        let groups: Vec<(Vec<usize>, Vec<usize>)> = groups.into_values().collect();
        let mut perm = vec![0; self.boxes.len()];
        Some(search(&groups, 0, &mut perm, &mut |p| self.with_boxes_renamed(p) == other.wires))
    }
}

fn search(groups: &[(Vec<usize>, Vec<usize>)], g: usize, perm: &mut Vec<usize>, test: &mut impl FnMut(&[usize]) -> bool) -> bool {
    let Some((from, to)) = groups.get(g) else {
        return test(perm);
    };
    let mut order: Vec<usize> = (0..to.len()).collect();
    permute(&mut order, 0, &mut |o| {
        for (k, &src) in from.iter().enumerate() {
            perm[src] = to[o[k]];
        }
        search(groups, g + 1, perm, test)
    })
}

fn permute(v: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == v.len() {
        return visit(v);
    }
    for i in k..v.len() {
        v.swap(k, i);
        if permute(v, k + 1, visit) {
            return true;
        }
        v.swap(k, i);
    }
    false
}

fn orient(a: End, b: End, steps: Vec<Step>) -> (End, End, Vec<Step>) {
    if b < a {
        (b, a, reversed(&steps))
    } else {
        (a, b, steps)
    }
}

fn canonical_cycle(steps: &[Step]) -> Vec<Step> {
    let back = reversed(steps);
    let n = steps.len();
    (0..n)
        .flat_map(|r| {
            let fwd: Vec<Step> = steps[r..].iter().chain(&steps[..r]).cloned().collect();
            let bwd: Vec<Step> = back[r..].iter().chain(&back[..r]).cloned().collect();
            [fwd, bwd]
        })
        .min()
        .unwrap_or_default()
}

impl fmt::Display for Wiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} ports", self.dom_ports, self.cod_ports)?;
        if !self.boxes.is_empty() {
            let names: Vec<String> = self.boxes.iter().enumerate().map(|(k, b)| format!("box{k}={b}")).collect();
            write!(f, "; {}", names.join(" "))?;
        }
        for (a, b, steps) in &self.wires {
            write!(f, "\n  {a} -- {b}")?;
            if !steps.is_empty() {
                let s: Vec<String> = steps.iter().map(ToString::to_string).collect();
                write!(f, " [{}]", s.join(", "))?;
            }
        }
        for (base, n) in &self.loops {
            write!(f, "\n  loop {base} x{n}")?;
        }
        for l in &self.labeled_loops {
            let s: Vec<String> = l.iter().map(ToString::to_string).collect();
            write!(f, "\n  loop [{}]", s.join(", "))?;
        }
        for (s, conj) in &self.scalars {
            write!(f, "\n  scalar {s}{}", if *conj { " (conjugated)" } else { "" })?;
        }
        Ok(())
    }
}

/// Raw port graph before box absorption.
#[derive(Debug, Clone, Default)]
struct Diagram {
    dom: Vec<Atom>,
    cod: Vec<Atom>,
    boxes: Vec<(BoxLabel, usize, usize)>,
    link: HashMap<End, End>,
    loops: BTreeMap<Base, usize>,
    scalars: Vec<(String, bool)>,
}

impl Diagram {
    fn join(&mut self, a: End, b: End) {
        self.link.insert(a, b);
        self.link.insert(b, a);
    }

    fn primitive(core: &Core) -> Diagram {
        let mut d = Diagram::default();
        match core {
            Core::Id(a) => {
                d.dom = a.atoms().to_vec();
                d.cod = d.dom.clone();
                for i in 0..a.len() {
                    d.join(End::Dom(i), End::Cod(i));
                }
            }
            Core::Sym(a, b) => {
                d.dom = a.tensor(b).atoms().to_vec();
                d.cod = b.tensor(a).atoms().to_vec();
                for i in 0..a.len() {
                    d.join(End::Dom(i), End::Cod(b.len() + i));
                }
                for j in 0..b.len() {
                    d.join(End::Dom(a.len() + j), End::Cod(j));
                }
            }
            Core::Eta(x) => {
                d.cod = x.dual().tensor(x).atoms().to_vec();
                for k in 0..x.len() {
                    d.join(End::Cod(k), End::Cod(x.len() + k));
                }
            }
            Core::Eps(x) => {
                d.dom = x.tensor(&x.dual()).atoms().to_vec();
                for k in 0..x.len() {
                    d.join(End::Dom(k), End::Dom(x.len() + k));
                }
            }
            Core::Gen { name, dom, cod, conj, transposed } => {
                let (dom, cod) = if *conj { (dom.dual(), cod.dual()) } else { (dom.clone(), cod.clone()) };
                d.boxes.push((BoxLabel { name: name.clone(), conj: *conj }, dom.len(), cod.len()));
                if *transposed {
                    d.dom = cod.dual().atoms().to_vec();
                    d.cod = dom.dual().atoms().to_vec();
                    for j in 0..cod.len() {
                        d.join(End::Dom(j), End::Out(0, j));
                    }
                    for i in 0..dom.len() {
                        d.join(End::Cod(i), End::In(0, i));
                    }
                } else {
                    d.dom = dom.atoms().to_vec();
                    d.cod = cod.atoms().to_vec();
                    for i in 0..dom.len() {
                        d.join(End::Dom(i), End::In(0, i));
                    }
                    for j in 0..cod.len() {
                        d.join(End::Out(0, j), End::Cod(j));
                    }
                }
            }
            Core::Scalar { literal, conj } => d.scalars.push((literal.clone(), *conj)),
            Core::Compose(..) | Core::Tensor(..) => unreachable!("not a primitive"),
        }
        d
    }

    fn build(core: &Core) -> Diagram {
        match core {
            Core::Compose(g, f) => Diagram::compose(Diagram::build(g), Diagram::build(f)),
            Core::Tensor(a, b) => Diagram::tensor(Diagram::build(a), Diagram::build(b)),
            prim => Diagram::primitive(prim),
        }
    }

    fn merge_extras(&mut self, other: &Diagram) {
        for (b, n) in &other.loops {
            *self.loops.entry(b.clone()).or_default() += n;
        }
        self.scalars.extend(other.scalars.iter().cloned());
    }

    fn tensor(a: Diagram, b: Diagram) -> Diagram {
        let (nd, nc, nb) = (a.dom.len(), a.cod.len(), a.boxes.len());
        let mut d = a.clone();
        d.dom.extend(b.dom.iter().cloned());
        d.cod.extend(b.cod.iter().cloned());
        d.boxes.extend(b.boxes.iter().cloned());
        let shift = |e: End| match e {
            End::Dom(i) => End::Dom(i + nd),
            End::Cod(i) => End::Cod(i + nc),
            other => other.rebox(|k| k + nb),
        };
        for (x, y) in &b.link {
            d.link.insert(shift(*x), shift(*y));
        }
        d.merge_extras(&b);
        d
    }

    /// `g ∘ f`: `f`'s codomain ports are glued to `g`'s domain ports.
    fn compose(g: Diagram, f: Diagram) -> Diagram {
        #[derive(Clone, Copy, PartialEq, Eq, Hash)]
        enum Side {
            F,
            G,
        }
        let nb = f.boxes.len();
        let follow = |(side, e): (Side, End)| match side {
            Side::F => (Side::F, f.link[&e]),
            Side::G => (Side::G, g.link[&e]),
        };
        let jump = |(side, e): (Side, End)| match (side, e) {
            (Side::F, End::Cod(i)) => Some((Side::G, End::Dom(i))),
            (Side::G, End::Dom(i)) => Some((Side::F, End::Cod(i))),
            _ => None,
        };
        let outer = |(side, e): (Side, End)| match side {
            Side::F => e,
            Side::G => e.rebox(|k| k + nb),
        };

        let mut d = Diagram { dom: f.dom.clone(), cod: g.cod.clone(), ..Diagram::default() };
        d.boxes = f.boxes.iter().chain(&g.boxes).cloned().collect();
        let mut starts: Vec<(Side, End)> = Vec::new();
        starts.extend((0..f.dom.len()).map(|i| (Side::F, End::Dom(i))));
        starts.extend((0..g.cod.len()).map(|i| (Side::G, End::Cod(i))));
        for (side, boxes) in [(Side::F, &f.boxes), (Side::G, &g.boxes)] {
            for (b, (_, ins, outs)) in boxes.iter().enumerate() {
                starts.extend((0..*ins).map(|k| (side, End::In(b, k))));
                starts.extend((0..*outs).map(|k| (side, End::Out(b, k))));
            }
        }
        let mut seen: HashSet<(Side, End)> = HashSet::new();
        for start in starts {
            if seen.contains(&start) {
                continue;
            }
            let mut cur = start;
            let end = loop {
                let p = follow(cur);
                match jump(p) {
                    Some(q) => {
                        seen.insert(p);
                        seen.insert(q);
                        cur = q;
                    }
                    None => break p,
                }
            };
            seen.insert(start);
            seen.insert(end);
            d.join(outer(start), outer(end));
        }
        for i in 0..f.cod.len() {
            let start = (Side::F, End::Cod(i));
            if seen.contains(&start) {
                continue;
            }
            let mut cur = start;
            loop {
                seen.insert(cur);
                let q = jump(cur).expect("closed circles stay on the seam");
                seen.insert(q);
                cur = follow(q);
                if cur == start {
                    break;
                }
            }
            *d.loops.entry(f.cod[i].base.clone()).or_default() += 1;
        }
        d.merge_extras(&f);
        d.merge_extras(&g);
        d
    }

    fn finish(self) -> Wiring {
        let unary: Vec<bool> = self.boxes.iter().map(|(_, i, o)| *i == 1 && *o == 1).collect();
        let mut renumber = vec![usize::MAX; self.boxes.len()];
        let mut boxes = Vec::new();
        for (b, (label, _, _)) in self.boxes.iter().enumerate() {
            if !unary[b] {
                renumber[b] = boxes.len();
                boxes.push(label.clone());
            }
        }
        let through = |e: End| -> Option<(Step, End)> {
            match e {
                End::In(b, 0) if unary[b] => Some((Step { label: self.boxes[b].0.clone(), forward: true }, End::Out(b, 0))),
                End::Out(b, 0) if unary[b] => Some((Step { label: self.boxes[b].0.clone(), forward: false }, End::In(b, 0))),
                _ => None,
            }
        };
        let mut terminals: Vec<End> = (0..self.dom.len()).map(End::Dom).chain((0..self.cod.len()).map(End::Cod)).collect();
        for (b, (_, ins, outs)) in self.boxes.iter().enumerate() {
            if !unary[b] {
                terminals.extend((0..*ins).map(|k| End::In(b, k)));
                terminals.extend((0..*outs).map(|k| End::Out(b, k)));
            }
        }
        let mut seen: HashSet<End> = HashSet::new();
        let mut visited_box = vec![false; self.boxes.len()];
        let mut wires = Vec::new();
        for start in terminals {
            if !seen.insert(start) {
                continue;
            }
            let mut steps = Vec::new();
            let mut cur = start;
            let end = loop {
                let p = self.link[&cur];
                match through(p) {
                    Some((step, exit)) => {
                        if let End::In(b, _) | End::Out(b, _) = p {
                            visited_box[b] = true;
                        }
                        steps.push(step);
                        cur = exit;
                    }
                    None => break p,
                }
            };
            seen.insert(end);
            let rn = |e: End| e.rebox(|k| renumber[k]);
            wires.push(orient(rn(start), rn(end), steps));
        }
        wires.sort();
        let mut labeled_loops = Vec::new();
        for b in 0..self.boxes.len() {
            if !unary[b] || visited_box[b] {
                continue;
            }
            let mut steps = Vec::new();
            let mut cur = End::In(b, 0);
            loop {
                let (step, exit) = through(cur).expect("unary box");
                if let End::In(k, _) | End::Out(k, _) = cur {
                    visited_box[k] = true;
                }
                steps.push(step);
                cur = self.link[&exit];
                if cur == End::In(b, 0) {
                    break;
                }
            }
            labeled_loops.push(canonical_cycle(&steps));
        }
        labeled_loops.sort();
        let mut scalars = self.scalars;
        scalars.sort();
        Wiring {
            dom_ports: self.dom.len(),
            cod_ports: self.cod.len(),
            boxes,
            wires,
            loops: self.loops,
            labeled_loops,
            scalars,
        }
    }
}

/// The wiring of an elaborated term.
pub fn core_wiring(core: &Core) -> Wiring {
    Diagram::build(core).finish()
}

/// Elaborates `t` and computes its wiring normal form.
pub fn wiring_normal_form(t: &super::Term, env: &Env) -> Result<Wiring, TermError> {
    Ok(core_wiring(&normalize(t, env)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::termlang::{parse, Obj};

    fn env() -> Env {
        let (a, b, c) = (Obj::named("A"), Obj::named("B"), Obj::named("C"));
        Env::new()
            .with_gen("f", a.clone(), b.clone())
            .with_gen("g", b.clone(), c.clone())
            .with_gen("h", a.tensor(&b), c)
            .with_gen("k", a.clone(), a)
    }

    fn wiring(src: &str) -> Wiring {
        wiring_normal_form(&parse(src).unwrap(), &env()).unwrap()
    }

    #[test]
    fn triangle_is_identity() {
        let w = wiring("(eps(A) * id(A)) . (id(A) * eta(A))");
        assert!(w.is_identity(), "{w}");
        assert_eq!(w.loop_count(), 0);
        assert_eq!(w, wiring("id(A)"));
    }

    #[test]
    fn circle_is_one_loop() {
        let w = wiring("eps(A) . sym(A*, A) . eta(A)");
        assert_eq!((w.dom_ports, w.cod_ports, w.wires.len()), (0, 0, 0));
        assert_eq!(w.loops, BTreeMap::from([(Base::Named("A".into()), 1)]));
    }

    #[test]
    fn one_wire_carries_both_boxes() {
        let w = wiring("(coname(f) * id(C)) . (id(A) * name(g))");
        assert_eq!(w.wires.len(), 1);
        let (a, b, steps) = &w.wires[0];
        assert_eq!((*a, *b), (End::Dom(0), End::Cod(0)));
        let names: Vec<String> = steps.iter().map(ToString::to_string).collect();
        assert_eq!(names, ["f", "g"]);
        assert_eq!(w, wiring("g . f"));
    }

    #[test]
    fn transpose_reverses_the_step() {
        let w = wiring("transp(f)");
        assert_eq!(w.wires[0].2, vec![Step { label: BoxLabel { name: "f".into(), conj: false }, forward: false }]);
        assert_eq!(wiring("dg(dg(f))"), wiring("f"));
        assert_eq!(wiring("transp(transp(f))"), wiring("f"));
        assert_ne!(wiring("conj(transp(f))"), wiring("transp(f)"));
    }

    #[test]
    fn traces_become_labeled_loops_up_to_cycling() {
        assert_eq!(wiring("tr(sym(A, A) . (k * k); A)"), wiring("k . k"));
        let one = wiring("tr(k; A)");
        assert_eq!(one.labeled_loops.len(), 1);
    }

    #[test]
    fn multi_port_boxes_match_up_to_renaming() {
        let w1 = wiring("h * h");
        let w2 = wiring("sym(C, C) . (h * h) . sym(A * B, A * B)");
        assert_ne!(w1, w2);
        assert_eq!(w1.isomorphic(&w2), Some(true));
        assert_eq!(w1.isomorphic(&wiring("(h * h) . sym(A * B, A * B)")), Some(false));
    }

    #[test]
    fn yanking_and_strong_triangle_are_identities() {
        assert!(wiring("(dg(eta(A)) * id(A)) . (id(A*) * sym(A, A)) . (eta(A) * id(A))").is_identity());
        assert!(wiring("((dg(eta(A)) . sym(A, A*)) * id(A)) . (id(A) * eta(A))").is_identity());
        assert!(wiring("tr(sym(A, A); A)").is_identity());
    }
}
