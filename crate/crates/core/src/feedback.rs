//! Feedback on finite relations.
//!
//! With disjoint union as the tensor, a relation `R ⊆ (X+Z) × (Y+Z)` splits
//! into four blocks and its trace relates `x` to `y` when some path
//! `x R z₁ R … R zₙ R y` runs through the feedback states, `n = 0` included.
//! This is `R_XY ∪ R_ZY ∘ R_ZZ^⋆ ∘ R_XZ` with `⋆` the reflexive-transitive
//! closure. The multiplicative trace, with the cartesian product as tensor,
//! is the matrix trace over `𝔹`.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::compact;
use crate::error::CategoryError;
use crate::matcat::{Morphism, TensorObject};
use crate::semiring::Boolean;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FeedbackError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// A relation between two finite sets, possibly empty ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    from: usize,
    to: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(from: usize, to: usize) -> Self {
        Relation { from, to, bits: vec![false; from * to] }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Relation::empty(n, n);
        for i in 0..n {
            r.set(i, i);
        }
        r
    }

    pub fn from_size(&self) -> usize {
        self.from
    }

    pub fn to_size(&self) -> usize {
        self.to
    }

    pub fn get(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.to + b]
    }

    pub fn set(&mut self, a: usize, b: usize) {
        self.bits[a * self.to + b] = true;
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    /// `next ∘ self`: relate `a` to `c` through some `b`.
    pub fn then(&self, next: &Relation) -> Relation {
        assert_eq!(self.to, next.from, "relations do not compose");
        let mut out = Relation::empty(self.from, next.to);
        for a in 0..self.from {
            for b in (0..self.to).filter(|&b| self.get(a, b)) {
                for c in 0..next.to {
                    if next.get(b, c) {
                        out.set(a, c);
                    }
                }
            }
        }
        out
    }

    pub fn union(&self, other: &Relation) -> Relation {
        assert_eq!((self.from, self.to), (other.from, other.to), "relations differ in shape");
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| *a || *b).collect();
        Relation { from: self.from, to: self.to, bits }
    }

    /// The same relation as a matrix over `𝔹`. Both sets must be nonempty.
    pub fn to_matrix(&self) -> Morphism<Boolean> {
        let (dom, cod) = (TensorObject::from_dims(&[self.from]), TensorObject::from_dims(&[self.to]));
        Morphism::from_fn(dom, cod, |t, f| Boolean(self.get(f, t)))
    }

    pub fn from_matrix(m: &Morphism<Boolean>) -> Relation {
        let mut r = Relation::empty(m.cols(), m.rows());
        for t in 0..m.rows() {
            for f in (0..m.cols()).filter(|&f| m.entry(t, f).0) {
                r.set(f, t);
            }
        }
        r
    }
}

/// `R ⊆ (X+Z) × (Y+Z)` stored as its four blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockRelation {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub z: Vec<String>,
    pub xy: Relation,
    pub xz: Relation,
    pub zy: Relation,
    pub zz: Relation,
}

impl BlockRelation {
    /// The empty relation on the given index sets; names default to `x0`, `y0`, `z0`, ...
    pub fn empty(x: usize, y: usize, z: usize) -> Self {
        let names = |p: &str, n: usize| (0..n).map(|i| format!("{p}{i}")).collect();
        BlockRelation {
            x: names("x", x),
            y: names("y", y),
            z: names("z", z),
            xy: Relation::empty(x, y),
            xz: Relation::empty(x, z),
            zy: Relation::empty(z, y),
            zz: Relation::empty(z, z),
        }
    }

    pub fn with_xy(mut self, x: usize, y: usize) -> Self {
        self.xy.set(x, y);
        self
    }

    pub fn with_xz(mut self, x: usize, z: usize) -> Self {
        self.xz.set(x, z);
        self
    }

    pub fn with_zy(mut self, z: usize, y: usize) -> Self {
        self.zy.set(z, y);
        self
    }

    pub fn with_zz(mut self, from: usize, to: usize) -> Self {
        self.zz.set(from, to);
        self
    }

    /// Every relation of the given shape whose blocks are drawn uniformly.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, x: usize, y: usize, z: usize, density: f64) -> Self {
        let mut r = BlockRelation::empty(x, y, z);
        let mut fill = |rel: &Relation| Relation {
            from: rel.from,
            to: rel.to,
            bits: (0..rel.bits.len()).map(|_| rng.gen_bool(density)).collect(),
        };
        r.xy = fill(&r.xy);
        r.xz = fill(&r.xz);
        r.zy = fill(&r.zy);
        r.zz = fill(&r.zz);
        r
    }

    /// Successors of a node of `X + Z` in `Y + Z`, as `(is_feedback, index)`.
    pub fn successors(&self, feedback: bool, from: usize) -> Vec<(bool, usize)> {
        let (to_y, to_z) = if feedback { (&self.zy, &self.zz) } else { (&self.xy, &self.xz) };
        let ys = (0..self.y.len()).filter(|&t| to_y.get(from, t)).map(|t| (false, t));
        let zs = (0..self.z.len()).filter(|&t| to_z.get(from, t)).map(|t| (true, t));
        ys.chain(zs).collect()
    }
}

/// Reflexive-transitive closure by repeated squaring of `1 ∪ R`.
pub fn closure(r: &Relation) -> Relation {
    let n = r.from;
    let mut m = Relation::identity(n).union(r);
    let mut reach = 1;
    while reach + 1 < n {
        m = m.then(&m);
        reach *= 2;
    }
    m
}

/// `R_XY ∪ R_ZY ∘ R_ZZ^⋆ ∘ R_XZ`.
pub fn additive_trace(r: &BlockRelation) -> Relation {
    r.xy.union(&r.xz.then(&closure(&r.zz)).then(&r.zy))
}

/// The matrix trace of `R : X ⊗ Z -> Y ⊗ Z` over `𝔹`:
/// `x` relates to `y` iff `(x, z) R (y, z)` for some `z`.
pub fn multiplicative_trace_rel(r: &Morphism<Boolean>, x: usize, y: usize, z: usize) -> Result<Morphism<Boolean>, CategoryError> {
    let (xo, yo, zo) = (TensorObject::from_dims(&[x]), TensorObject::from_dims(&[y]), TensorObject::from_dims(&[z]));
    let (dom, cod) = (xo.tensor(&zo), yo.tensor(&zo));
    if r.cols() != dom.total_dim() || r.rows() != cod.total_dim() {
        return Err(CategoryError::Shape { rows: r.rows(), cols: r.cols(), want_rows: cod.total_dim(), want_cols: dom.total_dim() });
    }
    compact::trace(&r.clone().retype(dom, cod), &xo, &yo, &zo)
}

/// Parses `[X]`, `[Y]`, `[Z]` sections of node names followed by
/// `from -> to` edge lines. `#` starts a comment.
pub fn parse_block_relation(text: &str) -> Result<BlockRelation, FeedbackError> {
    #[derive(Clone, Copy, PartialEq)]
    enum Part {
        X,
        Y,
        Z,
    }
    let err = |line: usize, message: String| FeedbackError::Parse { line, message };
    let mut names: [Vec<String>; 3] = Default::default();
    let mut edges = Vec::new();
    let mut section = None;
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        let n = k + 1;
        if line.is_empty() {
            continue;
        }
        if let Some((from, to)) = line.split_once("->") {
            edges.push((n, from.trim().to_string(), to.trim().to_string()));
            continue;
        }
        match line {
            "[X]" => section = Some(Part::X),
            "[Y]" => section = Some(Part::Y),
            "[Z]" => section = Some(Part::Z),
            _ => {
                let s = section.ok_or_else(|| err(n, format!("`{line}` appears before any section")))?;
                let list = &mut names[s as usize];
                list.extend(line.split(|c: char| c == ',' || c.is_whitespace()).filter(|w| !w.is_empty()).map(String::from));
            }
        }
    }
    let mut index: HashMap<&str, (Part, usize)> = HashMap::new();
    for (part, list) in [Part::X, Part::Y, Part::Z].into_iter().zip(&names) {
        for (i, name) in list.iter().enumerate() {
            if index.insert(name, (part, i)).is_some() {
                return Err(err(0, format!("node `{name}` is declared twice")));
            }
        }
    }
    let [xs, ys, zs] = names.clone();
    let mut r = BlockRelation::empty(xs.len(), ys.len(), zs.len());
    for (n, from, to) in edges {
        let lookup = |name: &str| index.get(name).copied().ok_or_else(|| err(n, format!("unknown node `{name}`")));
        r = match (lookup(&from)?, lookup(&to)?) {
            ((Part::X, a), (Part::Y, b)) => r.with_xy(a, b),
            ((Part::X, a), (Part::Z, b)) => r.with_xz(a, b),
            ((Part::Z, a), (Part::Y, b)) => r.with_zy(a, b),
            ((Part::Z, a), (Part::Z, b)) => r.with_zz(a, b),
            _ => return Err(err(n, format!("edge `{from} -> {to}` must leave X or Z and enter Y or Z"))),
        };
    }
    r.x = xs;
    r.y = ys;
    r.z = zs;
    Ok(r)
}

/// A path taken by a particle entering at some `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub nodes: Vec<String>,
    /// Whether the particle left through `Y` within the step budget.
    pub exited: bool,
}

impl fmt::Display for Trajectory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.nodes.join(" -> "))?;
        if !self.exited {
            f.write_str(" (stuck)")?;
        }
        Ok(())
    }
}

/// Random walks from uniformly chosen inputs, each step picking a successor
/// uniformly, stopping on reaching `Y`, on a dead end, or after `max_steps`.
pub fn sample_trajectories<R: Rng + ?Sized>(r: &BlockRelation, rng: &mut R, count: usize, max_steps: usize) -> Vec<Trajectory> {
    if r.x.is_empty() {
        return Vec::new();
    }
    (0..count)
        .map(|_| {
            let start = rng.gen_range(0..r.x.len());
            let mut nodes = vec![r.x[start].clone()];
            let (mut feedback, mut at) = (false, start);
            for _ in 0..max_steps {
                let next = r.successors(feedback, at);
                if next.is_empty() {
                    break;
                }
                let (is_z, to) = next[rng.gen_range(0..next.len())];
                if !is_z {
                    nodes.push(r.y[to].clone());
                    return Trajectory { nodes, exited: true };
                }
                nodes.push(r.z[to].clone());
                (feedback, at) = (true, to);
            }
            Trajectory { nodes, exited: false }
        })
        .collect()
}

/// Renders a relation `from -> to` as `from` rows of 0/1 marks.
pub fn render(rel: &Relation, from: &[String], to: &[String]) -> String {
    let width = from.iter().map(String::len).max().unwrap_or(0);
    let mut out = format!("{:width$} | {}\n", "", to.join(" "));
    for (i, name) in from.iter().enumerate() {
        let marks: Vec<String> = to
            .iter()
            .enumerate()
            .map(|(j, t)| format!("{:>w$}", if rel.get(i, j) { "1" } else { "." }, w = t.len()))
            .collect();
        out.push_str(&format!("{name:width$} | {}\n", marks.join(" ")));
    }
    out
}

impl BlockRelation {
    /// Whether `x` relates to `y` directly.
    pub fn direct(&self, x: usize, y: usize) -> bool {
        self.xy.get(x, y)
    }
}

/// Same as [`additive_trace`] but by iterating one step at a time until
/// nothing new is reached; used to cross-check the closure.
pub fn additive_trace_by_frontier(r: &BlockRelation) -> Relation {
    let (nx, ny, nz) = (r.x.len(), r.y.len(), r.z.len());
    let mut out = r.xy.clone();
    for x in 0..nx {
        let mut seen = vec![false; nz];
        let mut frontier: Vec<usize> = (0..nz).filter(|&z| r.xz.get(x, z)).collect();
        while let Some(z) = frontier.pop() {
            if std::mem::replace(&mut seen[z], true) {
                continue;
            }
            for y in (0..ny).filter(|&y| r.zy.get(z, y)) {
                out.set(x, y);
            }
            frontier.extend((0..nz).filter(|&w| r.zz.get(z, w) && !seen[w]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Enumerates chains `x, z₁, …, zₙ, y` with `n <= |Z|` by depth-first search.
    fn chains_oracle(r: &BlockRelation, x: usize, y: usize) -> bool {
        if r.direct(x, y) {
            return true;
        }
        fn extend(r: &BlockRelation, z: usize, y: usize, len: usize) -> bool {
            if r.zy.get(z, y) {
                return true;
            }
            len < r.z.len() && (0..r.z.len()).any(|w| r.zz.get(z, w) && extend(r, w, y, len + 1))
        }
        (0..r.z.len()).any(|z| r.xz.get(x, z) && extend(r, z, y, 1))
    }

    fn agrees_with_oracle(r: &BlockRelation) -> bool {
        let tr = additive_trace(r);
        (0..r.x.len()).all(|x| (0..r.y.len()).all(|y| tr.get(x, y) == chains_oracle(r, x, y)))
    }

    #[test]
    fn no_feedback_states() {
        let r = BlockRelation::empty(2, 2, 0).with_xy(0, 1);
        assert_eq!(additive_trace(&r), r.xy);
    }

    #[test]
    fn self_loop_chain() {
        let r = BlockRelation::empty(1, 1, 1).with_xz(0, 0).with_zz(0, 0).with_zy(0, 0);
        assert!(additive_trace(&r).get(0, 0));
    }

    #[test]
    fn two_step_chain_and_its_removal() {
        let r = BlockRelation::empty(1, 1, 2).with_xz(0, 0).with_zz(0, 1).with_zy(1, 0);
        assert!(additive_trace(&r).get(0, 0));
        let broken = BlockRelation::empty(1, 1, 2).with_xz(0, 0).with_zy(1, 0);
        assert!(!additive_trace(&broken).get(0, 0));
    }

    #[test]
    fn closure_is_idempotent_and_matches_frontier_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let z = rng.gen_range(0..=6);
            let r = BlockRelation::random(&mut rng, 3, 3, z, 0.3);
            let star = closure(&r.zz);
            assert_eq!(closure(&star), star);
            assert_eq!(additive_trace(&r), additive_trace_by_frontier(&r));
            assert!(agrees_with_oracle(&r));
        }
    }

    #[test]
    fn multiplicative_trace_examples() {
        let id = Morphism::<Boolean>::identity(&TensorObject::from_dims(&[6]));
        assert_eq!(multiplicative_trace_rel(&id, 2, 2, 3).unwrap(), Morphism::identity(&TensorObject::from_dims(&[2])));
        // (x, 0) relates only to (y, 1): no shared feedback state
        let mut entries = vec![Boolean(false); 16];
        // row (y0, z1), column (x0, z0)
        entries[4] = Boolean(true);
        let r = Morphism::new(TensorObject::from_dims(&[4]), TensorObject::from_dims(&[4]), entries).unwrap();
        assert!(multiplicative_trace_rel(&r, 2, 2, 2).unwrap().is_zero());
    }

    #[test]
    fn parse_sections_and_edges() {
        let text = "[X]\nin\n[Y]\nout\n[Z]\na, b\n\nin -> a\na -> b  # forward\nb -> out\n";
        let r = parse_block_relation(text).unwrap();
        assert_eq!(r.z, ["a", "b"]);
        assert!(additive_trace(&r).get(0, 0));
        assert!(parse_block_relation("[X]\nx\n[Y]\ny\nx -> nowhere").is_err());
        assert!(parse_block_relation("[X]\nx\n[Y]\ny\ny -> x").is_err());
        assert!(parse_block_relation("x").is_err());
    }

    #[test]
    fn trajectories_follow_edges() {
        let r = parse_block_relation("[X]\nx\n[Y]\ny\n[Z]\nz\nx -> z\nz -> z\nz -> y\n").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for t in sample_trajectories(&r, &mut rng, 20, 50) {
            assert_eq!(t.nodes.first().map(String::as_str), Some("x"));
            if t.exited {
                assert_eq!(t.nodes.last().map(String::as_str), Some("y"));
            }
        }
    }
}
