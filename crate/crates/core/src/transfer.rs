//! Functors between matrix categories induced by semiring maps.
//!
//! A map `h : S -> T` acts entrywise on matrices and as the identity on
//! objects. When `h` is a homomorphism the result is a strict monoidal
//! functor, so it carries units, counits and hence traces along. The support
//! map `ℂ -> 𝔹` only preserves sums up to the order `0 <= 1`; for it,
//! composition and trace are checked as inequalities and every strict entry
//! is recorded.

use std::fmt;

use serde::Serialize;

use crate::compact::{adjoint, counit, trace, unit};
use crate::error::CategoryError;
use crate::exec::trial_rng;
use crate::laws::{InstanceGenerator, SuiteConfig, Witness};
use crate::matcat::{Morphism, TensorObject};
use crate::semiring::{
    Boolean, ComplexRational, ComplexSupport, HomKind, NonNegEmbedding, NonNegSupport, OrderedSemiring, Semiring,
    SemiringHom,
};

/// The functor on matrices induced by a semiring map.
#[derive(Debug, Clone, Copy, Default)]
pub struct LiftedFunctor<H> {
    pub hom: H,
}

impl<H: SemiringHom> LiftedFunctor<H> {
    pub fn new(hom: H) -> Self {
        LiftedFunctor { hom }
    }

    pub fn apply(&self, f: &Morphism<H::Source>) -> Morphism<H::Target> {
        f.map(|x| self.hom.apply(x))
    }
}

/// `F(f)`, entrywise.
pub fn apply_functor<H: SemiringHom>(functor: &LiftedFunctor<H>, f: &Morphism<H::Source>) -> Morphism<H::Target> {
    functor.apply(f)
}

/// Entries where `F(g ∘ f)` lies strictly below `F(g) ∘ F(f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxReport {
    /// The inequality holds at every entry.
    pub holds: bool,
    /// `(row, col)` of every strict entry.
    pub strict: Vec<(usize, usize)>,
}

fn compare_below(lhs: &Morphism<Boolean>, rhs: &Morphism<Boolean>) -> LaxReport {
    let mut strict = Vec::new();
    let mut holds = true;
    for r in 0..lhs.rows() {
        for c in 0..lhs.cols() {
            let (l, h) = (lhs.entry(r, c), rhs.entry(r, c));
            if !l.leq(h) {
                holds = false;
            } else if l != h {
                strict.push((r, c));
            }
        }
    }
    LaxReport { holds, strict }
}

/// Checks `F(g ∘ f) <= F(g) ∘ F(f)` entrywise for a map into `𝔹`.
pub fn check_lax<H: SemiringHom<Target = Boolean>>(
    functor: &LiftedFunctor<H>,
    f: &Morphism<H::Source>,
    g: &Morphism<H::Source>,
) -> Result<LaxReport, CategoryError> {
    let lhs = functor.apply(&g.compose(f)?);
    let rhs = functor.apply(g).compose(&functor.apply(f))?;
    Ok(compare_below(&lhs, &rhs))
}

/// Checks `F(Tr f) <= Tr F(f)` entrywise for a map into `𝔹`.
pub fn check_lax_trace<H: SemiringHom<Target = Boolean>>(
    functor: &LiftedFunctor<H>,
    f: &Morphism<H::Source>,
    split: (&TensorObject, &TensorObject, &TensorObject),
) -> Result<LaxReport, CategoryError> {
    let (a, b, c) = split;
    let lhs = functor.apply(&trace(f, a, b, c)?);
    let rhs = trace(&functor.apply(f), a, b, c)?;
    Ok(compare_below(&lhs, &rhs))
}

/// `g = [1, −1]` and `f = (1, 1)ᵀ`: `g ∘ f = 0` although both have full support.
pub fn cancellation_witness() -> (Morphism<ComplexRational>, Morphism<ComplexRational>) {
    let c = |n| ComplexRational::int(n, 0);
    let (one, two) = (TensorObject::dim(1), TensorObject::dim(2));
    let f = Morphism::from_rows(one.clone(), two.clone(), vec![vec![c(1)], vec![c(1)]]).expect("column");
    let g = Morphism::from_rows(two, one, vec![vec![c(1), c(-1)]]).expect("row");
    (f, g)
}

/// Explains why no unital additive map `S -> T` exists when `1 + 1 = 1`
/// holds in `S` but not in `T`; `None` if this obstruction does not apply.
pub fn idempotent_unit_obstruction<S: Semiring, T: Semiring>() -> Option<String> {
    let s_two = S::one().add(&S::one());
    let t_two = T::one().add(&T::one());
    (s_two == S::one() && t_two != T::one()).then(|| {
        format!(
            "1 + 1 = 1 in {}, so h(1) + h(1) = h(1 + 1) = h(1) = 1, but 1 + 1 = {t_two} in {}",
            S::KIND,
            T::KIND
        )
    })
}

/// Outcome of one preservation property over many instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    #[serde(rename = "law")]
    pub property: &'static str,
    pub passed: bool,
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// For inequalities: instances where the inequality was strict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict: Option<usize>,
}

impl TransferReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

impl fmt::Display for TransferReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{verdict:4} {:<22} {} trials", self.property, self.trials)?;
        if let Some(s) = self.strict {
            write!(f, "  strict = {s}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n     trial {}: inputs {}", w.trial, w.inputs.join(" ; "))?;
            if let (Some(l), Some(r)) = (&w.lhs, &w.rhs) {
                write!(f, "\n     lhs {l}\n     rhs {r}")?;
            }
        }
        Ok(())
    }
}

enum Outcome {
    Holds { strict: bool },
    Fails(Witness),
}

fn witness<A: fmt::Display, B: fmt::Display>(inputs: Vec<String>, lhs: &A, rhs: &B) -> Witness {
    Witness { trial: 0, inputs, lhs: Some(lhs.to_string()), rhs: Some(rhs.to_string()), note: None }
}

fn equal_or_witness<T: Semiring>(inputs: Vec<String>, lhs: Morphism<T>, rhs: Morphism<T>) -> Outcome {
    if lhs == rhs {
        Outcome::Holds { strict: false }
    } else {
        Outcome::Fails(witness(inputs, &lhs, &rhs))
    }
}

fn run_property(
    property: &'static str,
    cfg: &SuiteConfig,
    stream: u64,
    trial: impl Fn(&InstanceGenerator, &mut rand_chacha::ChaCha8Rng) -> Outcome + Sync,
) -> TransferReport {
    let gen = InstanceGenerator::new(cfg.dim_bound);
    let outcomes = cfg.execution.map(cfg.trials, |t| trial(&gen, &mut trial_rng(cfg.seed, stream, t as u64)));
    let mut strict = 0;
    let mut first = None;
    for (t, o) in outcomes.into_iter().enumerate() {
        match o {
            Outcome::Holds { strict: s } => strict += usize::from(s),
            Outcome::Fails(mut w) if first.is_none() => {
                w.trial = t;
                first = Some(w);
            }
            Outcome::Fails(_) => {}
        }
    }
    TransferReport { property, passed: first.is_none(), trials: cfg.trials, witness: first, strict: Some(strict) }
}

/// Checks the functor laws of `F` on random instances. Exact maps must
/// preserve composition and trace on the nose; lax maps into `𝔹` are held to
/// the inequalities instead.
pub fn check_preservation<H>(functor: &LiftedFunctor<H>, cfg: &SuiteConfig) -> Vec<TransferReport>
where
    H: SemiringHom,
{
    let lax = functor.hom.kind() == HomKind::Lax;
    let mut reports: Vec<TransferReport> = vec![
        run_property("PreservesIdentity", cfg, 0, |gen, rng| {
            let a = gen.object(rng);
            equal_or_witness(vec![format!("A = {a}")], functor.apply(&Morphism::identity(&a)), Morphism::identity(&a))
        }),
        run_property("PreservesTensor", cfg, 1, |gen, rng| {
            let (a, b, c, d) = (gen.object(rng), gen.object(rng), gen.object(rng), gen.object(rng));
            let f = gen.morphism::<H::Source, _>(rng, &a, &b);
            let g = gen.morphism::<H::Source, _>(rng, &c, &d);
            let inputs = vec![format!("f = {f}"), format!("g = {g}")];
            equal_or_witness(inputs, functor.apply(&f.tensor(&g)), functor.apply(&f).tensor(&functor.apply(&g)))
        }),
        run_property("PreservesUnit", cfg, 2, |gen, rng| {
            let a = gen.object(rng);
            equal_or_witness(vec![format!("A = {a}")], functor.apply(&unit(&a)), unit(&a))
        }),
        run_property("PreservesCounit", cfg, 3, |gen, rng| {
            let a = gen.object(rng);
            equal_or_witness(vec![format!("A = {a}")], functor.apply(&counit(&a)), counit(&a))
        }),
        run_property("PreservesSymmetry", cfg, 4, |gen, rng| {
            let (a, b) = (gen.object(rng), gen.object(rng));
            let inputs = vec![format!("A = {a}, B = {b}")];
            equal_or_witness(inputs, functor.apply(&Morphism::symmetry(&a, &b)), Morphism::symmetry(&a, &b))
        }),
    ];
    if functor.hom.preserves_involution() {
        reports.push(run_property("PreservesDagger", cfg, 5, |gen, rng| {
            let (a, b) = (gen.object(rng), gen.object(rng));
            let f = gen.morphism::<H::Source, _>(rng, &a, &b);
            equal_or_witness(vec![format!("f = {f}")], functor.apply(&adjoint(&f)), adjoint(&functor.apply(&f)))
        }));
    }
    if !lax {
        reports.push(run_property("PreservesCompose", cfg, 6, |gen, rng| {
            let (a, b, c) = (gen.object(rng), gen.object(rng), gen.object(rng));
            let f = gen.morphism::<H::Source, _>(rng, &a, &b);
            let g = gen.morphism::<H::Source, _>(rng, &b, &c);
            let inputs = vec![format!("f = {f}"), format!("g = {g}")];
            let lhs = functor.apply(&g.compose(&f).expect("composable"));
            let rhs = functor.apply(&g).compose(&functor.apply(&f)).expect("composable");
            equal_or_witness(inputs, lhs, rhs)
        }));
        reports.push(run_property("PreservesTrace", cfg, 7, |gen, rng| {
            let (a, b, c) = (gen.object(rng), gen.object(rng), gen.object(rng));
            let f = gen.morphism::<H::Source, _>(rng, &a.tensor(&c), &b.tensor(&c));
            let inputs = vec![format!("f = {f}"), format!("C = {c}")];
            let lhs = functor.apply(&trace(&f, &a, &b, &c).expect("split"));
            let rhs = trace(&functor.apply(&f), &a, &b, &c).expect("split");
            equal_or_witness(inputs, lhs, rhs)
        }));
    }
    for r in &mut reports {
        r.strict = None;
    }
    reports
}

/// The two inequalities satisfied by a lax map into `𝔹`.
pub fn check_laxity<H: SemiringHom<Target = Boolean>>(functor: &LiftedFunctor<H>, cfg: &SuiteConfig) -> Vec<TransferReport> {
    let judge = |inputs: Vec<String>, report: LaxReport, lhs: &dyn fmt::Display, rhs: &dyn fmt::Display| {
        if report.holds {
            Outcome::Holds { strict: !report.strict.is_empty() }
        } else {
            Outcome::Fails(witness(inputs, &lhs.to_string(), &rhs.to_string()))
        }
    };
    vec![
        run_property("LaxCompose", cfg, 8, |gen, rng| {
            let (a, b, c) = (gen.object(rng), gen.object(rng), gen.object(rng));
            let f = gen.morphism::<H::Source, _>(rng, &a, &b);
            let g = gen.morphism::<H::Source, _>(rng, &b, &c);
            let report = check_lax(functor, &f, &g).expect("composable");
            let lhs = functor.apply(&g.compose(&f).expect("composable"));
            let rhs = functor.apply(&g).compose(&functor.apply(&f)).expect("composable");
            judge(vec![format!("f = {f}"), format!("g = {g}")], report, &lhs, &rhs)
        }),
        run_property("LaxTrace", cfg, 9, |gen, rng| {
            let (a, b, c) = (gen.object(rng), gen.object(rng), gen.object(rng));
            let f = gen.morphism::<H::Source, _>(rng, &a.tensor(&c), &b.tensor(&c));
            let report = check_lax_trace(functor, &f, (&a, &b, &c)).expect("split");
            let lhs = functor.apply(&trace(&f, &a, &b, &c).expect("split"));
            let rhs = trace(&functor.apply(&f), &a, &b, &c).expect("split");
            judge(vec![format!("f = {f}"), format!("C = {c}")], report, &lhs, &rhs)
        }),
    ]
}

/// Identifiers of the available maps.
pub const HOM_IDS: &[&str] = &["nnrat-bool", "crat-bool", "nnrat-crat"];

/// Runs every applicable check for the map named `id`.
pub fn run_transfer(id: &str, cfg: &SuiteConfig) -> Option<Vec<TransferReport>> {
    Some(match id {
        "nnrat-bool" => check_preservation(&LiftedFunctor::new(NonNegSupport), cfg),
        "nnrat-crat" => check_preservation(&LiftedFunctor::new(NonNegEmbedding), cfg),
        "crat-bool" => {
            let functor = LiftedFunctor::new(ComplexSupport);
            let mut reports = check_preservation(&functor, cfg);
            reports.extend(check_laxity(&functor, cfg));
            reports
        }
        _ => return None,
    })
}
