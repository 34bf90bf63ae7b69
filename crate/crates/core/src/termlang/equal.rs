use std::fmt;

use super::eval::{eval, Model};
use super::syntax::Term;
use super::wiring::wiring_normal_form;
use super::{typecheck, Env, TermError};
use crate::exec::{trial_rng, Execution};
use crate::semiring::{ComplexRational, Semiring};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Compare wiring normal forms. Decides the structural fragment.
    Wiring,
    /// Evaluate on random complex-rational models. A difference is a proof of
    /// inequality; agreement on every trial is only evidence of equality.
    RandomEval { trials: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    NotEqual,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equal => "equal",
            Verdict::NotEqual => "not equal",
            Verdict::Unknown => "unknown",
        })
    }
}

/// A verdict together with the evidence behind it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equality {
    pub verdict: Verdict,
    pub certificate: String,
}

impl Equality {
    fn new(verdict: Verdict, certificate: impl Into<String>) -> Self {
        Equality { verdict, certificate: certificate.into() }
    }
}

/// Decides whether two terms of the same type denote the same morphism.
pub fn terms_equal(t1: &Term, t2: &Term, env: &Env, strategy: Strategy) -> Result<Equality, TermError> {
    let (ty1, ty2) = (typecheck(t1, env)?, typecheck(t2, env)?);
    if ty1 != ty2 {
        return Err(TermError::Type(format!(
            "terms have different types: `{} -> {}` and `{} -> {}`",
            ty1.0, ty1.1, ty2.0, ty2.1
        )));
    }
    match strategy {
        Strategy::Wiring => by_wiring(t1, t2, env),
        Strategy::RandomEval { trials, seed } => by_evaluation(t1, t2, env, trials, seed),
    }
}

fn by_wiring(t1: &Term, t2: &Term, env: &Env) -> Result<Equality, TermError> {
    let (w1, w2) = (wiring_normal_form(t1, env)?, wiring_normal_form(t2, env)?);
    if t1.is_structural() && t2.is_structural() {
        return Ok(if w1 == w2 {
            Equality::new(Verdict::Equal, format!("identical wirings:\n{w1}"))
        } else {
            Equality::new(Verdict::NotEqual, format!("wirings differ:\n{w1}\nversus\n{w2}"))
        });
    }
    let (s1, s2) = (w1.scalar_value(), w2.scalar_value());
    match (&s1, &s2) {
        (Some(a), Some(b)) if a.is_zero() && b.is_zero() => {
            return Ok(Equality::new(Verdict::Equal, "both sides carry a zero scalar"));
        }
        (Some(a), Some(b)) if a != b => {
            return Ok(Equality::new(Verdict::Unknown, format!("scalar factors {a} and {b} differ")));
        }
        (None, _) | (_, None) if w1.scalars != w2.scalars => {
            return Ok(Equality::new(Verdict::Unknown, "scalar literals differ"));
        }
        _ => {}
    }
    Ok(match w1.isomorphic(&w2) {
        Some(true) => Equality::new(Verdict::Equal, format!("wirings agree up to box renaming:\n{w1}")),
        Some(false) => Equality::new(Verdict::Unknown, format!("wirings differ and generators are present:\n{w1}\nversus\n{w2}")),
        None => Equality::new(Verdict::Unknown, "too many boxes to match"),
    })
}

fn by_evaluation(t1: &Term, t2: &Term, env: &Env, trials: usize, seed: u64) -> Result<Equality, TermError> {
    let outcomes = Execution::default().map(trials, |k| -> Result<Option<String>, TermError> {
        let mut rng = trial_rng(seed, 0, k as u64);
        let model = Model::<ComplexRational>::random(env, &mut rng, 3, 0.7)?;
        let (m1, m2) = (eval(t1, &model)?, eval(t2, &model)?);
        Ok((m1 != m2).then(|| {
            let dims: Vec<String> = model.dims.iter().map(|(n, d)| format!("{n}={d}")).collect();
            format!("trial {k} (dims {}): {m1} versus {m2}", dims.join(", "))
        }))
    });
    for o in outcomes {
        if let Some(diff) = o? {
            return Ok(Equality::new(Verdict::NotEqual, diff));
        }
    }
    Ok(Equality::new(Verdict::Equal, format!("agreed on {trials} random models (seed {seed})")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::termlang::{parse, Obj};

    fn env() -> Env {
        let (a, b) = (Obj::named("A"), Obj::named("B"));
        Env::new().with_gen("f", a.clone(), b.clone()).with_gen("g", b, a)
    }

    fn verdict(s1: &str, s2: &str, strategy: Strategy) -> Verdict {
        terms_equal(&parse(s1).unwrap(), &parse(s2).unwrap(), &env(), strategy).unwrap().verdict
    }

    const RANDOM: Strategy = Strategy::RandomEval { trials: 20, seed: 5 };

    #[test]
    fn strong_triangle_equals_identity() {
        let lhs = "((dg(eta(A)) . sym(A, A*)) * id(A)) . (id(A) * eta(A))";
        assert_eq!(verdict(lhs, "id(A)", Strategy::Wiring), Verdict::Equal);
        assert_eq!(verdict(lhs, "id(A)", RANDOM), Verdict::Equal);
    }

    #[test]
    fn name_versus_twisted_transpose_name() {
        // ⌜f*⌝ : I -> B ⊗ A*, twisted back onto A* ⊗ B
        let lhs = "name(f)";
        let rhs = "sym(B, A^*) . name(transp(f))";
        assert_eq!(verdict(lhs, rhs, RANDOM), Verdict::Equal);
        assert_eq!(verdict(lhs, rhs, Strategy::Wiring), Verdict::Equal);
    }

    #[test]
    fn unit_is_twisted_counit_adjoint() {
        assert_eq!(verdict("eta(A)", "sym(A, A*) . dg(eps(A))", Strategy::Wiring), Verdict::Equal);
        assert_eq!(verdict("eta(A)", "sym(A, A*) . dg(eps(A))", RANDOM), Verdict::Equal);
    }

    #[test]
    fn distinct_structural_terms_are_unequal() {
        assert_eq!(verdict("sym(A, A)", "id(A * A)", Strategy::Wiring), Verdict::NotEqual);
        assert_eq!(verdict("sym(A, A)", "id(A * A)", RANDOM), Verdict::NotEqual);
    }

    #[test]
    fn generators_without_a_rewrite_are_unknown() {
        assert_eq!(verdict("g . f", "g . f", Strategy::Wiring), Verdict::Equal);
        assert_eq!(verdict("g . f", "dg(f) . dg(g)", Strategy::Wiring), Verdict::Unknown);
        assert_eq!(verdict("g . f", "dg(f) . dg(g)", RANDOM), Verdict::NotEqual);
        assert_eq!(verdict("2 @ f", "f", Strategy::Wiring), Verdict::Unknown);
        assert_eq!(verdict("0 @ f", "0 @ (f . g . f)", Strategy::Wiring), Verdict::Equal);
    }

    #[test]
    fn type_mismatch_is_an_error() {
        assert!(terms_equal(&parse("f").unwrap(), &parse("g").unwrap(), &env(), Strategy::Wiring).is_err());
    }
}
