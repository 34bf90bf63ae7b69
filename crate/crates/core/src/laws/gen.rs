use rand::seq::SliceRandom;
use rand::Rng;

use crate::matcat::{Factor, Morphism, TensorObject};
use crate::semiring::{Semiring, SemiringKind};

/// Draws well-typed random instances: objects whose total dimension stays
/// within `dim_bound`, and matrices with entries from the semiring's sampler.
#[derive(Debug, Clone, Copy)]
pub struct InstanceGenerator {
    pub dim_bound: usize,
    /// Probability that a sampled matrix entry is nonzero.
    pub density: f64,
}

impl InstanceGenerator {
    pub fn new(dim_bound: usize) -> Self {
        InstanceGenerator { dim_bound: dim_bound.max(1), density: 0.6 }
    }

    /// A word of one or two factors, random dual flags, total dim `<= bound`.
    pub fn object_within<R: Rng + ?Sized>(&self, rng: &mut R, bound: usize) -> TensorObject {
        let bound = bound.clamp(1, self.dim_bound);
        let first = rng.gen_range(1..=bound);
        let mut factors = vec![Factor { dim: first, dual: rng.gen_bool(0.3) }];
        if bound / first >= 2 && rng.gen_bool(0.25) {
            let second = rng.gen_range(2..=bound / first);
            factors.push(Factor { dim: second, dual: rng.gen_bool(0.3) });
        }
        TensorObject::new(factors)
    }

    pub fn object<R: Rng + ?Sized>(&self, rng: &mut R) -> TensorObject {
        self.object_within(rng, self.dim_bound)
    }

    /// Small objects used to whisker a law into a larger context.
    pub fn context<R: Rng + ?Sized>(&self, rng: &mut R) -> TensorObject {
        if rng.gen_bool(0.5) {
            TensorObject::unit()
        } else {
            self.object_within(rng, 2)
        }
    }

    pub fn morphism<S: Semiring, R: Rng + ?Sized>(&self, rng: &mut R, dom: &TensorObject, cod: &TensorObject) -> Morphism<S> {
        let n = dom.total_dim() * cod.total_dim();
        let entries = (0..n).map(|_| S::random(rng, self.density)).collect();
        Morphism::new(dom.clone(), cod.clone(), entries).expect("entry count matches the type")
    }

    pub fn scalar<S: Semiring, R: Rng + ?Sized>(&self, rng: &mut R) -> Morphism<S> {
        Morphism::scalar(S::random(rng, self.density))
    }

    pub fn point<S: Semiring, R: Rng + ?Sized>(&self, rng: &mut R, obj: &TensorObject) -> Morphism<S> {
        self.morphism(rng, &TensorObject::unit(), obj)
    }

    /// A permutation matrix with unimodular phases on `obj`.
    pub fn unitary<S: Semiring, R: Rng + ?Sized>(&self, rng: &mut R, obj: &TensorObject) -> Morphism<S> {
        let n = obj.total_dim();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let phases = unit_phases::<S>();
        let chosen: Vec<S> = (0..n).map(|_| phases[rng.gen_range(0..phases.len())].clone()).collect();
        Morphism::from_fn(obj.clone(), obj.clone(), |r, c| {
            if perm[c] == r {
                chosen[c].clone()
            } else {
                S::zero()
            }
        })
    }
}

/// Elements `u` with `conj(u)·u = 1` that the samplers can produce.
fn unit_phases<S: Semiring>() -> Vec<S> {
    let texts: &[&str] = match S::KIND {
        SemiringKind::ComplexRational => &["1", "-1", "i", "-i"],
        _ => &["1"],
    };
    texts.iter().map(|t| S::parse_literal(t).expect("phase literal")).collect()
}

/// Outcome of fitting `lhs = s • rhs` for an unknown scalar `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarFit<S> {
    /// `None` when both sides vanish and every scalar fits.
    pub scalar: Option<S>,
    pub holds: bool,
}

/// Solves for `s` at the first index where the right entry is invertible
/// and the left entry nonzero, then checks the whole equation with it.
///
/// Without such an index the equation can only hold if `lhs` vanishes:
/// `s = 0` fits, or any `s` when `rhs` vanishes too.
pub fn solve_scalar<S: Semiring>(lhs: &Morphism<S>, rhs: &Morphism<S>) -> ScalarFit<S> {
    if lhs.dom() != rhs.dom() || lhs.cod() != rhs.cod() {
        return ScalarFit { scalar: None, holds: false };
    }
    let pivot = lhs.entries().iter().zip(rhs.entries()).find_map(|(l, r)| {
        if l.is_zero() {
            return None;
        }
        r.inverse().ok().map(|inv| l.mul(&inv))
    });
    match pivot {
        Some(s) => {
            let holds = rhs.scale_by(&s) == *lhs;
            ScalarFit { scalar: Some(s), holds }
        }
        None if lhs.is_zero() && rhs.is_zero() => ScalarFit { scalar: None, holds: true },
        None if lhs.is_zero() => ScalarFit { scalar: Some(S::zero()), holds: true },
        None => ScalarFit { scalar: None, holds: false },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compact::is_unitary;
    use crate::semiring::{Boolean, ComplexRational};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn objects_respect_bound() {
        let gen = InstanceGenerator::new(4);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let o = gen.object(&mut rng);
            assert!((1..=4).contains(&o.total_dim()));
            assert!(gen.context(&mut rng).total_dim() <= 2);
        }
    }

    #[test]
    fn sampled_unitaries_are_unitary() {
        let gen = InstanceGenerator::new(4);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let o = gen.object(&mut rng);
            assert!(is_unitary(&gen.unitary::<ComplexRational, _>(&mut rng, &o)));
            assert!(is_unitary(&gen.unitary::<Boolean, _>(&mut rng, &o)));
        }
    }

    #[test]
    fn scalar_fit_cases() {
        let c = |re| ComplexRational::int(re, 0);
        let obj = TensorObject::dim(2);
        let v = |a, b| Morphism::new(TensorObject::unit(), obj.clone(), vec![c(a), c(b)]).unwrap();
        assert_eq!(solve_scalar(&v(2, 4), &v(1, 2)), ScalarFit { scalar: Some(c(2)), holds: true });
        assert!(!solve_scalar(&v(2, 4), &v(1, 1)).holds);
        assert_eq!(solve_scalar(&v(0, 0), &v(0, 0)), ScalarFit { scalar: None, holds: true });
        assert_eq!(solve_scalar(&v(0, 0), &v(1, 0)), ScalarFit { scalar: Some(c(0)), holds: true });
        assert!(!solve_scalar(&v(1, 0), &v(0, 0)).holds);
    }
}
