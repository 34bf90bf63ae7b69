//! Involutive commutative semirings and the homomorphisms between them.
//!
//! Three instances are provided: the Booleans [`Boolean`], the non-negative
//! rationals [`NonNegRational`] and the Gaussian rationals [`ComplexRational`].
//! All arithmetic is exact, so every categorical law can be checked with `==`.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use rand::Rng;

use crate::error::{LiteralError, NotInvertible};

/// Which concrete semiring a value or a run lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemiringKind {
    Bool,
    NonNegRational,
    ComplexRational,
}

impl SemiringKind {
    pub const ALL: [SemiringKind; 3] = [
        SemiringKind::Bool,
        SemiringKind::NonNegRational,
        SemiringKind::ComplexRational,
    ];

    /// Short identifier used on the command line and in reports.
    pub fn id(self) -> &'static str {
        match self {
            SemiringKind::Bool => "bool",
            SemiringKind::NonNegRational => "nnrat",
            SemiringKind::ComplexRational => "crat",
        }
    }
}

impl fmt::Display for SemiringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for SemiringKind {
    type Err = LiteralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SemiringKind::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| LiteralError::new(s, "unknown semiring (expected bool, nnrat or crat)"))
    }
}

/// A commutative semiring with an involution `conj`.
///
/// Implementations must satisfy the usual semiring axioms (both operations
/// associative and commutative, multiplication distributing over addition,
/// zero annihilating) and `conj` must be an involutive semiring automorphism.
pub trait Semiring:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    const KIND: SemiringKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;

    /// Multiplicative inverse, when it exists.
    fn inverse(&self) -> Result<Self, NotInvertible>;

    /// Parses a text literal such as `1`, `3/4`, `2-1/3i` or `true`.
    fn parse_literal(text: &str) -> Result<Self, LiteralError>;

    /// Samples a small random element; `density` is the probability of a nonzero draw.
    fn random<R: Rng + ?Sized>(rng: &mut R, density: f64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// The element `1 + 1 + ... + 1` (`n` summands).
    fn from_count(n: u64) -> Self {
        (0..n).fold(Self::zero(), |acc, _| acc.add(&Self::one()))
    }
}

/// Semirings carrying a partial order compatible with addition.
pub trait OrderedSemiring: Semiring {
    fn leq(&self, other: &Self) -> bool;
}

// ---------------------------------------------------------------------------
// Booleans
// ---------------------------------------------------------------------------

/// The two-element semiring `({0,1}, or, and)` with identity involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Boolean(pub bool);

impl Semiring for Boolean {
    const KIND: SemiringKind = SemiringKind::Bool;

    fn zero() -> Self {
        Boolean(false)
    }

    fn one() -> Self {
        Boolean(true)
    }

    fn add(&self, rhs: &Self) -> Self {
        Boolean(self.0 || rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Boolean(self.0 && rhs.0)
    }

    fn conj(&self) -> Self {
        *self
    }

    fn is_zero(&self) -> bool {
        !self.0
    }

    fn inverse(&self) -> Result<Self, NotInvertible> {
        if self.0 {
            Ok(*self)
        } else {
            Err(NotInvertible(self.to_string()))
        }
    }

    fn parse_literal(text: &str) -> Result<Self, LiteralError> {
        match text.trim() {
            "1" | "true" => Ok(Boolean(true)),
            "0" | "false" => Ok(Boolean(false)),
            other => Err(LiteralError::new(other, "expected 0, 1, true or false")),
        }
    }

    fn random<R: Rng + ?Sized>(rng: &mut R, density: f64) -> Self {
        Boolean(rng.gen_bool(density.clamp(0.0, 1.0)))
    }
}

impl OrderedSemiring for Boolean {
    fn leq(&self, other: &Self) -> bool {
        !self.0 || other.0
    }
}

impl fmt::Display for Boolean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "1" } else { "0" })
    }
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

fn parse_rational(text: &str) -> Result<BigRational, LiteralError> {
    let text = text.trim();
    let bad = |why| LiteralError::new(text, why);
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad("malformed numerator"))?;
    let den: BigInt = match den {
        Some(d) => {
            let d = d.trim();
            if d.starts_with(['-', '+']) {
                return Err(bad("denominator must be an unsigned integer"));
            }
            d.parse().map_err(|_| bad("malformed denominator"))?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

fn small_rational<R: Rng + ?Sized>(rng: &mut R, signed: bool) -> BigRational {
    let lo = if signed { -3 } else { 1 };
    let num = rng.gen_range(lo..=3i64);
    let den = [1i64, 1, 2, 3][rng.gen_range(0..4)];
    BigRational::new(num.into(), den.into())
}

/// An exact fraction `p/q >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NonNegRational(BigRational);

impl NonNegRational {
    pub fn new(value: BigRational) -> Result<Self, LiteralError> {
        if value.is_negative() {
            Err(LiteralError::new(&value.to_string(), "negative value is not in the semiring"))
        } else {
            Ok(NonNegRational(value))
        }
    }

    pub fn from_ratio(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        NonNegRational(BigRational::new(num.into(), den.into()))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl Semiring for NonNegRational {
    const KIND: SemiringKind = SemiringKind::NonNegRational;

    fn zero() -> Self {
        NonNegRational(BigRational::zero())
    }

    fn one() -> Self {
        NonNegRational(BigRational::one())
    }

    fn add(&self, rhs: &Self) -> Self {
        NonNegRational(&self.0 + &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        NonNegRational(&self.0 * &rhs.0)
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn inverse(&self) -> Result<Self, NotInvertible> {
        if self.0.is_zero() {
            Err(NotInvertible(self.to_string()))
        } else {
            Ok(NonNegRational(self.0.recip()))
        }
    }

    fn parse_literal(text: &str) -> Result<Self, LiteralError> {
        NonNegRational::new(parse_rational(text)?)
    }

    fn random<R: Rng + ?Sized>(rng: &mut R, density: f64) -> Self {
        if rng.gen_bool(density.clamp(0.0, 1.0)) {
            NonNegRational(small_rational(rng, false))
        } else {
            Self::zero()
        }
    }
}

impl fmt::Display for NonNegRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A Gaussian rational `re + im·i` with both parts exact fractions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComplexRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl ComplexRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ComplexRational { re, im }
    }

    /// Integer-valued shorthand, handy in tests.
    pub fn int(re: i64, im: i64) -> Self {
        ComplexRational::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    pub fn i() -> Self {
        ComplexRational::int(0, 1)
    }

    /// `re·re + im·im`, the squared modulus.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Semiring for ComplexRational {
    const KIND: SemiringKind = SemiringKind::ComplexRational;

    fn zero() -> Self {
        ComplexRational::new(BigRational::zero(), BigRational::zero())
    }

    fn one() -> Self {
        ComplexRational::new(BigRational::one(), BigRational::zero())
    }

    fn add(&self, rhs: &Self) -> Self {
        ComplexRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }

    fn mul(&self, rhs: &Self) -> Self {
        ComplexRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }

    fn conj(&self) -> Self {
        ComplexRational::new(self.re.clone(), -&self.im)
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn inverse(&self) -> Result<Self, NotInvertible> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(NotInvertible(self.to_string()));
        }
        Ok(ComplexRational::new(&self.re / &n, -&self.im / &n))
    }

    fn parse_literal(text: &str) -> Result<Self, LiteralError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let s = compact.as_str();
        if s.is_empty() {
            return Err(LiteralError::new(text, "empty literal"));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(ComplexRational::new(parse_rational(s)?, BigRational::zero()));
        };
        // split "re±im" at the last sign that is not leading
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re, im) = match split {
            Some(k) => (parse_rational(&body[..k])?, &body[k..]),
            None => (BigRational::zero(), body),
        };
        let im = match im {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
        };
        Ok(ComplexRational::new(re, im))
    }

    fn random<R: Rng + ?Sized>(rng: &mut R, density: f64) -> Self {
        if rng.gen_bool(density.clamp(0.0, 1.0)) {
            let re = small_rational(rng, true);
            let im = if rng.gen_bool(0.5) { small_rational(rng, true) } else { BigRational::zero() };
            ComplexRational::new(re, im)
        } else {
            Self::zero()
        }
    }
}

impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_abs = self.im.abs();
        let im_text = if im_abs.is_one() { String::new() } else { im_abs.to_string() };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                let sign = if self.im.is_negative() { "-" } else { "" };
                write!(f, "{sign}{im_text}i")
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{sign}{im_text}i", self.re)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Homomorphisms
// ---------------------------------------------------------------------------

/// Whether a map preserves addition exactly or only up to the target order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomKind {
    Exact,
    /// `h(x+y) <= h(x)+h(y)`, multiplication still preserved.
    Lax,
}

/// A structure map between two semirings.
pub trait SemiringHom: Send + Sync {
    type Source: Semiring;
    type Target: Semiring;

    fn id(&self) -> &'static str;
    fn kind(&self) -> HomKind;
    fn preserves_involution(&self) -> bool;
    fn apply(&self, x: &Self::Source) -> Self::Target;
}

/// Support map `ξ: ℂ → 𝔹`, `ξ(c) = [c ≠ 0]`. Multiplicative, only subadditive.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSupport;

impl SemiringHom for ComplexSupport {
    type Source = ComplexRational;
    type Target = Boolean;

    fn id(&self) -> &'static str {
        "crat-bool"
    }

    fn kind(&self) -> HomKind {
        HomKind::Lax
    }

    fn preserves_involution(&self) -> bool {
        true
    }

    fn apply(&self, x: &ComplexRational) -> Boolean {
        Boolean(!x.is_zero())
    }
}

/// Support map restricted to `ℝ⁺`; no cancellation, so this one is exact.
#[derive(Debug, Clone, Copy, Default)]
pub struct NonNegSupport;

impl SemiringHom for NonNegSupport {
    type Source = NonNegRational;
    type Target = Boolean;

    fn id(&self) -> &'static str {
        "nnrat-bool"
    }

    fn kind(&self) -> HomKind {
        HomKind::Exact
    }

    fn preserves_involution(&self) -> bool {
        true
    }

    fn apply(&self, x: &NonNegRational) -> Boolean {
        Boolean(!x.is_zero())
    }
}

/// Inclusion `ℝ⁺ ⊂ ℂ`.
#[derive(Debug, Clone, Copy, Default)]
pub struct NonNegEmbedding;

impl SemiringHom for NonNegEmbedding {
    type Source = NonNegRational;
    type Target = ComplexRational;

    fn id(&self) -> &'static str {
        "nnrat-crat"
    }

    fn kind(&self) -> HomKind {
        HomKind::Exact
    }

    fn preserves_involution(&self) -> bool {
        true
    }

    fn apply(&self, x: &NonNegRational) -> ComplexRational {
        ComplexRational::new(x.0.clone(), BigRational::zero())
    }
}

/// Checks the homomorphism laws of `h` on one pair of inputs and describes
/// the first violation. Lax maps are judged with `leq` supplied by the caller,
/// since only ordered targets make laxness meaningful.
pub fn hom_law_violation<H: SemiringHom>(
    h: &H,
    x: &H::Source,
    y: &H::Source,
    leq: impl Fn(&H::Target, &H::Target) -> bool,
) -> Option<String> {
    let z = H::Source::zero();
    let o = H::Source::one();
    if h.apply(&z) != H::Target::zero() {
        return Some("h(0) != 0".into());
    }
    if h.kind() == HomKind::Exact && h.apply(&o) != H::Target::one() {
        return Some("h(1) != 1".into());
    }
    let hxy = h.apply(&x.mul(y));
    if hxy != h.apply(x).mul(&h.apply(y)) {
        return Some(format!("h({x}·{y}) = {hxy} != h({x})·h({y})"));
    }
    let hsum = h.apply(&x.add(y));
    let sum = h.apply(x).add(&h.apply(y));
    let additive_ok = match h.kind() {
        HomKind::Exact => hsum == sum,
        HomKind::Lax => leq(&hsum, &sum),
    };
    if !additive_ok {
        return Some(format!("h({x}+{y}) = {hsum} vs h({x})+h({y}) = {sum}"));
    }
    if h.preserves_involution() && h.apply(&x.conj()) != h.apply(x).conj() {
        return Some(format!("h(conj {x}) != conj h({x})"));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn c(text: &str) -> ComplexRational {
        ComplexRational::parse_literal(text).unwrap()
    }

    #[test]
    fn boolean_sum_is_idempotent() {
        assert_eq!(Boolean(true).add(&Boolean(true)), Boolean(true));
    }

    #[test]
    fn complex_addition_componentwise() {
        assert_eq!(c("1+2i").add(&c("3-2i")), ComplexRational::int(4, 0));
    }

    #[test]
    fn nonneg_fraction_addition() {
        let sum = NonNegRational::from_ratio(1, 3).add(&NonNegRational::from_ratio(1, 6));
        assert_eq!(sum, NonNegRational::from_ratio(1, 2));
    }

    #[test]
    fn conj_and_inverse() {
        assert_eq!(c("3+4i").conj(), c("3-4i"));
        assert_eq!(
            NonNegRational::from_ratio(2, 1).inverse().unwrap(),
            NonNegRational::from_ratio(1, 2)
        );
        assert!(NonNegRational::zero().inverse().is_err());
        assert!(Boolean::zero().inverse().is_err());
        assert!(ComplexRational::zero().inverse().is_err());
        assert_eq!(c("1+i").inverse().unwrap(), ComplexRational::new(q(1, 2), q(-1, 2)));
    }

    #[test]
    fn literal_forms() {
        assert_eq!(c("2-1/3i"), ComplexRational::new(q(2, 1), q(-1, 3)));
        assert_eq!(c("i"), ComplexRational::i());
        assert_eq!(c("-i"), ComplexRational::int(0, -1));
        assert_eq!(c("3/4"), ComplexRational::new(q(3, 4), q(0, 1)));
        assert_eq!(c("-2+i"), ComplexRational::int(-2, 1));
        assert_eq!(c("5i"), ComplexRational::int(0, 5));
        assert_eq!(Boolean::parse_literal("true").unwrap(), Boolean(true));
        assert_eq!(Boolean::parse_literal("0").unwrap(), Boolean(false));
        assert!(NonNegRational::parse_literal("-1/2").is_err());
        assert!(NonNegRational::parse_literal("1/0").is_err());
        assert!(ComplexRational::parse_literal("1+").is_err());
        assert!(Boolean::parse_literal("2").is_err());
    }

    #[test]
    fn display_matches_literal_syntax() {
        for text in ["0", "1", "3/4", "1+2i", "2-1/3i", "i", "-i", "-5/2i", "-1-i"] {
            assert_eq!(c(text).to_string(), text);
        }
    }

    #[test]
    fn support_examples() {
        assert_eq!(ComplexSupport.apply(&c("5-2i")), Boolean(true));
        assert_eq!(ComplexSupport.apply(&ComplexRational::zero()), Boolean(false));
        let half = NonNegRational::from_ratio(1, 2);
        assert_eq!(
            NonNegSupport.apply(&half.add(&half)),
            NonNegSupport.apply(&half).add(&NonNegSupport.apply(&half))
        );
    }

    #[test]
    fn complex_support_is_strictly_lax_at_one_minus_one() {
        let one = ComplexRational::one();
        let minus_one = ComplexRational::int(-1, 0);
        let lhs = ComplexSupport.apply(&one.add(&minus_one));
        let rhs = ComplexSupport.apply(&one).add(&ComplexSupport.apply(&minus_one));
        assert!(lhs.leq(&rhs));
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn from_count_is_repeated_one() {
        assert_eq!(ComplexRational::from_count(3), ComplexRational::int(3, 0));
        assert_eq!(Boolean::from_count(3), Boolean(true));
        assert_eq!(Boolean::from_count(0), Boolean(false));
    }

    fn check_axioms<S: Semiring>(x: &S, y: &S, z: &S) {
        assert_eq!(x.add(y), y.add(x));
        assert_eq!(x.mul(y), y.mul(x));
        assert_eq!(x.add(y).add(z), x.add(&y.add(z)));
        assert_eq!(x.mul(y).mul(z), x.mul(&y.mul(z)));
        assert_eq!(x.mul(&y.add(z)), x.mul(y).add(&x.mul(z)));
        assert_eq!(x.add(&S::zero()), *x);
        assert_eq!(x.mul(&S::one()), *x);
        assert!(x.mul(&S::zero()).is_zero());
        assert_eq!(x.conj().conj(), *x);
        assert_eq!(x.mul(y).conj(), x.conj().mul(&y.conj()));
        assert_eq!(x.add(y).conj(), x.conj().add(&y.conj()));
        if let Ok(inv) = x.inverse() {
            assert!(x.mul(&inv).is_one());
        }
    }

    proptest! {
        #[test]
        fn semiring_axioms_hold(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let b: Vec<Boolean> = (0..3).map(|_| Boolean::random(&mut rng, 0.5)).collect();
            check_axioms(&b[0], &b[1], &b[2]);
            let n: Vec<NonNegRational> = (0..3).map(|_| NonNegRational::random(&mut rng, 0.8)).collect();
            check_axioms(&n[0], &n[1], &n[2]);
            let z: Vec<ComplexRational> = (0..3).map(|_| ComplexRational::random(&mut rng, 0.8)).collect();
            check_axioms(&z[0], &z[1], &z[2]);
        }

        #[test]
        fn homomorphism_laws(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (x, y) = (NonNegRational::random(&mut rng, 0.7), NonNegRational::random(&mut rng, 0.7));
            prop_assert_eq!(hom_law_violation(&NonNegSupport, &x, &y, |a, b| a.leq(b)), None);
            prop_assert_eq!(hom_law_violation(&NonNegEmbedding, &x, &y, |a, b| a == b), None);
            let (x, y) = (ComplexRational::random(&mut rng, 0.7), ComplexRational::random(&mut rng, 0.7));
            prop_assert_eq!(hom_law_violation(&ComplexSupport, &x, &y, |a, b| a.leq(b)), None);
        }

        #[test]
        fn complex_literals_round_trip(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = ComplexRational::random(&mut rng, 0.9);
            prop_assert_eq!(ComplexRational::parse_literal(&x.to_string()).unwrap(), x);
        }
    }
}
