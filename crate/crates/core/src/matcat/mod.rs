//! The strict symmetric monoidal category of semiring-valued matrices.
//!
//! A morphism `A -> B` is a dense row-major matrix with `total_dim(B)` rows
//! and `total_dim(A)` columns. Tensor is the Kronecker product with the left
//! factor major: for `f ⊗ g`, row `(j, l)` flattens to `j·rows(g) + l` and
//! column `(i, k)` to `i·cols(g) + k`. Every index computation in
//! [`crate::compact`] relies on this convention.

mod literal;
mod object;

use std::fmt;

pub use literal::{parse_object, parse_rows};
pub use object::{Factor, TensorObject};

use crate::error::CategoryError;
use crate::semiring::Semiring;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism<S> {
    dom: TensorObject,
    cod: TensorObject,
    entries: Vec<S>,
}

impl<S: Semiring> Morphism<S> {
    /// Builds a morphism from row-major entries, checking the shape.
    pub fn new(dom: TensorObject, cod: TensorObject, entries: Vec<S>) -> Result<Self, CategoryError> {
        let (rows, cols) = (cod.total_dim(), dom.total_dim());
        if entries.len() != rows * cols {
            return Err(CategoryError::Shape {
                rows: entries.len() / cols.max(1),
                cols,
                want_rows: rows,
                want_cols: cols,
            });
        }
        Ok(Morphism { dom, cod, entries })
    }

    pub fn from_rows(dom: TensorObject, cod: TensorObject, rows: Vec<Vec<S>>) -> Result<Self, CategoryError> {
        let (want_rows, want_cols) = (cod.total_dim(), dom.total_dim());
        if rows.len() != want_rows || rows.iter().any(|r| r.len() != want_cols) {
            return Err(CategoryError::Shape {
                rows: rows.len(),
                cols: rows.first().map_or(0, Vec::len),
                want_rows,
                want_cols,
            });
        }
        Morphism::new(dom, cod, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(dom: TensorObject, cod: TensorObject, f: impl Fn(usize, usize) -> S) -> Self {
        let (rows, cols) = (cod.total_dim(), dom.total_dim());
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Morphism { dom, cod, entries }
    }

    pub fn zero(dom: TensorObject, cod: TensorObject) -> Self {
        let n = dom.total_dim() * cod.total_dim();
        Morphism { dom, cod, entries: vec![S::zero(); n] }
    }

    pub fn identity(obj: &TensorObject) -> Self {
        Morphism::from_fn(obj.clone(), obj.clone(), |r, c| if r == c { S::one() } else { S::zero() })
    }

    /// `σ_{A,B}: A ⊗ B -> B ⊗ A`, sending `e_(i,k)` to `e_(k,i)`.
    pub fn symmetry(a: &TensorObject, b: &TensorObject) -> Self {
        let (n, m) = (a.total_dim(), b.total_dim());
        Morphism::from_fn(a.tensor(b), b.tensor(a), |r, c| {
            let (i, k) = (c / m, c % m);
            if r == k * n + i {
                S::one()
            } else {
                S::zero()
            }
        })
    }

    /// The scalar `s: I -> I`.
    pub fn scalar(s: S) -> Self {
        Morphism { dom: TensorObject::unit(), cod: TensorObject::unit(), entries: vec![s] }
    }

    pub fn dom(&self) -> &TensorObject {
        &self.dom
    }

    pub fn cod(&self) -> &TensorObject {
        &self.cod
    }

    pub fn rows(&self) -> usize {
        self.cod.total_dim()
    }

    pub fn cols(&self) -> usize {
        self.dom.total_dim()
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> &S {
        &self.entries[row * self.cols() + col]
    }

    pub fn is_scalar(&self) -> bool {
        self.dom.is_unit() && self.cod.is_unit()
    }

    /// The element housed by a scalar morphism.
    pub fn scalar_value(&self) -> Result<&S, CategoryError> {
        if self.is_scalar() {
            Ok(&self.entries[0])
        } else {
            Err(CategoryError::NotAScalar { dom: self.dom.clone(), cod: self.cod.clone() })
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(S::is_zero)
    }

    /// Same matrix, relabelled with new objects of equal total dimension.
    pub fn retype(mut self, dom: TensorObject, cod: TensorObject) -> Self {
        assert_eq!(dom.total_dim(), self.dom.total_dim());
        assert_eq!(cod.total_dim(), self.cod.total_dim());
        self.dom = dom;
        self.cod = cod;
        self
    }

    /// Entrywise image under `h`; objects are unchanged.
    pub fn map<T: Semiring>(&self, h: impl Fn(&S) -> T) -> Morphism<T> {
        Morphism {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            entries: self.entries.iter().map(h).collect(),
        }
    }

    /// `self ∘ f`, the matrix product. Requires `dom(self) = cod(f)` exactly.
    pub fn compose(&self, f: &Morphism<S>) -> Result<Morphism<S>, CategoryError> {
        if self.dom != f.cod {
            return Err(CategoryError::ObjectMismatch { expected: self.dom.clone(), found: f.cod.clone() });
        }
        let (rows, inner, cols) = (self.rows(), self.cols(), f.cols());
        let mut out = vec![S::zero(); rows * cols];
        for r in 0..rows {
            for k in 0..inner {
                let a = &self.entries[r * inner + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..cols {
                    let b = &f.entries[k * cols + c];
                    if !b.is_zero() {
                        let slot = &mut out[r * cols + c];
                        *slot = slot.add(&a.mul(b));
                    }
                }
            }
        }
        Ok(Morphism { dom: f.dom.clone(), cod: self.cod.clone(), entries: out })
    }

    /// Kronecker product, left factor major.
    pub fn tensor(&self, g: &Morphism<S>) -> Morphism<S> {
        let (gr, gc) = (g.rows(), g.cols());
        let dom = self.dom.tensor(&g.dom);
        let cod = self.cod.tensor(&g.cod);
        Morphism::from_fn(dom, cod, |r, c| {
            let a = self.entry(r / gr, c / gc);
            if a.is_zero() {
                S::zero()
            } else {
                a.mul(g.entry(r % gr, c % gc))
            }
        })
    }

    /// `s • f` for a scalar morphism `s`.
    pub fn scale(&self, s: &Morphism<S>) -> Result<Morphism<S>, CategoryError> {
        Ok(self.scale_by(s.scalar_value()?))
    }

    /// Multiplies every entry by the semiring element `s`.
    pub fn scale_by(&self, s: &S) -> Morphism<S> {
        Morphism {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            entries: self.entries.iter().map(|x| s.mul(x)).collect(),
        }
    }

    /// Entrywise sum of two parallel morphisms.
    pub fn add(&self, other: &Morphism<S>) -> Result<Morphism<S>, CategoryError> {
        for (want, got) in [(&self.dom, &other.dom), (&self.cod, &other.cod)] {
            if want != got {
                return Err(CategoryError::ObjectMismatch { expected: want.clone(), found: got.clone() });
            }
        }
        Ok(Morphism {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn parse_literal(text: &str) -> Result<Self, CategoryError> {
        literal::parse_morphism(text)
    }
}

impl<S: Semiring> fmt::Display for Morphism<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows() {
            if r > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for c in 0..self.cols() {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.entry(r, c))?;
            }
            f.write_str("]")?;
        }
        write!(f, "] : {} -> {}", self.dom, self.cod)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Boolean, ComplexRational, NonNegRational};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn b(rows: &[&[u8]]) -> Morphism<Boolean> {
        let r = rows.len();
        let c = rows[0].len();
        Morphism::from_rows(
            TensorObject::dim(c),
            TensorObject::dim(r),
            rows.iter().map(|row| row.iter().map(|&x| Boolean(x != 0)).collect()).collect(),
        )
        .unwrap()
    }

    fn random_matrix<S: Semiring>(rng: &mut ChaCha8Rng, dom: TensorObject, cod: TensorObject) -> Morphism<S> {
        let n = dom.total_dim() * cod.total_dim();
        Morphism::new(dom, cod, (0..n).map(|_| S::random(rng, 0.7)).collect()).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let f = b(&[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(Morphism::identity(f.cod()).compose(&f).unwrap(), f);
        assert_eq!(f.compose(&Morphism::identity(f.dom())).unwrap(), f);
    }

    #[test]
    fn boolean_product() {
        let g = b(&[&[1, 1], &[0, 1]]);
        let f = b(&[&[1, 0], &[1, 0]]);
        assert_eq!(g.compose(&f).unwrap(), b(&[&[1, 0], &[1, 0]]));
    }

    #[test]
    fn scalars_commute() {
        let two = Morphism::scalar(NonNegRational::from_ratio(2, 1));
        let three = Morphism::scalar(NonNegRational::from_ratio(3, 1));
        let six = Morphism::scalar(NonNegRational::from_ratio(6, 1));
        assert_eq!(two.compose(&three).unwrap(), six);
        assert_eq!(three.compose(&two).unwrap(), six);
    }

    #[test]
    fn compose_rejects_mismatched_objects() {
        let f = b(&[&[1, 0], &[1, 0]]);
        let g = Morphism::<Boolean>::identity(&TensorObject::dim(2).dual());
        assert!(matches!(g.compose(&f), Err(CategoryError::ObjectMismatch { .. })));
    }

    #[test]
    fn tensor_with_unit_is_strict() {
        let f = b(&[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(f.tensor(&Morphism::identity(&TensorObject::unit())), f);
    }

    #[test]
    fn kronecker_row_times_column() {
        let c = |re| ComplexRational::int(re, 0);
        let row = Morphism::from_rows(TensorObject::dim(2), TensorObject::unit(), vec![vec![c(2), c(3)]]).unwrap();
        let col = Morphism::from_rows(TensorObject::unit(), TensorObject::dim(2), vec![vec![c(5)], vec![c(7)]]).unwrap();
        let k = row.tensor(&col);
        // dom 2 ⊗ I, cod I ⊗ 2: rows indexed by g's row, cols by f's col
        assert_eq!(k.dom(), &TensorObject::dim(2));
        assert_eq!(k.cod(), &TensorObject::dim(2));
        assert_eq!(k.entries(), &[c(10), c(15), c(14), c(21)]);
    }

    #[test]
    fn symmetry_two_by_two_swaps_middle() {
        let s = Morphism::<Boolean>::symmetry(&TensorObject::dim(2), &TensorObject::dim(2));
        let expected = b(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
        assert_eq!(s.entries(), expected.entries());
        let unit = TensorObject::unit();
        let a = TensorObject::dim(3);
        assert_eq!(Morphism::<Boolean>::symmetry(&unit, &a), Morphism::identity(&a));
    }

    #[test]
    fn scalar_multiplication_edge_cases() {
        let f = b(&[&[1, 1], &[0, 1]]);
        assert_eq!(f.scale(&Morphism::scalar(Boolean(true))).unwrap(), f);
        assert!(f.scale(&Morphism::scalar(Boolean(false))).unwrap().is_zero());
        assert!(matches!(f.scale(&f), Err(CategoryError::NotAScalar { .. })));
    }

    #[test]
    fn shape_is_checked() {
        let err = Morphism::new(TensorObject::dim(2), TensorObject::dim(2), vec![Boolean(true); 3]);
        assert!(matches!(err, Err(CategoryError::Shape { .. })));
    }

    proptest! {
        #[test]
        fn interchange_law(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d = |rng: &mut ChaCha8Rng| TensorObject::dim(rng.gen_range(1..=2));
            let (a, b2, c, x, y, z) = (d(&mut rng), d(&mut rng), d(&mut rng), d(&mut rng), d(&mut rng), d(&mut rng));
            let p: Morphism<ComplexRational> = random_matrix(&mut rng, a.clone(), b2.clone());
            let f = random_matrix(&mut rng, b2, c);
            let q = random_matrix(&mut rng, x.clone(), y.clone());
            let g = random_matrix(&mut rng, y, z);
            let lhs = f.tensor(&g).compose(&p.tensor(&q)).unwrap();
            let rhs = f.compose(&p).unwrap().tensor(&g.compose(&q).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn symmetry_is_involutive_and_natural(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = TensorObject::dim(rng.gen_range(1..=4));
            let b2 = TensorObject::dim(rng.gen_range(1..=4));
            let s_ab = Morphism::<NonNegRational>::symmetry(&a, &b2);
            let s_ba = Morphism::symmetry(&b2, &a);
            prop_assert_eq!(s_ba.compose(&s_ab).unwrap(), Morphism::identity(&a.tensor(&b2)));
            let f: Morphism<NonNegRational> = random_matrix(&mut rng, a.clone(), TensorObject::dim(2));
            let g: Morphism<NonNegRational> = random_matrix(&mut rng, b2.clone(), TensorObject::dim(3));
            let lhs = Morphism::symmetry(f.cod(), g.cod()).compose(&f.tensor(&g)).unwrap();
            let rhs = g.tensor(&f).compose(&s_ab).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn scalar_interchange(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f: Morphism<ComplexRational> = random_matrix(&mut rng, TensorObject::dim(2), TensorObject::dim(3));
            let g = random_matrix(&mut rng, TensorObject::dim(3), TensorObject::dim(2));
            let s = Morphism::scalar(ComplexRational::random(&mut rng, 1.0));
            let r = Morphism::scalar(ComplexRational::random(&mut rng, 1.0));
            let lhs = g.scale(&s).unwrap().compose(&f.scale(&r).unwrap()).unwrap();
            let rhs = g.compose(&f).unwrap().scale(&s.compose(&r).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn literal_round_trip(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let dom = TensorObject::new(vec![Factor::new(2).dual(), Factor::new(rng.gen_range(1..=3))]);
            let f: Morphism<ComplexRational> = random_matrix(&mut rng, dom, TensorObject::dim(2));
            prop_assert_eq!(Morphism::parse_literal(&f.to_string()).unwrap(), f);
        }
    }
}
