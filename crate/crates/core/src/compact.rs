//! Strong compact closure on the matrix category.
//!
//! Units and counits are the Kronecker deltas; the involution lives entirely
//! in [`conjugate`] (and so in [`adjoint`]). Dualization flags on objects are
//! tracked exactly, so e.g. a projector is only composable on `A* ⊗ B`.

use crate::error::CategoryError;
use crate::matcat::{Morphism, TensorObject};
use crate::semiring::Semiring;

fn delta<S: Semiring>(yes: bool) -> S {
    if yes {
        S::one()
    } else {
        S::zero()
    }
}

/// `η_A : I -> A* ⊗ A`, a 1 at every flattened index `(i, i)`.
pub fn unit<S: Semiring>(a: &TensorObject) -> Morphism<S> {
    let n = a.total_dim();
    Morphism::from_fn(TensorObject::unit(), a.dual().tensor(a), |r, _| delta(r / n == r % n))
}

/// `ε_A : A ⊗ A* -> I`.
pub fn counit<S: Semiring>(a: &TensorObject) -> Morphism<S> {
    let n = a.total_dim();
    Morphism::from_fn(a.tensor(&a.dual()), TensorObject::unit(), |_, c| delta(c / n == c % n))
}

/// `f* : B* -> A*`.
pub fn transpose<S: Semiring>(f: &Morphism<S>) -> Morphism<S> {
    Morphism::from_fn(f.cod().dual(), f.dom().dual(), |r, c| f.entry(c, r).clone())
}

/// `f_* : A* -> B*`, the involution applied entrywise.
pub fn conjugate<S: Semiring>(f: &Morphism<S>) -> Morphism<S> {
    f.map(S::conj).retype(f.dom().dual(), f.cod().dual())
}

/// `f† : B -> A`, the conjugate transpose.
pub fn adjoint<S: Semiring>(f: &Morphism<S>) -> Morphism<S> {
    Morphism::from_fn(f.cod().clone(), f.dom().clone(), |r, c| f.entry(c, r).conj())
}

/// `⌜f⌝ : I -> A* ⊗ B`, carrying `f`'s entry for `e_i ↦ e_j` at index `(i, j)`.
pub fn name<S: Semiring>(f: &Morphism<S>) -> Morphism<S> {
    let m = f.rows();
    Morphism::from_fn(TensorObject::unit(), f.dom().dual().tensor(f.cod()), |r, _| {
        f.entry(r % m, r / m).clone()
    })
}

/// `⌞f⌟ : A ⊗ B* -> I`.
pub fn coname<S: Semiring>(f: &Morphism<S>) -> Morphism<S> {
    let m = f.rows();
    Morphism::from_fn(f.dom().tensor(&f.cod().dual()), TensorObject::unit(), |_, c| {
        f.entry(c % m, c / m).clone()
    })
}

/// Recovers `f : A -> B` from a point `I -> A* ⊗ B`.
pub fn unname<S: Semiring>(point: &Morphism<S>, a: &TensorObject, b: &TensorObject) -> Result<Morphism<S>, CategoryError> {
    let want = a.dual().tensor(b);
    if !point.dom().is_unit() || point.cod() != &want {
        return Err(CategoryError::ObjectMismatch { expected: want, found: point.cod().clone() });
    }
    let m = b.total_dim();
    Ok(Morphism::from_fn(a.clone(), b.clone(), |r, c| point.entry(c * m + r, 0).clone()))
}

/// Recovers `f : A -> B` from a costate `A ⊗ B* -> I`.
pub fn unconame<S: Semiring>(costate: &Morphism<S>, a: &TensorObject, b: &TensorObject) -> Result<Morphism<S>, CategoryError> {
    let want = a.tensor(&b.dual());
    if !costate.cod().is_unit() || costate.dom() != &want {
        return Err(CategoryError::ObjectMismatch { expected: want, found: costate.dom().clone() });
    }
    let m = b.total_dim();
    Ok(Morphism::from_fn(a.clone(), b.clone(), |r, c| costate.entry(0, c * m + r).clone()))
}

fn check_trace_split<S: Semiring>(
    f: &Morphism<S>,
    a: &TensorObject,
    b: &TensorObject,
    c: &TensorObject,
) -> Result<(), CategoryError> {
    let (dom, cod) = (a.tensor(c), b.tensor(c));
    if f.dom() != &dom || f.cod() != &cod {
        return Err(CategoryError::TraceSplit(format!(
            "morphism {} -> {} is not of type {dom} -> {cod}",
            f.dom(),
            f.cod()
        )));
    }
    Ok(())
}

/// `Tr^C_{A,B}(f)` by the index sum `Σ_α f[(j,α),(i,α)]`.
pub fn trace<S: Semiring>(
    f: &Morphism<S>,
    a: &TensorObject,
    b: &TensorObject,
    c: &TensorObject,
) -> Result<Morphism<S>, CategoryError> {
    check_trace_split(f, a, b, c)?;
    let k = c.total_dim();
    Ok(Morphism::from_fn(a.clone(), b.clone(), |j, i| {
        (0..k).fold(S::zero(), |acc, alpha| acc.add(f.entry(j * k + alpha, i * k + alpha)))
    }))
}

/// `Tr^C_{A,B}(f) = (1_B ⊗ ε_C) ∘ (f ⊗ 1_{C*}) ∘ (1_A ⊗ (σ_{C*,C} ∘ η_C))`.
pub fn trace_by_units<S: Semiring>(
    f: &Morphism<S>,
    a: &TensorObject,
    b: &TensorObject,
    c: &TensorObject,
) -> Result<Morphism<S>, CategoryError> {
    check_trace_split(f, a, b, c)?;
    let twisted_unit = Morphism::symmetry(&c.dual(), c).compose(&unit(c))?;
    let open = Morphism::identity(a).tensor(&twisted_unit);
    let body = f.tensor(&Morphism::identity(&c.dual()));
    let close = Morphism::identity(b).tensor(&counit(c));
    close.compose(&body.compose(&open)?)
}

/// `P_f = ⌜f⌝ ∘ ⌞f_*⌟ : A* ⊗ B -> A* ⊗ B`.
pub fn projector<S: Semiring>(f: &Morphism<S>) -> Morphism<S> {
    name(f)
        .compose(&coname(&conjugate(f)))
        .expect("name and coname of the conjugate share A* ⊗ B")
}

/// `⌞f_*⌟ ∘ ⌜f⌝`, the scalar that [`normalization_scalar`] inverts.
pub fn squared_norm<S: Semiring>(f: &Morphism<S>) -> Morphism<S> {
    coname(&conjugate(f))
        .compose(&name(f))
        .expect("coname of the conjugate accepts the name")
}

/// `s_f = (⌞f_*⌟ ∘ ⌜f⌝)^{-1}`.
///
/// Over the Booleans every nonzero `f` has squared norm 1, so `s_f = 1`.
pub fn normalization_scalar<S: Semiring>(f: &Morphism<S>) -> Result<Morphism<S>, CategoryError> {
    let n = squared_norm(f);
    Ok(Morphism::scalar(n.scalar_value()?.inverse()?))
}

fn check_points<S: Semiring>(psi: &Morphism<S>, phi: &Morphism<S>) -> Result<(), CategoryError> {
    for p in [psi, phi] {
        if !p.dom().is_unit() {
            return Err(CategoryError::ObjectMismatch { expected: TensorObject::unit(), found: p.dom().clone() });
        }
    }
    if psi.cod() != phi.cod() {
        return Err(CategoryError::ObjectMismatch { expected: psi.cod().clone(), found: phi.cod().clone() });
    }
    Ok(())
}

/// `⟨ψ|φ⟩ = ψ† ∘ φ` for points `ψ, φ : I -> A`.
pub fn inner_product<S: Semiring>(psi: &Morphism<S>, phi: &Morphism<S>) -> Result<Morphism<S>, CategoryError> {
    check_points(psi, phi)?;
    adjoint(psi).compose(phi)
}

/// The same inner product as `ε_A ∘ (φ ⊗ ψ_*)`.
pub fn inner_product_by_counit<S: Semiring>(psi: &Morphism<S>, phi: &Morphism<S>) -> Result<Morphism<S>, CategoryError> {
    check_points(psi, phi)?;
    counit(phi.cod()).compose(&phi.tensor(&conjugate(psi)))
}

/// `U† ∘ U = 1` and `U ∘ U† = 1`.
pub fn is_unitary<S: Semiring>(u: &Morphism<S>) -> bool {
    if u.rows() != u.cols() {
        return false;
    }
    let ua = adjoint(u);
    let left = ua.compose(u).map(|m| m == Morphism::identity(u.dom()));
    let right = u.compose(&ua).map(|m| m == Morphism::identity(u.cod()));
    matches!((left, right), (Ok(true), Ok(true)))
}
