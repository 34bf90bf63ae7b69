use rand::Rng;

use super::gen::{solve_scalar, InstanceGenerator};
use super::{LawId, Witness};
use crate::compact::{
    adjoint, coname, conjugate, counit, inner_product, inner_product_by_counit, is_unitary, name, normalization_scalar,
    projector, trace, transpose, unconame, unit, unname,
};
use crate::error::CategoryError;
use crate::matcat::{Morphism, TensorObject};
use crate::semiring::Semiring;

/// Side data a passing trial may carry.
#[derive(Debug, Clone, Default)]
pub(crate) struct TrialData {
    pub solved: Option<String>,
    pub random_xi_fits: Option<bool>,
}

/// Collects the rendered inputs of a trial so failures can cite them.
struct Trial {
    inputs: Vec<String>,
}

impl Trial {
    fn new() -> Self {
        Trial { inputs: Vec::new() }
    }

    fn input<T: std::fmt::Display>(&mut self, label: &str, value: &T) {
        self.inputs.push(format!("{label} = {value}"));
    }

    fn fail(&self, note: impl Into<String>) -> Witness {
        Witness { trial: 0, inputs: self.inputs.clone(), lhs: None, rhs: None, note: Some(note.into()) }
    }

    fn ok<T>(&self, r: Result<T, CategoryError>) -> Result<T, Witness> {
        r.map_err(|e| self.fail(format!("ill-typed instance: {e}")))
    }

    fn eq<S: Semiring>(&self, what: &str, lhs: &Morphism<S>, rhs: &Morphism<S>) -> Result<(), Witness> {
        if lhs == rhs {
            Ok(())
        } else {
            Err(Witness {
                trial: 0,
                inputs: self.inputs.clone(),
                lhs: Some(lhs.to_string()),
                rhs: Some(rhs.to_string()),
                note: Some(what.to_string()),
            })
        }
    }
}

fn id<S: Semiring>(a: &TensorObject) -> Morphism<S> {
    Morphism::identity(a)
}

fn sym<S: Semiring>(a: &TensorObject, b: &TensorObject) -> Morphism<S> {
    Morphism::symmetry(a, b)
}

/// `1_X ⊗ f ⊗ 1_Y`.
fn whisker<S: Semiring>(x: &TensorObject, f: &Morphism<S>, y: &TensorObject) -> Morphism<S> {
    id(x).tensor(f).tensor(&id(y))
}

/// Both sides of the teleportation identity for `f : A -> B`, `ξ : A* -> B*`:
/// `f ⊗ (⌜1_{A*}⌝ ∘ ⌞ξ⌟)` and `σ ∘ (P_{1_{A*}} ⊗ 1_B) ∘ (1_A ⊗ P_f)`, where
/// `σ : A ⊗ A* ⊗ B -> B ⊗ A ⊗ A*` moves `B` to the front.
pub fn teleport_sides<S: Semiring>(f: &Morphism<S>, xi: &Morphism<S>) -> Result<(Morphism<S>, Morphism<S>), CategoryError> {
    let (a, b) = (f.dom(), f.cod());
    let id_a_dual = id::<S>(&a.dual());
    let channel = name(&id_a_dual).compose(&coname(xi))?;
    let lhs = f.tensor(&channel);
    let bell = projector(&id_a_dual);
    let rhs = sym(&a.tensor(&a.dual()), b)
        .compose(&bell.tensor(&id(b)))?
        .compose(&id(a).tensor(&projector(f)))?;
    Ok((lhs, rhs))
}

/// Both sides of the trace-by-projectors identity for `f : A ⊗ C -> B ⊗ C`,
/// `ξ : C -> C`: `Tr(f) ⊗ (⌜1_{C*}⌝ ∘ ⌞ξ⌟)` and
/// `(1_B ⊗ P_{1_{C*}}) ∘ (f ⊗ 1_{C*}) ∘ (1_A ⊗ P_{1_{C*}})`.
pub fn trace_projector_sides<S: Semiring>(
    f: &Morphism<S>,
    a: &TensorObject,
    b: &TensorObject,
    c: &TensorObject,
    xi: &Morphism<S>,
) -> Result<(Morphism<S>, Morphism<S>), CategoryError> {
    let id_c_dual = id::<S>(&c.dual());
    let lhs = trace(f, a, b, c)?.tensor(&name(&id_c_dual).compose(&coname(xi))?);
    let p = projector(&id_c_dual);
    let rhs = id(b)
        .tensor(&p)
        .compose(&f.tensor(&id_c_dual))?
        .compose(&id(a).tensor(&p))?;
    Ok((lhs, rhs))
}

pub(crate) fn run_trial<S: Semiring, R: Rng + ?Sized>(
    law: LawId,
    gen: &InstanceGenerator,
    rng: &mut R,
) -> Result<TrialData, Witness> {
    let mut t = Trial::new();
    let mut data = TrialData::default();
    match law {
        LawId::Triangle1 => {
            let (a, x, y) = (gen.object(rng), gen.context(rng), gen.context(rng));
            t.input("A", &a);
            t.input("context", &format!("{x} | {y}"));
            let open = whisker(&x, &id::<S>(&a).tensor(&unit(&a)), &y);
            let close = whisker(&x, &counit::<S>(&a).tensor(&id(&a)), &y);
            let lhs = t.ok(close.compose(&open))?;
            t.eq("(ε_A ⊗ 1_A) ∘ (1_A ⊗ η_A) = 1_A", &lhs, &id(&x.tensor(&a).tensor(&y)))?;
        }
        LawId::Triangle2 => {
            let (a, x, y) = (gen.object(rng), gen.context(rng), gen.context(rng));
            t.input("A", &a);
            t.input("context", &format!("{x} | {y}"));
            let ad = a.dual();
            let open = whisker(&x, &unit::<S>(&a).tensor(&id(&ad)), &y);
            let close = whisker(&x, &id::<S>(&ad).tensor(&counit(&a)), &y);
            let lhs = t.ok(close.compose(&open))?;
            t.eq("(1_A* ⊗ ε_A) ∘ (η_A ⊗ 1_A*) = 1_A*", &lhs, &id(&x.tensor(&ad).tensor(&y)))?;
        }
        LawId::EtaTwist => {
            let (a, x) = (gen.object(rng), gen.context(rng));
            t.input("A", &a);
            t.input("context", &x);
            let lhs = whisker(&x, &unit::<S>(&a.dual()), &TensorObject::unit());
            let twisted = t.ok(sym::<S>(&a.dual(), &a).compose(&unit(&a)))?;
            t.eq("η_A* = σ_{A*,A} ∘ η_A", &lhs, &whisker(&x, &twisted, &TensorObject::unit()))?;
        }
        LawId::StrongTriangle => {
            let (a, x, y) = (gen.object(rng), gen.context(rng), gen.context(rng));
            t.input("A", &a);
            t.input("context", &format!("{x} | {y}"));
            let co = t.ok(adjoint(&unit::<S>(&a)).compose(&sym(&a, &a.dual())))?;
            let open = whisker(&x, &id::<S>(&a).tensor(&unit(&a)), &y);
            let close = whisker(&x, &co.tensor(&id(&a)), &y);
            let lhs = t.ok(close.compose(&open))?;
            t.eq("((η_A† ∘ σ_{A,A*}) ⊗ 1_A) ∘ (1_A ⊗ η_A) = 1_A", &lhs, &id(&x.tensor(&a).tensor(&y)))?;
        }
        LawId::Yanking => {
            let (a, x, y) = (gen.object(rng), gen.context(rng), gen.context(rng));
            t.input("A", &a);
            t.input("context", &format!("{x} | {y}"));
            let eta = unit::<S>(&a);
            let open = whisker(&x, &eta.tensor(&id(&a)), &y);
            let twist = whisker(&x, &id::<S>(&a.dual()).tensor(&sym(&a, &a)), &y);
            let close = whisker(&x, &adjoint(&eta).tensor(&id(&a)), &y);
            let lhs = t.ok(close.compose(&twist).and_then(|m| m.compose(&open)))?;
            t.eq("(η_A† ⊗ 1_A) ∘ (1_A* ⊗ σ_{A,A}) ∘ (η_A ⊗ 1_A) = 1_A", &lhs, &id(&x.tensor(&a).tensor(&y)))?;
        }
        LawId::ScalarCommute => {
            let (s, r) = (gen.scalar::<S, _>(rng), gen.scalar::<S, _>(rng));
            let (a, b) = (gen.object(rng), gen.object(rng));
            let f = gen.morphism::<S, _>(rng, &a, &b);
            t.input("s", &s);
            t.input("r", &r);
            t.input("f", &f);
            t.eq("s ∘ r = r ∘ s", &t.ok(s.compose(&r))?, &t.ok(r.compose(&s))?)?;
            // s • f = f ∘ s_A = s_B ∘ f
            let via_dom = t.ok(f.compose(&s.tensor(&id(&a))))?;
            let via_cod = t.ok(s.tensor(&id(&b)).compose(&f))?;
            let scaled = t.ok(f.scale(&s))?;
            t.eq("f ∘ s_A = s • f", &via_dom, &scaled)?;
            t.eq("s_B ∘ f = s • f", &via_cod, &scaled)?;
        }
        LawId::ScalarInterchange => {
            let (a, b, c) = (gen.object(rng), gen.object(rng), gen.object(rng));
            let f = gen.morphism::<S, _>(rng, &a, &b);
            let g = gen.morphism::<S, _>(rng, &b, &c);
            let (s, r) = (gen.scalar::<S, _>(rng), gen.scalar::<S, _>(rng));
            t.input("f", &f);
            t.input("g", &g);
            t.input("s", &s);
            t.input("r", &r);
            let lhs = t.ok(t.ok(g.scale(&s))?.compose(&t.ok(f.scale(&r))?))?;
            let rhs = t.ok(t.ok(g.compose(&f))?.scale(&t.ok(s.compose(&r))?))?;
            t.eq("(s • g) ∘ (r • f) = (s ∘ r) • (g ∘ f)", &lhs, &rhs)?;
        }
        LawId::Compositionality => {
            let (a, b, c) = (gen.object(rng), gen.object(rng), gen.object(rng));
            let f = gen.morphism::<S, _>(rng, &a, &b);
            let g = gen.morphism::<S, _>(rng, &b, &c);
            t.input("f", &f);
            t.input("g", &g);
            let lhs = t.ok(coname(&f).tensor(&id(&c)).compose(&id(&a).tensor(&name(&g))))?;
            t.eq("(⌞f⌟ ⊗ 1_C) ∘ (1_A ⊗ ⌜g⌝) = g ∘ f", &lhs, &t.ok(g.compose(&f))?)?;
        }
        LawId::NameConameBijection => {
            let (a, b) = (gen.object(rng), gen.object(rng));
            let f = gen.morphism::<S, _>(rng, &a, &b);
            let psi = gen.point::<S, _>(rng, &a.dual().tensor(&b));
            let chi = gen.morphism::<S, _>(rng, &a.tensor(&b.dual()), &TensorObject::unit());
            t.input("f", &f);
            t.input("ψ", &psi);
            t.input("χ", &chi);
            t.eq("unname(⌜f⌝) = f", &t.ok(unname(&name(&f), &a, &b))?, &f)?;
            t.eq("unconame(⌞f⌟) = f", &t.ok(unconame(&coname(&f), &a, &b))?, &f)?;
            t.eq("⌜unname(ψ)⌝ = ψ", &name(&t.ok(unname(&psi, &a, &b))?), &psi)?;
            t.eq("⌞unconame(χ)⌟ = χ", &coname(&t.ok(unconame(&chi, &a, &b))?), &chi)?;
            t.eq("⌜1_A⌝ = η_A", &name(&id::<S>(&a)), &unit(&a))?;
            t.eq("⌞1_A⌟ = ε_A", &coname(&id::<S>(&a)), &counit(&a))?;
        }
        LawId::AdjointIP => {
            let (a, b, c) = (gen.object(rng), gen.object(rng), gen.object(rng));
            let f = gen.morphism::<S, _>(rng, &b, &a);
            let g = gen.morphism::<S, _>(rng, &a, &c);
            let psi = gen.point::<S, _>(rng, &a);
            let phi = gen.point::<S, _>(rng, &b);
            t.input("f", &f);
            t.input("g", &g);
            t.input("ψ", &psi);
            t.input("φ", &phi);
            let lhs = t.ok(inner_product(&t.ok(adjoint(&f).compose(&psi))?, &phi))?;
            let rhs = t.ok(inner_product(&psi, &t.ok(f.compose(&phi))?))?;
            t.eq("⟨f†ψ|φ⟩ = ⟨ψ|fφ⟩", &lhs, &rhs)?;
            t.eq("ψ† ∘ φ' = ε ∘ (φ' ⊗ ψ_*)", &t.ok(inner_product(&psi, &psi))?, &t.ok(inner_product_by_counit(&psi, &psi))?)?;
            t.eq("(f†)† = f", &adjoint(&adjoint(&f)), &f)?;
            t.eq("(g ∘ f)† = f† ∘ g†", &adjoint(&t.ok(g.compose(&f))?), &t.ok(adjoint(&f).compose(&adjoint(&g)))?)?;
            t.eq("(f ⊗ g)† = f† ⊗ g†", &adjoint(&f.tensor(&g)), &adjoint(&f).tensor(&adjoint(&g)))?;
            t.eq("f† = (f_*)* = (f*)_*", &adjoint(&f), &transpose(&conjugate(&f)).retype(a.clone(), b.clone()))?;
            t.eq("(f_*)* = (f*)_*", &transpose(&conjugate(&f)), &conjugate(&transpose(&f)))?;
        }
        LawId::UnitaryIP => {
            let a = gen.object(rng);
            let u = gen.unitary::<S, _>(rng, &a);
            let psi = gen.point::<S, _>(rng, &a);
            let phi = gen.point::<S, _>(rng, &a);
            t.input("U", &u);
            t.input("ψ", &psi);
            t.input("φ", &phi);
            if !is_unitary(&u) {
                return Err(t.fail("sampled U is not unitary"));
            }
            let lhs = t.ok(inner_product(&t.ok(u.compose(&psi))?, &t.ok(u.compose(&phi))?))?;
            t.eq("⟨Uψ|Uφ⟩ = ⟨ψ|φ⟩", &lhs, &t.ok(inner_product(&psi, &phi))?)?;
        }
        LawId::ProjectorIdempotent => {
            let (a, b) = (gen.object(rng), gen.object(rng));
            let f = gen.morphism::<S, _>(rng, &a, &b);
            t.input("f", &f);
            let p = projector(&f);
            t.eq("P_f† = P_f", &adjoint(&p), &p)?;
            if let Ok(s) = normalization_scalar(&f) {
                let np = t.ok(p.scale(&s))?;
                t.eq("(s_f • P_f)² = s_f • P_f", &t.ok(np.compose(&np))?, &np)?;
                t.eq("(s_f • P_f)† = s_f • P_f", &adjoint(&np), &np)?;
            }
        }
        LawId::ProjectorFixesName => {
            let (a, b) = (gen.object(rng), gen.object(rng));
            let f = gen.morphism::<S, _>(rng, &a, &b);
            t.input("f", &f);
            if let Ok(s) = normalization_scalar(&f) {
                let np = t.ok(projector(&f).scale(&s))?;
                t.eq("(s_f • P_f) ∘ ⌜f⌝ = ⌜f⌝", &t.ok(np.compose(&name(&f)))?, &name(&f))?;
                let co = coname(&conjugate(&f));
                t.eq("⌞f_*⌟ ∘ (s_f • P_f) = ⌞f_*⌟", &t.ok(co.compose(&np))?, &co)?;
            }
        }
        LawId::SigmaName => {
            let (a, b) = (gen.object(rng), gen.object(rng));
            let f = gen.morphism::<S, _>(rng, &a, &b);
            t.input("f", &f);
            let lhs = t.ok(sym(&a.dual(), &b).compose(&name(&f)))?;
            t.eq("σ ∘ ⌜f⌝ = ⌜f*⌝", &lhs, &name(&transpose(&f)))?;
        }
        LawId::Teleport => {
            let (a, b) = (gen.object(rng), gen.object(rng));
            let f = gen.morphism::<S, _>(rng, &a, &b);
            let xi = gen.morphism::<S, _>(rng, &a.dual(), &b.dual());
            t.input("f", &f);
            let (lhs, rhs) = t.ok(teleport_sides(&f, &conjugate(&f)))?;
            let fit = solve_scalar(&lhs, &rhs);
            if !fit.holds || fit.scalar.as_ref().is_some_and(|s| !s.is_one()) {
                return Err(Witness {
                    note: Some(format!("ξ = f_*: expected s = 1, solved {:?}", fit.scalar.map(|s| s.to_string()))),
                    ..t.fail("")
                });
            }
            t.eq("f ⊗ (⌜1⌝ ∘ ⌞f_*⌟) = σ ∘ (P ⊗ 1) ∘ (1 ⊗ P_f)", &lhs, &rhs)?;
            data.solved = fit.scalar.map(|s| s.to_string());
            let (lhs, rhs) = t.ok(teleport_sides(&f, &xi))?;
            data.random_xi_fits = Some(solve_scalar(&lhs, &rhs).holds);
        }
        LawId::TraceViaProjectors => {
            let (a, b, c) = (gen.object(rng), gen.object(rng), gen.object(rng));
            let f = gen.morphism::<S, _>(rng, &a.tensor(&c), &b.tensor(&c));
            let xi = gen.morphism::<S, _>(rng, &c, &c);
            t.input("f", &f);
            t.input("split", &format!("A = {a}, B = {b}, C = {c}"));
            let (lhs, rhs) = t.ok(trace_projector_sides(&f, &a, &b, &c, &id(&c)))?;
            let fit = solve_scalar(&lhs, &rhs);
            if !fit.holds || fit.scalar.as_ref().is_some_and(|s| !s.is_one()) {
                return Err(Witness {
                    note: Some(format!("ξ = 1_C: expected s = 1, solved {:?}", fit.scalar.map(|s| s.to_string()))),
                    ..t.fail("")
                });
            }
            t.eq("Tr(f) ⊗ (⌜1⌝ ∘ ⌞1⌟) = (1 ⊗ P) ∘ (f ⊗ 1) ∘ (1 ⊗ P)", &lhs, &rhs)?;
            data.solved = fit.scalar.map(|s| s.to_string());
            let (lhs, rhs) = t.ok(trace_projector_sides(&f, &a, &b, &c, &xi))?;
            data.random_xi_fits = Some(solve_scalar(&lhs, &rhs).holds);
        }
        LawId::TraceNaturalityLeft => {
            let (a0, a, b, c) = (gen.object(rng), gen.object(rng), gen.object(rng), gen.object(rng));
            let f = gen.morphism::<S, _>(rng, &a.tensor(&c), &b.tensor(&c));
            let g = gen.morphism::<S, _>(rng, &a0, &a);
            t.input("f", &f);
            t.input("g", &g);
            let lhs = t.ok(trace(&t.ok(f.compose(&g.tensor(&id(&c))))?, &a0, &b, &c))?;
            let rhs = t.ok(t.ok(trace(&f, &a, &b, &c))?.compose(&g))?;
            t.eq("Tr(f ∘ (g ⊗ 1_C)) = Tr(f) ∘ g", &lhs, &rhs)?;
        }
        LawId::TraceNaturalityRight => {
            let (a, b, b1, c) = (gen.object(rng), gen.object(rng), gen.object(rng), gen.object(rng));
            let f = gen.morphism::<S, _>(rng, &a.tensor(&c), &b.tensor(&c));
            let h = gen.morphism::<S, _>(rng, &b, &b1);
            t.input("f", &f);
            t.input("h", &h);
            let lhs = t.ok(trace(&t.ok(h.tensor(&id(&c)).compose(&f))?, &a, &b1, &c))?;
            let rhs = t.ok(h.compose(&t.ok(trace(&f, &a, &b, &c))?))?;
            t.eq("Tr((h ⊗ 1_C) ∘ f) = h ∘ Tr(f)", &lhs, &rhs)?;
        }
        LawId::TraceDinaturality => {
            let (a, b, c, d) = (gen.object(rng), gen.object(rng), gen.object(rng), gen.object(rng));
            let f = gen.morphism::<S, _>(rng, &a.tensor(&c), &b.tensor(&d));
            let k = gen.morphism::<S, _>(rng, &d, &c);
            t.input("f", &f);
            t.input("k", &k);
            let lhs = t.ok(trace(&t.ok(id(&b).tensor(&k).compose(&f))?, &a, &b, &c))?;
            let rhs = t.ok(trace(&t.ok(f.compose(&id(&a).tensor(&k)))?, &a, &b, &d))?;
            t.eq("Tr^C((1_B ⊗ k) ∘ f) = Tr^D(f ∘ (1_A ⊗ k))", &lhs, &rhs)?;
        }
        LawId::TraceVanishingI => {
            let (a, b) = (gen.object(rng), gen.object(rng));
            let f = gen.morphism::<S, _>(rng, &a, &b);
            t.input("f", &f);
            t.eq("Tr^I(f) = f", &t.ok(trace(&f, &a, &b, &TensorObject::unit()))?, &f)?;
        }
        LawId::TraceVanishingTensor => {
            let (a, b) = (gen.object(rng), gen.object(rng));
            let (c, d) = (gen.object_within(rng, 3), gen.object_within(rng, 3));
            let cd = c.tensor(&d);
            let f = gen.morphism::<S, _>(rng, &a.tensor(&cd), &b.tensor(&cd));
            t.input("f", &f);
            t.input("split", &format!("C = {c}, D = {d}"));
            let lhs = t.ok(trace(&f, &a, &b, &cd))?;
            let inner = t.ok(trace(&f, &a.tensor(&c), &b.tensor(&c), &d))?;
            t.eq("Tr^{C⊗D}(f) = Tr^C(Tr^D(f))", &lhs, &t.ok(trace(&inner, &a, &b, &c))?)?;
        }
        LawId::TraceSuperposing => {
            let (x, y) = (gen.context(rng), gen.context(rng));
            let (a, b, c) = (gen.object(rng), gen.object(rng), gen.object(rng));
            let g = gen.morphism::<S, _>(rng, &x, &y);
            let f = gen.morphism::<S, _>(rng, &a.tensor(&c), &b.tensor(&c));
            t.input("g", &g);
            t.input("f", &f);
            let lhs = t.ok(trace(&g.tensor(&f), &x.tensor(&a), &y.tensor(&b), &c))?;
            t.eq("Tr(g ⊗ f) = g ⊗ Tr(f)", &lhs, &g.tensor(&t.ok(trace(&f, &a, &b, &c))?))?;
        }
        LawId::TraceYanking => {
            let c = gen.object(rng);
            t.input("C", &c);
            t.eq("Tr^C(σ_{C,C}) = 1_C", &t.ok(trace(&sym::<S>(&c, &c), &c, &c, &c))?, &id(&c))?;
        }
    }
    Ok(data)
}
