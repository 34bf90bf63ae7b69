use std::collections::BTreeMap;

use rand::Rng;

use super::syntax::{Base, Obj, Term};
use super::{Env, TermError};
use crate::compact;
use crate::error::CategoryError;
use crate::matcat::{parse_rows, Factor, Morphism, TensorObject};
use crate::semiring::Semiring;

/// An interpretation of objects as dimensions and generators as matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model<S> {
    pub dims: BTreeMap<String, usize>,
    pub gens: BTreeMap<String, Morphism<S>>,
}

impl<S: Semiring> Model<S> {
    /// The model written down in the declarations, parsing each generator's
    /// matrix in `S`. Generators without a matrix stay unbound.
    pub fn from_env(env: &Env) -> Result<Self, TermError> {
        let mut model = Model { dims: env.dims.clone(), gens: BTreeMap::new() };
        for (name, g) in &env.gens {
            if let Some(text) = &g.matrix {
                let rows = parse_rows::<S>(text).map_err(CategoryError::from)?;
                let m = Morphism::from_rows(model.object(&g.dom)?, model.object(&g.cod)?, rows)?;
                model.gens.insert(name.clone(), m);
            }
        }
        Ok(model)
    }

    /// Random matrices for every declared generator. Objects without a
    /// declared dimension get one from `1..=max_dim`.
    pub fn random<R: Rng + ?Sized>(env: &Env, rng: &mut R, max_dim: usize, density: f64) -> Result<Self, TermError> {
        let mut dims = env.dims.clone();
        let mut named: Vec<&str> = Vec::new();
        for g in env.gens.values() {
            for atom in g.dom.atoms().iter().chain(g.cod.atoms()) {
                if let Base::Named(n) = &atom.base {
                    named.push(n);
                }
            }
        }
        for n in named {
            if !dims.contains_key(n) {
                dims.insert(n.to_string(), rng.gen_range(1..=max_dim.max(1)));
            }
        }
        let mut model = Model { dims, gens: BTreeMap::new() };
        for (name, g) in &env.gens {
            let (dom, cod) = (model.object(&g.dom)?, model.object(&g.cod)?);
            let n = dom.total_dim() * cod.total_dim();
            let entries = (0..n).map(|_| S::random(rng, density)).collect();
            model.gens.insert(name.clone(), Morphism::new(dom, cod, entries)?);
        }
        Ok(model)
    }

    /// The concrete object an expression denotes.
    pub fn object(&self, o: &Obj) -> Result<TensorObject, TermError> {
        o.atoms()
            .iter()
            .map(|a| {
                let dim = match &a.base {
                    Base::Dim(d) => *d,
                    Base::Named(n) => *self.dims.get(n).ok_or_else(|| TermError::UnboundObject(n.clone()))?,
                };
                Ok(Factor { dim, dual: a.dual })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(TensorObject::new)
    }
}

/// Evaluates a term compositionally in `model`.
pub fn eval<S: Semiring>(t: &Term, model: &Model<S>) -> Result<Morphism<S>, TermError> {
    Ok(match t {
        Term::Gen(n) => model.gens.get(n).cloned().ok_or_else(|| TermError::UnboundGenerator(n.clone()))?,
        Term::Id(a) => Morphism::identity(&model.object(a)?),
        Term::Compose(g, f) => eval(g, model)?.compose(&eval(f, model)?)?,
        Term::Tensor(a, b) => eval(a, model)?.tensor(&eval(b, model)?),
        Term::Sym(a, b) => Morphism::symmetry(&model.object(a)?, &model.object(b)?),
        Term::Eta(a) => compact::unit(&model.object(a)?),
        Term::Epsilon(a) => compact::counit(&model.object(a)?),
        Term::Dagger(t) => compact::adjoint(&eval(t, model)?),
        Term::Name(t) => compact::name(&eval(t, model)?),
        Term::Coname(t) => compact::coname(&eval(t, model)?),
        Term::Conj(t) => compact::conjugate(&eval(t, model)?),
        Term::Transp(t) => compact::transpose(&eval(t, model)?),
        Term::Trace(t, c) => {
            let f = eval(t, model)?;
            let c = model.object(c)?;
            let split = |o: &TensorObject| {
                o.strip_suffix(&c).ok_or_else(|| {
                    TermError::Type(format!("cannot trace `{c}` out of `{o}`"))
                })
            };
            let (a, b) = (split(f.dom())?, split(f.cod())?);
            compact::trace(&f, &a, &b, &c)?
        }
        Term::ScalarMul(s, t) => {
            let s = S::parse_literal(s).map_err(CategoryError::from)?;
            eval(t, model)?.scale_by(&s)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{ComplexRational, NonNegRational};
    use crate::termlang::{parse, parse_program};

    fn model_a(n: usize) -> Model<ComplexRational> {
        Model { dims: BTreeMap::from([("A".to_string(), n)]), gens: BTreeMap::new() }
    }

    #[test]
    fn yanking_is_identity() {
        let t = parse("(dg(eta(A)) * id(A)) . (id(A*) * sym(A, A)) . (eta(A) * id(A))").unwrap();
        let m = eval(&t, &model_a(2)).unwrap();
        assert_eq!(m, Morphism::identity(&TensorObject::dim(2)));
    }

    #[test]
    fn loop_is_dimension() {
        for n in 1..=4 {
            let m = eval(&parse("eps(A) . sym(A*, A) . eta(A)").unwrap(), &model_a(n)).unwrap();
            assert_eq!(m, Morphism::scalar(ComplexRational::int(n as i64, 0)));
        }
    }

    #[test]
    fn model_from_declarations() {
        let p = parse_program("obj A = 2; gen f : A -> A = [[0,1],[1,0]]; tr(f * id(A); A)").unwrap();
        let mut env = Env::new();
        env.extend(&p.decls);
        let model = Model::<NonNegRational>::from_env(&env).unwrap();
        let m = eval(p.term.as_ref().unwrap(), &model).unwrap();
        // Tr^A(f ⊗ 1_A) = 2 f
        assert_eq!(m, model.gens["f"].scale_by(&NonNegRational::from_ratio(2, 1)));
    }

    #[test]
    fn scalar_literals_follow_the_semiring() {
        let t = parse("1/2 @ id(A)").unwrap();
        let m = eval(&t, &model_a(1)).unwrap();
        assert_eq!(m.entry(0, 0), &ComplexRational::parse_literal("1/2").unwrap());
        assert!(eval(&parse("x").unwrap(), &model_a(1)).is_err());
        let unbound = Model::<ComplexRational> { dims: BTreeMap::new(), gens: BTreeMap::new() };
        assert!(matches!(eval(&parse("id(B)").unwrap(), &unbound), Err(TermError::UnboundObject(_))));
    }
}
