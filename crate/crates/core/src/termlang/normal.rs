//! Elaboration into the primitive fragment.
//!
//! Traces, names and conames are rewritten into units, counits and
//! symmetries, and the involutions are pushed down to the leaves:
//! `(g∘f)† = f†∘g†`, `(f⊗g)† = f†⊗g†`, `η_X† = ε_X∘σ_{X*,X}`,
//! `ε_X† = σ_{X*,X}∘η_X`, `(η_X)_* = η_{X*}`, and a transpose is a dagger
//! of a conjugate. What remains on a generator is a pair of flags.

use super::eval::Model;
use super::syntax::{Obj, Term};
use super::{trace_split, typecheck, Env, TermError};
use crate::compact;
use crate::error::CategoryError;
use crate::matcat::Morphism;
use crate::semiring::Semiring;

/// A term built only from primitives, with involutions on the leaves.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Core {
    /// `transpose^t(conjugate^c(name))`; `dom`, `cod` are the generator's own type.
    Gen { name: String, dom: Obj, cod: Obj, conj: bool, transposed: bool },
    Id(Obj),
    Sym(Obj, Obj),
    Eta(Obj),
    Eps(Obj),
    Compose(Box<Core>, Box<Core>),
    Tensor(Box<Core>, Box<Core>),
    Scalar { literal: String, conj: bool },
}

impl Core {
    fn compose(g: Core, f: Core) -> Core {
        Core::Compose(Box::new(g), Box::new(f))
    }

    fn tensor(a: Core, b: Core) -> Core {
        Core::Tensor(Box::new(a), Box::new(b))
    }

    pub fn eval<S: Semiring>(&self, model: &Model<S>) -> Result<Morphism<S>, TermError> {
        Ok(match self {
            Core::Gen { name, conj, transposed, .. } => {
                let mut m = model.gens.get(name).cloned().ok_or_else(|| TermError::UnboundGenerator(name.clone()))?;
                if *conj {
                    m = compact::conjugate(&m);
                }
                if *transposed {
                    m = compact::transpose(&m);
                }
                m
            }
            Core::Id(a) => Morphism::identity(&model.object(a)?),
            Core::Sym(a, b) => Morphism::symmetry(&model.object(a)?, &model.object(b)?),
            Core::Eta(a) => compact::unit(&model.object(a)?),
            Core::Eps(a) => compact::counit(&model.object(a)?),
            Core::Compose(g, f) => g.eval(model)?.compose(&f.eval(model)?)?,
            Core::Tensor(a, b) => a.eval(model)?.tensor(&b.eval(model)?),
            Core::Scalar { literal, conj } => {
                let s = S::parse_literal(literal).map_err(CategoryError::from)?;
                Morphism::scalar(if *conj { s.conj() } else { s })
            }
        })
    }
}

/// Rewrites a well-typed term into [`Core`].
pub fn normalize(t: &Term, env: &Env) -> Result<Core, TermError> {
    typecheck(t, env)?;
    lower(t, env, false, false)
}

/// Lowers `dagger^dag(conjugate^conj(t))`.
fn lower(t: &Term, env: &Env, conj: bool, dag: bool) -> Result<Core, TermError> {
    let obj = |o: &Obj| if conj { o.dual() } else { o.clone() };
    Ok(match t {
        Term::Gen(name) => {
            let g = env.gens.get(name).ok_or_else(|| TermError::UnboundGenerator(name.clone()))?;
            Core::Gen { name: name.clone(), dom: g.dom.clone(), cod: g.cod.clone(), conj: conj ^ dag, transposed: dag }
        }
        Term::Id(a) => Core::Id(obj(a)),
        Term::Sym(a, b) if dag => Core::Sym(obj(b), obj(a)),
        Term::Sym(a, b) => Core::Sym(obj(a), obj(b)),
        Term::Eta(x) if dag => {
            let x = obj(x);
            Core::compose(Core::Eps(x.clone()), Core::Sym(x.dual(), x))
        }
        Term::Eta(x) => Core::Eta(obj(x)),
        Term::Epsilon(x) if dag => {
            let x = obj(x);
            Core::compose(Core::Sym(x.dual(), x.clone()), Core::Eta(x))
        }
        Term::Epsilon(x) => Core::Eps(obj(x)),
        Term::Compose(g, f) => {
            let (g, f) = (lower(g, env, conj, dag)?, lower(f, env, conj, dag)?);
            if dag {
                Core::compose(f, g)
            } else {
                Core::compose(g, f)
            }
        }
        Term::Tensor(a, b) => Core::tensor(lower(a, env, conj, dag)?, lower(b, env, conj, dag)?),
        Term::Dagger(t) => lower(t, env, conj, !dag)?,
        Term::Conj(t) => lower(t, env, !conj, dag)?,
        Term::Transp(t) => lower(t, env, !conj, !dag)?,
        Term::Name(f) => {
            let (a, _) = typecheck(f, env)?;
            let named = Term::compose(Term::tensor(Term::Id(a.dual()), (**f).clone()), Term::Eta(a));
            lower(&named, env, conj, dag)?
        }
        Term::Coname(f) => {
            let (_, b) = typecheck(f, env)?;
            let conamed = Term::compose(Term::Epsilon(b.clone()), Term::tensor((**f).clone(), Term::Id(b.dual())));
            lower(&conamed, env, conj, dag)?
        }
        Term::Trace(f, c) => {
            let (a, b) = trace_split(f, c, env)?;
            let open = Term::tensor(Term::Id(a), Term::compose(Term::Sym(c.dual(), c.clone()), Term::Eta(c.clone())));
            let body = Term::tensor((**f).clone(), Term::Id(c.dual()));
            let close = Term::tensor(Term::Id(b), Term::Epsilon(c.clone()));
            lower(&Term::compose(close, Term::compose(body, open)), env, conj, dag)?
        }
        Term::ScalarMul(s, t) => {
            Core::tensor(Core::Scalar { literal: s.clone(), conj: conj ^ dag }, lower(t, env, conj, dag)?)
        }
    })
}
