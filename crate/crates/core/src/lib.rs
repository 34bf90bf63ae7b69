//! Strongly compact closed categories realized as matrices over involutive
//! commutative semirings.
//!
//! * [`semiring`]: the scalar semirings and homomorphisms between them.
//! * [`matcat`]: objects as tensor words, matrices as morphisms.
//! * [`compact`]: units, counits, names, adjoints, trace, projectors.
//! * [`laws`]: every axiom and derived identity as an executable, seeded check.
//! * [`termlang`]: a term language with evaluation and a wiring normal form.
//! * [`transfer`]: semiring homomorphisms lifted to functors.
//! * [`feedback`]: the additive trace on finite relations.

pub mod compact;
pub mod error;
pub mod exec;
pub mod feedback;
pub mod laws;
pub mod matcat;
pub mod semiring;
pub mod termlang;
pub mod transfer;

pub use error::{CategoryError, LiteralError, NotInvertible};
pub use exec::Execution;
pub use matcat::{Factor, Morphism, TensorObject};
pub use semiring::{Boolean, ComplexRational, NonNegRational, Semiring, SemiringKind};
