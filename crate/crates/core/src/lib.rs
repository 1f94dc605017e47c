//! Exact-arithmetic kernel for computations on Seifert plumbings, lens
//! spaces, knot invariants derived from Seifert matrices, linking forms on
//! finite abelian groups, and abstract primary decomposition of monoid
//! invariants.
//!
//! Everything is computed over arbitrary-precision integers and rationals;
//! no floating point is used anywhere. All public values are deterministic
//! functions of their inputs, and all types are immutable after
//! construction, so the whole crate is safe to use from concurrent callers
//! without synchronization.

pub mod error;
pub mod exact;
pub mod knots;
pub mod linkforms;
pub mod pdcore;
pub mod plumbing;
pub mod spinc;

pub use error::{Error, Result};
pub use exact::{
    AbelianGroupInvariants, IntMatrix, LaurentPoly, Rational, RatMatrix,
};
pub use plumbing::PlumbingGraph;
pub use spinc::{CharVector, SpinCClass, SpinCRep};
pub use knots::SeifertMatrix;
pub use linkforms::FiniteLinkingForm;
pub use pdcore::PDInstance;
