//! Exact GF(p) engine for deciding when images of derivations and
//! E-derivations of `K[x]` are Mathieu-Zhao spaces.

pub mod acceptance;
pub mod citation;
pub mod classify;
pub mod error;
pub mod field;
mod linalg;
pub mod maps;
pub mod multipoly;
pub mod nilpotency;
pub mod oracle;
pub mod poly;
pub mod span;

pub use citation::Citation;
pub use error::{Error, Result};
pub use field::Field;
pub use maps::{Derivation, EDerivation, LinearMap, MapSpec, PhiShape, TriangularDerivation};
pub use multipoly::{Monomial, MultiPoly};
pub use poly::{Poly, Slot, SlotDecomposition};
pub use span::{IdealSpec, Limits, Membership, TruncatedSubspace};
