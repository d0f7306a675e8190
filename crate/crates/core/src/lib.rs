//! Exact computations with Dickson invariants over `F_p`, the Milnor
//! primitives `St^{Δ_i}` acting on them as derivations, the normalized
//! derivation `δ_i = (-1)^n Q_{n,0}^{-1} St^{Δ_i}`, and truncated Koszul
//! homology.
//!
//! Every identity is checked by exact comparison of canonical sparse
//! polynomials; nothing is floating point.

pub mod budget;
pub mod determinant;
pub mod dickson;
pub mod error;
pub mod field;
pub mod identities;
pub mod koszul;
pub mod linalg;
pub mod milnor;
pub mod poly;
pub mod sampling;
pub mod suite;
pub mod sumnorm;

pub use dickson::{DicksonFrame, DicksonPoly};
pub use error::{AlgebraError, Result};
pub use field::PrimeField;
pub use milnor::MilnorPrimitive;
pub use poly::{Monomial, Polynomial};
pub use sumnorm::{ExtractionError, SumCoefficients};
