//! Exact twisted loop algebras, affine Kac-Moody algebras, their finite-order
//! automorphisms and real forms, over cyclotomic fields.

pub mod affine;
pub mod automorphism;
pub mod catalog;
pub mod classification;
pub mod error;
pub mod expcurve;
pub mod field;
pub mod invariants;
pub mod json;
pub mod lie;
pub mod linalg;
pub mod loops;
pub mod standard;
pub mod verify;

pub use affine::{AffineElement, HatExtension};
pub use automorphism::{FiniteAutomorphism, Order};
pub use error::{Error, Result};
pub use expcurve::ExpCurveData;
pub use field::{rat, CyclotomicNumber, Rational};
pub use lie::{AlgebraElement, BaseField, LieAlgebra};
pub use loops::{LoopElement, TwistContext};
pub use standard::{AlgebraicAutomorphism, Kind, ScalingAutomorphism, StandardAutomorphism};
