//! Exact computation of the plane curves determined by a finite rational
//! point set, of the ordinary ones among them, and of the basis families and
//! projections used to produce ordinary curves.
//!
//! All arithmetic is exact. The linear-algebra layer is generic over
//! [`scalar::ExactField`]; the geometric layers work over [`ExactScalar`].

pub mod bipoly;
pub mod carrier;
pub mod constructions;
pub mod determined;
pub mod error;
pub mod linalg;
pub mod nd;
pub mod oracle;
pub mod point;
pub mod projection;
pub mod scalar;
pub mod veronese;

pub use error::{Error, Result};

/// Arbitrary-precision rational scalar used by every geometric module.
pub type ExactScalar = num_rational::BigRational;
/// Dense matrix over [`ExactScalar`].
pub type Matrix = linalg::DenseMatrix<ExactScalar>;
/// Affine flat over [`ExactScalar`].
pub type AffineFlat = linalg::Flat<ExactScalar>;
/// Dense matrix over machine-word rationals, for small inputs.
pub type SmallMatrix = linalg::DenseMatrix<num_rational::Rational64>;
