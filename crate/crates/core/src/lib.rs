//! Exact verification toolkit for conic bundle threefolds over P¹×P².

pub mod bundle;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod local;
pub mod multipoly;
pub mod poly;
pub mod prym;
pub mod quadext;
pub mod quadform;
pub mod real_algebraic;
pub mod report;
pub mod scalar;
pub mod sigma;
pub mod sturm;
pub mod topology;

pub use error::{Error, Result};
pub use quadext::QuadExt;
pub use real_algebraic::RealAlgebraic;
pub use scalar::{Rational, Sign};

/// Polynomials over ℚ.
pub type QPoly = poly::UniPoly<Rational>;
/// Polynomials over a quadratic field.
pub type KPoly = poly::UniPoly<QuadExt>;
pub type QMatrix = linalg::Matrix<Rational>;
pub type KMatrix = linalg::Matrix<QuadExt>;
pub use multipoly::TernaryForm;
