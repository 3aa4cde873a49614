//! Minimal exterior-calculus kernel over two scalar backends.

pub mod form;
pub mod scalar;

pub use form::FormExpr;
pub use scalar::{ExactRat, Jet, Poly, Scalar};
