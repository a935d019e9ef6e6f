//! Representation-theoretic enumeration for small quiver algebras over the
//! rationals: module censuses, ICE-closed subcategories, epibricks, one-point
//! extensions and the Nakayama wide τ-tilting pipeline.

pub mod algebra;
pub mod bricks;
pub mod census;
pub mod error;
pub mod exactla;
pub mod fixtures;
pub mod golden;
pub mod grid;
pub mod homext;
pub mod opext;
pub mod rep;
pub mod subcat;
pub mod wtau;

pub use error::{Error, Result};

/// Exact rationals; the scalar field of every module in this crate.
pub type Rational = num_rational::BigRational;
pub type QMatrix = exactla::Matrix<Rational>;
pub type QPoly = exactla::Poly<Rational>;

/// Small-integer rational shorthand.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
