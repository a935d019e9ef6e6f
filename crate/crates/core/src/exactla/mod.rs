//! Exact linear algebra over fields of fractions.
//!
//! Everything is generic over [`Field`], which is implemented for
//! `num_rational::Ratio<T>` with a signed integer `T`. Floating point types
//! are deliberately not fields here: every zero test in row reduction is exact.

mod matrix;
mod poly;

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

pub use matrix::Matrix;
pub use poly::{rational_roots, Poly};

/// An exact field: equality is decidable and arithmetic never rounds.
pub trait Field:
    Num + Clone + Debug + Display + Eq + Hash + std::ops::Neg<Output = Self> + Send + Sync + 'static
{
    fn from_i64(x: i64) -> Self;
}

impl<T> Field for Ratio<T>
where
    T: Integer + Signed + Clone + Debug + Display + Hash + From<i64> + Send + Sync + 'static,
{
    fn from_i64(x: i64) -> Self {
        Ratio::from_integer(T::from(x))
    }
}
