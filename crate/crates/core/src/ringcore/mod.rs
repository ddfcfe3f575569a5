//! Exact coefficient arithmetic.
//!
//! Half-integral powers of `q` are Laurent monomials in the single variable
//! `u` with `q = u^2`; nothing here touches floating point.

pub mod poly;
pub mod scalar;
pub mod series;
pub mod var;

pub use poly::{rational_from_i64, Monomial, Poly, Rational};
pub use scalar::Scalar;
pub use series::{euler_expand, series_equal, EulerFactor, SeriesComparison, TruncatedSeries};
pub use var::Var;
