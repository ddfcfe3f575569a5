//! Exact torus values of spherical and essential Whittaker functions of
//! `GL(n, F)` and truncated expansions of local Rankin-Selberg integrals.

pub mod error;
pub mod ringcore;
pub mod repdata;
pub mod rseng;
pub mod symfunc;
pub mod whitfun;

pub use error::{Error, Result};
