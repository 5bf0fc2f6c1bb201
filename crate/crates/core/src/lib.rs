//! Exact rational verification of basic hypergeometric identities,
//! Askey-Wilson polynomials and the determinants and Pfaffians built
//! from them.
//!
//! Every quantity is an exact rational. Identities are certified by
//! evaluating both sides at random rational points and requiring the
//! difference to be exactly zero.

pub mod askey_wilson;
pub mod cli;
pub mod error;
pub mod identities;
pub mod linalg;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::{ParamPoint, Scalar};
