//! Exact computations with affine semigroup rings, divisorial ideals and
//! (multi-)symbolic Rees algebras, plus Gröbner-basis machinery over prime
//! fields for F-purity tests.

pub mod divisor;
pub mod error;
pub mod lattice;
pub mod poly;
pub mod rees;
pub mod scenario;
pub mod semigroup;

pub use error::{Error, Result};
