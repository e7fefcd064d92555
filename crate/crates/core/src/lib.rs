//! Factoring polynomials given as arithmetic circuits over a prime field.
//!
//! The input is a straight-line program computing `f`; the output is one
//! straight-line program per irreducible factor together with its
//! multiplicity. Coprime splits are lifted from a univariate image by
//! multivariate Newton iteration, pure powers are reduced to a coprime split
//! of `z^e - f`, and every claim is checked by randomized identity testing.

pub mod algebra;
pub mod circuit;
pub mod error;
pub mod lift;
pub mod pipeline;
pub mod pit;
pub mod purepower;
pub mod resultant;
pub mod seed;

pub use error::{Error, Result};
