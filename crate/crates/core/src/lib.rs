//! Continuation data, Bernoulli polynomials and numerical evaluation of
//! Dirichlet series attached to tame power series.

pub mod error;
pub mod scalar;
pub mod series;
pub mod tame;
pub mod bernoulli;
pub mod continuation;
pub mod numeval;
pub mod reconstruct;
pub mod selftest;

pub use error::{Error, Result};
