//! Universal Hermitian lattices over imaginary quadratic fields.

pub mod arith;
pub mod cli;
pub mod error;
pub mod escalator;
pub mod hlattice;
pub mod quadring;
pub mod tables;
pub mod zform;

pub use error::{Error, Result};
