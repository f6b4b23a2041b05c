//! Minimal representations of hypergeometric products over the rational
//! difference field Q(i)(x).
//!
//! The crate takes a finite list of products `prod_{k=l}^n f(k)` and rewrites
//! them in terms of algebraically independent products plus at most one
//! root-of-unity sequence, together with generators of all algebraic
//! relations among the inputs.

pub mod drring;
pub mod error;
pub mod expr;
pub mod lattice;
pub mod numbers;
pub mod pipeline;
pub mod poly;
pub mod sigmafact;
pub mod verify;

pub use error::{Error, Result};
