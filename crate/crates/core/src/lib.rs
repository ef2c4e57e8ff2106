//! Finite rings, their Jacobson radicals, and nil-clean decompositions of
//! matrices over them.
//!
//! `M_n(R)` is nil-clean exactly when `R/J(R)` is Boolean and `M_n(J(R))`
//! is nil, at least for abelian `R`. This crate decides that condition
//! directly, builds explicit factorizations `A = E + W`, and checks both
//! against an exhaustive oracle.

pub mod config;
pub mod error;
pub mod nilclean;
pub mod predicates;
pub mod radical;
pub mod ring;
pub mod scan;
pub mod theorem;

pub use config::Config;
pub use error::{Error, Result};
pub use ring::{parse_ring_spec, Element, Matrix, Ring};
