//! Hypergraph Ramsey numbers: colorings, homogeneous-set extractors with
//! checkable traces, tower-type upper bounds, and the counting lemmas the
//! bounds rest on.
//!
//! Real-valued quantities are carried as [`scalar::Interval`]s over `f32`,
//! `f64` or exact rationals; the aliases below name the three choices.

pub mod bounds;
pub mod error;
pub mod extract;
pub mod hypergraph;
pub mod lemma;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};

/// Enclosures with `f64` endpoints.
pub type F64Interval = scalar::Interval<f64>;
/// Enclosures with `f32` endpoints.
pub type F32Interval = scalar::Interval<f32>;
/// Exact rational enclosures.
pub type ExactInterval = scalar::Interval<num_rational::BigRational>;
