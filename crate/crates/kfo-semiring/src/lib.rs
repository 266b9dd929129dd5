//! Exact-arithmetic semiring instances.
//!
//! Provides the six built-in commutative semirings used throughout the
//! workspace: the Booleans, the naturals, the tropical (min-plus) semiring
//! over extended rationals, the Łukasiewicz semiring on `[0, 1]`, the
//! probability semiring of non-negative rationals, and multivariate
//! polynomials with natural coefficients. All carriers are exact; there is
//! no floating point anywhere.

mod element;
mod error;
mod laws;
mod parse;
mod poly;
mod spec;

pub use element::{Element, Extended};
pub use error::SemiringError;
pub use laws::{LawReport, LawViolation};
pub use poly::{Monomial, Polynomial};
pub use spec::{SemiringId, SemiringSpec};

/// Convenience alias used by every downstream crate.
pub type Result<T> = std::result::Result<T, SemiringError>;
