//! Arithmetic circuits over a commutative semiring.
//!
//! A circuit is a connected DAG of gates: ordered inputs, constants, n-ary
//! `+`/`*` gates, ordered outputs, and binary relation gates (`=`, `!=`,
//! `<=`, `!<=`) that yield the one/zero elements of the semiring. Gates are
//! stored in topological order; the validator checks the order instead of
//! re-sorting so files stay bit-exact.

mod circuit;
mod eval;
mod files;
pub mod generate;
mod normalize;
mod validate;

pub use circuit::{Circuit, CircuitError, Gate, GateKind, RelOp};
pub use eval::evaluate_circuit;
pub use files::{parse_circuit, serialize_circuit, to_dot};
pub use normalize::{input_path_length_sets, is_tree_normalized, normalize_to_tree};
pub use validate::{validate, CircuitReport};

pub type Result<T> = std::result::Result<T, CircuitError>;
