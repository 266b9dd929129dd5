//! Compilation between sentences and constant-depth circuit families.
//!
//! The forward direction unrolls a sentence into a circuit for one universe
//! size, mapping quantifiers to n-ary gates, connectives to binary gates,
//! comparisons to relation gates and literals to input positions of the
//! encoded interpretation. The backward direction emits a sentence that
//! describes how a (tree-normalized) circuit is evaluated, together with
//! built-in relation families describing the circuit's structure.

mod backward;
mod error;
mod forward;

pub use backward::{circuit_to_formula, StructureBuiltins};
pub use error::CompileError;
pub use forward::formula_to_circuit;

pub type Result<T> = std::result::Result<T, CompileError>;
