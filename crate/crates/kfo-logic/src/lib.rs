//! First-order logic with semiring semantics.
//!
//! Formulas are built from (negated) relation atoms, variable (in)equality,
//! conjunction, disjunction, quantifiers, and formula comparisons drawn from
//! `{=, !=, <=, !<=}`. A formula is evaluated against a K-interpretation,
//! which assigns a semiring value to every positive and negated fact over an
//! ordered finite universe; built-in symbols are evaluated through function
//! families that depend only on the universe size.

mod ast;
mod builtins;
pub mod classical;
mod error;
mod eval;
mod files;
pub mod generate;
mod interp;
mod parser;
mod rewrite;

pub use ast::{CompareOp, Counts, Formula, RelSymbol, Vocabulary};
pub use builtins::{BuiltinFamily, BuiltinInterpretation, Generator};
pub use error::LogicError;
pub use eval::{evaluate, Assignment, EvalStats};
pub use files::{
    parse_builtins, parse_interpretation, serialize_builtins, serialize_interpretation,
};
pub use interp::{decode_universe_size, tuples, EncLayout, Interpretation, Literal};
pub use parser::parse_formula;
pub use rewrite::{eliminate_comparisons_boolean, nnf_negate};

pub type Result<T> = std::result::Result<T, LogicError>;
