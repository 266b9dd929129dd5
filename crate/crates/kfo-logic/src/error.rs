use thiserror::Error;

use kfo_semiring::SemiringError;

/// Errors raised while parsing, validating or evaluating formulas and
/// interpretations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("symbol `{name}` expects {expected} arguments, got {got}")]
    ArityMismatch {
        name: String,
        expected: usize,
        got: usize,
    },

    #[error("variable `{0}` is not bound and has no assignment")]
    UnboundVariable(String),

    #[error("universe element `{0}` is not part of the universe")]
    UnknownElement(String),

    #[error("duplicate universe element `{0}`")]
    DuplicateElement(String),

    #[error("duplicate symbol `{0}` in vocabulary")]
    DuplicateSymbol(String),

    #[error("built-in symbols must have arity >= 1, `{0}` is nullary")]
    NullaryBuiltin(String),

    #[error("interpretation is missing a value for literal {0}")]
    MissingLiteral(String),

    #[error("formula uses built-in symbols but no built-in interpretation was supplied")]
    MissingBuiltins,

    #[error("built-in family {symbol}{polarity} is undefined at universe size {n}, tuple {tuple:?}")]
    BuiltinUndefined {
        symbol: String,
        polarity: &'static str,
        n: usize,
        tuple: Vec<usize>,
    },

    #[error("formula violates the strict comparison grammar: {0}")]
    StrictGrammar(String),

    #[error("formula is not comparison-free: {0}")]
    NotComparisonFree(String),

    #[error("no universe size yields encoding length {0}")]
    NoUniverseSize(u64),

    #[error("vocabulary has no input relations, encoding length is always zero")]
    EmptyVocabulary,

    #[error("bad file format at line {line}: {msg}")]
    FileFormat { line: usize, msg: String },

    #[error(transparent)]
    Semiring(#[from] SemiringError),
}
