use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("formula has free variables {0:?}, a sentence is required")]
    NotSentence(Vec<String>),

    #[error("semiring {0} is not positive and commutative")]
    UnsupportedSemiring(String),

    #[error("universe size must be at least 1")]
    EmptyUniverse,

    #[error("formula uses built-in symbols but no built-in interpretation was given")]
    MissingBuiltins,

    #[error("circuit is not in tree normal form (run tree normalization first)")]
    NotNormalized,

    #[error("circuit must have exactly one output gate, found {0}")]
    MultiOutput(usize),

    #[error(
        "circuit size {size} exceeds n^q = {n}^{q}; pass a larger q (at least {needed})"
    )]
    SizeExceedsBudget {
        size: usize,
        n: usize,
        q: usize,
        needed: u32,
    },

    #[error("{inputs} input gates cannot be addressed with universe size {n} (need inputs <= 2n)")]
    TooManyInputs { inputs: usize, n: usize },

    #[error(transparent)]
    Logic(#[from] kfo_logic::LogicError),

    #[error(transparent)]
    Circuit(#[from] kfo_circuits::CircuitError),

    #[error(transparent)]
    Semiring(#[from] kfo_semiring::SemiringError),
}
