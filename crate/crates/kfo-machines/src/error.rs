use thiserror::Error;

use kfo_semiring::SemiringError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("step limit of {0} exceeded")]
    StepLimit(u64),

    #[error("malformed program: {0}")]
    Malformed(String),

    #[error("node {node}: target label {target} is out of range")]
    DanglingTarget { node: usize, target: usize },

    #[error("order branch used over unordered semiring")]
    UnorderedBranch,

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("unknown register `{0}`")]
    UnknownRegister(String),

    #[error("unknown tape symbol `{0}`")]
    UnknownSymbol(String),

    #[error("input symbol {0} is not in the input alphabet")]
    BadInputSymbol(String),

    #[error("bad machine file at line {line}: {msg}")]
    FileFormat { line: usize, msg: String },

    #[error(transparent)]
    Semiring(#[from] SemiringError),
}
