//! Machine models over a semiring: register machines on a bi-infinite
//! K-valued state space, K-valued Turing machines, and the compiler from
//! the latter to the former.

mod asm;
mod bss;
mod compile;
mod error;
mod gap;
mod files;
mod ktm;

pub use asm::{Asm, Label};
pub use bss::{
    bss_run, extract_output, initial_state, run_from_state, BranchMode, BssNode, BssProgram,
    BssState, BssStats, ShiftDir, TraceFn,
};
pub use compile::{ktm_to_bss, CompiledKtm};
pub use error::MachineError;
pub use files::{parse_bss_program, parse_ktm_program, serialize_bss_program, serialize_ktm_program};
pub use gap::{gap_init, GapDirection};
pub use ktm::{
    ktm_initial_config, ktm_run, ktm_run_config, BranchOp, DeltaAction, DeltaKey, KtmConfig,
    KtmProgram, KtmStats, Move, TapeSymbol, WriteOp,
};

pub type Result<T> = std::result::Result<T, MachineError>;
