use thiserror::Error;

use crate::spec::SemiringId;

/// Errors produced by semiring operations and element parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemiringError {
    #[error("value `{found}` does not belong to the {expected} semiring")]
    InstanceMismatch { expected: SemiringId, found: String },

    #[error("the {0} semiring has no supported order")]
    Unordered(SemiringId),

    #[error("invalid {kind} element `{text}`: {reason}")]
    ParseElement {
        kind: SemiringId,
        text: String,
        reason: String,
    },

    #[error("empty sample set")]
    EmptySamples,
}
