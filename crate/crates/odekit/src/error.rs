use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Two states that must be traversed together have different lengths.
    #[error("state length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// A NaN or infinity showed up where only finite values are allowed.
    #[error("non-finite value in {context} at index {index}")]
    NonFinite {
        context: &'static str,
        index: usize,
    },

    /// A step failed partway through an integration run.
    #[error("integration failed at step {step}: {source}")]
    StepFailed {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    /// A fused statement group names the same vector as both a target and an
    /// input, which would make single-pass evaluation order-dependent.
    #[error("fused group rejected: slot {slot} is both a target and an input")]
    AliasedTarget { slot: usize },

    /// Two statements in one fused group write the same vector.
    #[error("fused group rejected: slot {slot} is targeted twice")]
    DuplicateTarget { slot: usize },

    /// A statement references a slot the caller never bound.
    #[error("slot {slot} is not bound")]
    UnboundSlot { slot: usize },

    /// A statement targets a slot that was bound read-only.
    #[error("slot {slot} is bound read-only but used as a target")]
    SlotNotWritable { slot: usize },

    /// An in-place statement may only read its own target unshifted.
    #[error("slot {slot} is updated in place and cannot be read with a shift")]
    ShiftedInPlaceRead { slot: usize },

    /// A slot id is outside the program's declared slot table.
    #[error("slot {slot} out of range (program declares {slot_count} slots)")]
    SlotOutOfRange { slot: usize, slot_count: usize },

    /// Sparse matrix construction input violates a structural invariant.
    #[error("invalid sparse matrix: {0}")]
    InvalidMatrix(String),

    /// Bad user-facing configuration (sizes, repetition counts, ...).
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown system '{0}' (expected lorenz, phase or lattice)")]
    UnknownSystem(String),

    #[error("unknown backend '{0}' (expected serial, parallel or fused)")]
    UnknownBackend(String),

    /// A results file could not be parsed; `line` is 1-based.
    #[error("csv line {line}: {message}")]
    CsvParse { line: usize, message: String },

    /// A benchmark workload did not fit in memory.
    #[error("allocation of {scalars} scalars failed")]
    AllocationFailed { scalars: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
