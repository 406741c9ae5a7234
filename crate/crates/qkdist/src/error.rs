use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while building contexts, parsing input, or
/// running table checks. Construction and parsing errors carry enough detail
/// to point at the offending input; internal invariant violations panic
/// instead of surfacing here.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan type {label}: {reason}")]
    InvalidCartanType { label: String, reason: &'static str },

    #[error("Weyl group of {family}{rank} has order {order}, above the enumeration cap {cap}")]
    WeylOrderCapExceeded {
        family: char,
        rank: usize,
        order: u128,
        cap: u128,
    },

    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("vector {0} is not a root of this root system")]
    NotARoot(String),

    #[error("elements belong to different root systems ({left} vs {right})")]
    MixedRootSystems { left: String, right: String },

    #[error("simple-root index {index} is out of range for rank {rank} (indices are 1-based)")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("cannot parse Weyl word {word:?}: {reason}")]
    InvalidWord { word: String, reason: String },

    #[error("{word} is not a minimal coset representative for the given parabolic")]
    NotMinimalRepresentative { word: String },

    #[error("root {0} lies in the parabolic subsystem; it spans no curve class")]
    RootInParabolicSpan(String),

    #[error("degree components {got} do not match the quantum parameters {expected}")]
    DegreeSupportMismatch { expected: String, got: String },

    #[error("closed series form required (truncated form has no exact denominator)")]
    ClosedFormRequired,

    #[error("line {line}, column {col}: {msg}")]
    TableParse {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("line {line}: unknown Weyl label {label:?}")]
    UnknownLabel { line: usize, label: String },

    #[error("line {line}: ineffective degree {degree:?} (components must be nonnegative integers, one per quantum parameter)")]
    IneffectiveDegree { line: usize, degree: String },

    #[error("line {line}: duplicate term for ({u}, {v}, {w}, {degree})")]
    DuplicateTerm {
        line: usize,
        u: String,
        v: String,
        w: String,
        degree: String,
    },

    #[error("symmetry violation: rows for ({u}, {v}) disagree with rows for ({v}, {u})")]
    SymmetryViolation { u: String, v: String },

    #[error("unit violation: rows for (e, {v}) must be exactly `e | {v} | {v} | 0-degree | 1`")]
    UnitViolation { v: String },

    #[error("table declares context {declared}, but the supplied flag variety is {supplied}")]
    ContextMismatch { declared: String, supplied: String },

    #[error("missing table row for ({u}, {v})")]
    MissingRow { u: String, v: String },

    #[error("{0}")]
    Io(#[from] std::io::Error),
}
