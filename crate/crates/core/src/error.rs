use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(
        "validate_gram: matrix is not square (row {row} has {found} entries, expected {expected})"
    )]
    NotSquare {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("validate_gram: matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("validate_gram: diagonal entry {index} is odd, lattice is not even")]
    NotEven { index: usize },
    #[error("validate_gram: leading principal minor through index {index} is not positive")]
    NotPositiveDefinite { index: usize },
    #[error("{op}: dimension mismatch (expected {expected}, found {found})")]
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{op}: vector {vector} is not in the dual lattice")]
    NotInDualLattice { op: &'static str, vector: String },
    #[error("{op}: precision {prec} is too small ({reason})")]
    PrecisionTooSmall {
        op: &'static str,
        prec: String,
        reason: String,
    },
    #[error("{op}: incompatible precisions ({detail})")]
    IncompatiblePrecision { op: &'static str, detail: String },
    #[error("{op}: coefficient budget of {budget} exceeded ({needed} coefficients)")]
    ResourceLimit {
        op: &'static str,
        budget: usize,
        needed: usize,
    },
    #[error("theta_decompose: shift invariance violated at n = {n}, l = {l}")]
    ShiftInvarianceViolated { n: String, l: String },
    #[error("{op}: w0 is not generic, <l, w0> = 0 for l = {l} with c(0, l) = {c}")]
    NonGenericChamber {
        op: &'static str,
        l: String,
        c: String,
    },
    #[error("lift_expansion: input precision {have} is below the required {need}")]
    InsufficientInputPrecision { have: String, need: String },
    #[error("lift_expansion: factor (1 - r^{l})^{exponent} has no truncatable expansion")]
    NonTruncatableFactor { l: String, exponent: String },
    #[error("{op}: lattices differ")]
    LatticeMismatch { op: &'static str },
    #[error("{op}: expected {expected}")]
    UnsupportedInput { op: &'static str, expected: String },
    #[error("schema violation at {path}: {message}")]
    SchemaViolation { path: String, message: String },
}

impl Error {
    /// Variant name, as reported by the command-line front end.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotSquare { .. } => "NotSquare",
            Error::NotSymmetric { .. } => "NotSymmetric",
            Error::NotEven { .. } => "NotEven",
            Error::NotPositiveDefinite { .. } => "NotPositiveDefinite",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotInDualLattice { .. } => "NotInDualLattice",
            Error::PrecisionTooSmall { .. } => "PrecisionTooSmall",
            Error::IncompatiblePrecision { .. } => "IncompatiblePrecision",
            Error::ResourceLimit { .. } => "ResourceLimit",
            Error::ShiftInvarianceViolated { .. } => "ShiftInvarianceViolated",
            Error::NonGenericChamber { .. } => "NonGenericChamber",
            Error::InsufficientInputPrecision { .. } => "InsufficientInputPrecision",
            Error::NonTruncatableFactor { .. } => "NonTruncatableFactor",
            Error::LatticeMismatch { .. } => "LatticeMismatch",
            Error::UnsupportedInput { .. } => "UnsupportedInput",
            Error::SchemaViolation { .. } => "SchemaViolation",
        }
    }

    /// Parse and schema failures, as opposed to domain errors.
    pub fn is_schema(&self) -> bool {
        matches!(self, Error::SchemaViolation { .. })
    }
}
