//! Error type shared by every module in the crate.

use thiserror::Error;

/// Everything that can go wrong while validating input or solving for a
/// stationary distribution.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The input rows do not form a square matrix with at least one row.
    #[error("input is not a square matrix of positive dimension")]
    NotSquare,

    /// A matrix entry is negative (probabilities must be nonnegative).
    #[error("negative entry {value} at ({row}, {col})")]
    NegativeEntry {
        /// Row index of the offending entry.
        row: usize,
        /// Column index of the offending entry.
        col: usize,
        /// The entry itself.
        value: f64,
    },

    /// A row sum strays further from 1 than the allowed tolerance.
    #[error("row {row} sums to {sum}, not within tolerance of 1")]
    RowSumViolation {
        /// Row index whose sum is off.
        row: usize,
        /// The actual sum of that row.
        sum: f64,
    },

    /// A probability vector entry is negative.
    #[error("negative vector entry {value} at index {index}")]
    NegativeVectorEntry {
        /// Index of the offending entry.
        index: usize,
        /// The entry itself.
        value: f64,
    },

    /// The entries of a probability vector do not sum to 1 within tolerance.
    #[error("vector entries sum to {sum}, not within tolerance of 1")]
    VectorSumViolation {
        /// The actual sum.
        sum: f64,
    },

    /// Two operands disagree on dimension.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch {
        /// Dimension required by the left operand.
        expected: usize,
        /// Dimension actually supplied.
        found: usize,
    },

    /// A state index lies outside `0..n`.
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange {
        /// The offending index.
        index: usize,
        /// The matrix dimension.
        n: usize,
    },

    /// The stationary equation has more than one independent solution, so
    /// the chain cannot be irreducible.
    #[error("stationary distribution is not unique: kernel dimension {kernel_dimension}")]
    NotUniqueStationary {
        /// Dimension of the solution space found.
        kernel_dimension: usize,
    },

    /// A computed stationary entry failed the strict positivity check.
    #[error("stationary entry at index {index} is not strictly positive")]
    NonPositiveEntry {
        /// Index of the non-positive entry.
        index: usize,
    },

    /// The averaging solver hit its iteration cap before meeting the
    /// residual target.
    #[error("no iterate met the residual target within {iterations} steps (residual {residual})")]
    MaxIterationsExceeded {
        /// Number of steps performed.
        iterations: u64,
        /// Residual at the final iterate.
        residual: f64,
    },

    /// A fixture description is internally inconsistent.
    #[error("invalid fixture spec: {reason}")]
    InvalidSpec {
        /// Human-readable explanation.
        reason: String,
    },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
