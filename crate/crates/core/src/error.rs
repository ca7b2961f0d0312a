use thiserror::Error;

/// Errors raised by the combinatorial side of the crate.
///
/// The L_LA evaluator has its own error type, [`crate::la::LaError`].
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix entries must be 0 or 1, found {value} at ({row}, {col})")]
    NonBinaryEntry { row: usize, col: usize, value: i64 },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid selection: {0}")]
    InvalidSelection(String),

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An exhaustive search was asked to go beyond its configured budget.
    #[error("budget exceeded: {what} is {got}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    /// The recursive solver refuses instances above its recursion cap.
    #[error("recursion cap exceeded: n = {n}, cap = {cap}")]
    RecursionCap { n: usize, cap: usize },

    /// The cut exchange procedure could not reach a permutation incidence.
    #[error("repair failed: {0}")]
    RepairFailed(String),

    /// An internal consistency check failed. Never expected on valid input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for the resource-exhaustion family (budget and recursion caps).
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::RecursionCap { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
