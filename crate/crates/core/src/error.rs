use thiserror::Error;

/// Errors raised by constructors and numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyDimension { rows: usize, cols: usize },

    #[error("data length {len} does not match shape {rows}x{cols}")]
    DataLength { rows: usize, cols: usize, len: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("{op} supports dimension at most {limit}, got {n}")]
    TooLarge {
        op: &'static str,
        n: usize,
        limit: usize,
    },

    #[error(
        "result of {op} needs {requested} entries, over the element budget of {budget} \
         (raise it with KRONRAD_BUDGET)"
    )]
    BudgetExceeded {
        op: &'static str,
        requested: u128,
        budget: usize,
    },

    #[error("integer overflow computing {0}")]
    Overflow(&'static str),

    #[error("matrix is not Hermitian: ||H - H*||_inf = {deviation:e} exceeds tolerance {allowed:e}")]
    NotHermitian { deviation: f64, allowed: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("entry ({row}, {col}) is not a nonnegative real number")]
    NotNonnegative { row: usize, col: usize },

    #[error("operator is not adjointable for this P: ||Pi B Pi_perp|| = {defect:e}")]
    NotAdjointable { defect: f64 },

    #[error("Gram matrix is not of the form (alpha - beta) I + beta J: deviation {deviation:e}")]
    GramStructure { deviation: f64 },

    #[error("polynomial must be monic of degree >= 2: {0}")]
    InvalidPolynomial(String),

    #[error("exact operator norm is only available for p in {{1, 2, inf}}, got p = {0}")]
    UnsupportedExponent(f64),

    #[error("{routine} did not converge after {iterations} iterations")]
    NoConvergence {
        routine: &'static str,
        iterations: usize,
    },

    #[error("{what}: discrepancy {discrepancy:e} between independent computations")]
    Inconsistent { what: &'static str, discrepancy: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for failures of the numerics themselves, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. } | Error::Inconsistent { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
