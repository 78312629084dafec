//! Error types shared by every module of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while constructing or verifying matrices.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A matrix dimension would exceed the configured cap (see [`crate::matrix::MAX_DIM`]).
    #[error("matrix dimension {dim} exceeds the configured maximum {max}")]
    SizeLimit { dim: usize, max: usize },

    /// Incompatible or non-square shapes.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// An index is outside its valid range.
    #[error("index out of range: {0}")]
    Index(String),

    /// An argument fails validation (non-unit phase, bad count, ...).
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The Hermiticity gate of the eigensolver failed.
    #[error("matrix is not Hermitian: max |M - M'| = {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { residual: f64, tol: f64 },

    /// The Jacobi sweeps did not reach the target off-diagonal mass.
    #[error("eigensolver did not converge within {sweeps} sweeps (off-diagonal mass {off_diagonal:.3e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    /// A matrix inversion hit a (near-)zero pivot.
    #[error("matrix is singular or ill-conditioned: {0}")]
    Singular(String),

    /// An algebraic construction constraint is violated; carries the measured residual.
    #[error("construction constraint violated: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    Constraint { residual: f64, tol: f64 },

    /// A generator family is malformed (wrong count, overlapping permutations, mismatched pairs).
    #[error("invalid generator family: {0}")]
    Family(String),

    /// The requested evaluation point is outside the supported domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A rational expression was evaluated at (or too close to) a pole.
    #[error("pole encountered: {0}")]
    Pole(String),

    /// The nine basis columns disagree on negativity beyond tolerance.
    #[error("negativity columns disagree: spread {spread:.3e} exceeds tolerance {tol:.3e}")]
    ColumnMismatch { spread: f64, tol: f64 },
}
