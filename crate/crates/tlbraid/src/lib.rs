//! Numerical toolkit for Temperley-Lieb generators built from
//! permutation-phase matrix pairs, their Yang-Baxterization into unitary
//! braiding matrices, and quantitative checks of the algebraic, unitarity,
//! entanglement and Hamiltonian properties of the resulting gates.
//!
//! The crate is organised around five module groups:
//!
//! - [`matrix`]: dense complex kernel (products, Kronecker products,
//!   partial transpose, a Jacobi eigensolver for Hermitian matrices).
//! - [`tla`]: permutation-phase families, generator constructors, and the
//!   verification of the defining relations U^2 = d U, U_i U_{i+-1} U_i = U_i,
//!   [U_i, U_j] = 0 for |i - j| >= 2.
//! - [`yang_baxter`]: the rational spectral-parameter solution, its angle
//!   reparameterization, unitary braiding matrices and the three-strand
//!   braid-equation residual.
//! - [`entanglement`]: states produced by acting on the product basis,
//!   negativity via partial transpose, and the closed-form profile N(theta).
//! - [`hamiltonian`]: the drive Hamiltonian i hbar (dR/dt) R' for
//!   time-linear phases, with analytic derivatives checked against finite
//!   differences.
//!
//! All operations are pure functions over immutable values; concurrent use
//! on distinct inputs is safe throughout.

pub mod entanglement;
pub mod error;
pub mod hamiltonian;
pub mod matrix;
pub mod schema;
pub mod tla;
pub mod yang_baxter;

pub use error::{Error, Result};
pub use matrix::{
    embed_site, hermitian_eigenvalues, partial_transpose, trace_norm_hermitian, ComplexMatrix,
    EigenResult, EIGEN_TOL, MAX_DIM,
};
pub use num_complex::Complex64;

/// A sign branch: the only discrete parameter in the constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = Error;
    fn try_from(v: i8) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::Parameter(format!(
                "sign must be +1 or -1, got {other}"
            ))),
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}
