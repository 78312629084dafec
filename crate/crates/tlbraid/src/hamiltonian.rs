//! Drive Hamiltonian of the braid gate under time-linear phases.
//!
//! With phi_i = omega_i t the gate R(theta, phi1, phi2) becomes
//! time-dependent (theta itself is held fixed) and generates Schroedinger
//! evolution with
//!
//! ```text
//!   H = i hbar (dR/dt) R'.
//! ```
//!
//! Unitarity of R makes (dR/dt) R' anti-Hermitian, so H is Hermitian for
//! every parameter draw. Every generator entry is a monomial
//! omega^s q1^p q2^r / sqrt(3), so dR/dt comes out analytically from the
//! exponent table; [`derivative_consistency`] checks it against a central
//! finite difference.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::tla::{omega_root, tl3_monomials};
use crate::yang_baxter::r_matrix;
use crate::Sign;

/// Natural units: the evolution is only verified, never integrated against
/// a physical clock.
pub const HBAR: f64 = 1.0;

/// Time-dependent drive of the n = 3 gate: phi_i = omega_i t at fixed theta.
#[derive(Debug, Clone, Copy)]
pub struct DriveParams {
    pub theta: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub epsilon: Sign,
    pub t: f64,
}

/// How the time derivative behind a Hamiltonian was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeMethod {
    Analytic,
    FiniteDifference,
}

/// The Hamiltonian with its measured Hermiticity defect.
#[derive(Debug, Clone)]
pub struct HamiltonianResult {
    pub matrix: ComplexMatrix,
    pub hermiticity_residual: f64,
    pub derivative_method: DerivativeMethod,
}

/// Entrywise derivative of the n = 3 generator with respect to phi_k:
/// an entry c q1^p q2^r maps to i p c q1^p q2^r for k = 1 (i r c ... for
/// k = 2).
pub fn du_dphi(k: u8, phi1: f64, phi2: f64, epsilon: Sign) -> Result<ComplexMatrix> {
    if k != 1 && k != 2 {
        return Err(Error::Parameter(format!(
            "phase index must be 1 or 2, got {k}"
        )));
    }
    let table = tl3_monomials();
    let w = omega_root(epsilon);
    Ok(ComplexMatrix::from_fn(9, 9, |i, j| match table[i][j] {
        Some(mono) => {
            let power = if k == 1 { mono.q1_pow } else { mono.q2_pow };
            Complex64::new(0.0, power as f64) * mono.eval(phi1, phi2, w)
        }
        None => Complex64::new(0.0, 0.0),
    }))
}

/// Analytic dR/dt at the drive point:
/// -(2 i sin(theta)/sqrt(3)) (omega1 dU/dphi1 + omega2 dU/dphi2).
fn gate_time_derivative(d: &DriveParams) -> ComplexMatrix {
    let phi1 = d.omega1 * d.t;
    let phi2 = d.omega2 * d.t;
    let du1 = du_dphi(1, phi1, phi2, d.epsilon).expect("phase index 1 is valid");
    let du2 = du_dphi(2, phi1, phi2, d.epsilon).expect("phase index 2 is valid");
    let du_dt = du1
        .scale(Complex64::new(d.omega1, 0.0))
        .add(&du2.scale(Complex64::new(d.omega2, 0.0)));
    du_dt.scale(Complex64::new(0.0, -2.0 * d.theta.sin()) / Complex64::new(3f64.sqrt(), 0.0))
}

/// H = i hbar (dR/dt) R' with the analytic derivative.
pub fn build_hamiltonian(d: &DriveParams) -> HamiltonianResult {
    let phi1 = d.omega1 * d.t;
    let phi2 = d.omega2 * d.t;
    let r = r_matrix(d.theta, phi1, phi2, d.epsilon, 3)
        .expect("local dimension 3 is always accepted");
    let h = gate_time_derivative(d)
        .matmul(&r.matrix().dagger())
        .scale(Complex64::new(0.0, HBAR));
    let hermiticity_residual = h.hermiticity_residual();
    HamiltonianResult {
        matrix: h,
        hermiticity_residual,
        derivative_method: DerivativeMethod::Analytic,
    }
}

/// Max-entry norm of the analytic dR/dt against the central difference
/// [R(t + h) - R(t - h)] / (2 h). Second-order: halving h divides the
/// residual by about four until it reaches the rounding floor.
pub fn derivative_consistency(d: &DriveParams, h: f64) -> Result<f64> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::Parameter(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    let gate_at = |t: f64| -> ComplexMatrix {
        r_matrix(d.theta, d.omega1 * t, d.omega2 * t, d.epsilon, 3)
            .expect("local dimension 3 is always accepted")
            .matrix()
            .clone()
    };
    let forward = gate_at(d.t + h);
    let backward = gate_at(d.t - h);
    let numeric = forward
        .sub(&backward)
        .scale(Complex64::new(1.0 / (2.0 * h), 0.0));
    Ok(gate_time_derivative(d).max_diff(&numeric))
}
