//! Entanglement of the states produced by the braid gate.
//!
//! Acting with R(theta) on a product basis state |lm> yields the state whose
//! amplitudes are the (l n + m)-th column of the gate. Entanglement is
//! measured by the negativity
//!
//! ```text
//!   N(rho) = (|| rho^(T_A) ||_1 - 1) / 2,
//! ```
//!
//! the absolute sum of the negative eigenvalues of the partial transpose.
//! For the n = 3 gate every one of the nine columns carries the same
//! negativity, given in closed form by
//!
//! ```text
//!   N(theta) = (4/9) (sin^2 theta + |sin theta| sqrt(1 + 8 cos^2 theta)),
//! ```
//!
//! which runs from 0 (product states at theta = 0) through 1 (nine mutually
//! orthogonal maximally entangled states at theta = pi/3) and back; it is
//! not monotonic on [0, pi]. Negativity is computed through the eigensolver
//! so the same path also serves mixed inputs.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{partial_transpose, trace_norm_hermitian, ComplexMatrix};
use crate::yang_baxter::{r_matrix, RMatrix};
use crate::Sign;

const NORM_TOL: f64 = 1e-12;
const COLUMN_AGREEMENT_TOL: f64 = 1e-10;

/// A pure two-qudit state in the composite index layout (a, b) -> a n + b.
#[derive(Debug, Clone)]
pub struct PureState {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Wrap an amplitude vector; must have length n^2 and unit norm.
    pub fn new(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != n * n {
            return Err(Error::Shape(format!(
                "state for local dimension {n} needs {} amplitudes, got {}",
                n * n,
                amplitudes.len()
            )));
        }
        let norm = amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Parameter(format!(
                "state norm {norm} deviates from 1 beyond {NORM_TOL:.0e}"
            )));
        }
        Ok(Self { n, amplitudes })
    }

    /// The product basis state |lm>.
    pub fn basis(n: usize, l: usize, m: usize) -> Result<Self> {
        if l >= n || m >= n {
            return Err(Error::Index(format!(
                "basis labels ({l}, {m}) out of range for local dimension {n}"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n * n];
        amplitudes[l * n + m] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amplitudes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Density matrix |psi><psi|.
    pub fn density_matrix(&self) -> ComplexMatrix {
        let dim = self.amplitudes.len();
        ComplexMatrix::from_fn(dim, dim, |i, j| {
            self.amplitudes[i] * self.amplitudes[j].conj()
        })
    }

    /// Overlap <self|other>.
    pub fn overlap(&self, other: &PureState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// The state R |lm>: column l n + m of the gate.
pub fn apply_to_basis(r: &RMatrix, l: usize, m: usize) -> Result<PureState> {
    let n = r.n();
    if l >= n || m >= n {
        return Err(Error::Index(format!(
            "basis labels ({l}, {m}) out of range for local dimension {n}"
        )));
    }
    PureState::new(n, r.matrix().column(l * n + m))
}

/// Negativity via partial transpose and trace norm.
pub fn negativity(state: &PureState) -> Result<f64> {
    let rho = state.density_matrix();
    let pt = partial_transpose(&rho, state.n())?;
    Ok((trace_norm_hermitian(&pt)? - 1.0) / 2.0)
}

/// Closed-form negativity of every gate column at angle theta:
/// N(theta) = (4/9)(sin^2 theta + |sin theta| sqrt(1 + 8 cos^2 theta)).
pub fn negativity_closed_form(theta: f64) -> f64 {
    let s = theta.sin();
    let c = theta.cos();
    4.0 / 9.0 * (s * s + s.abs() * (1.0 + 8.0 * c * c).sqrt())
}

/// Gate parameters for a negativity sweep (local dimension 3).
#[derive(Debug, Clone, Copy)]
pub struct SweepParams {
    pub phi1: f64,
    pub phi2: f64,
    pub epsilon: Sign,
}

/// One sweep record: the numeric negativity of column (l, m) at `theta`
/// against the closed form.
#[derive(Debug, Clone, Serialize)]
pub struct NegativityEntry {
    pub theta: f64,
    pub l: usize,
    pub m: usize,
    pub negativity_numeric: f64,
    pub negativity_closed_form: f64,
    pub deviation: f64,
}

/// Per-column negativities over a theta grid with deviations from the
/// closed form.
#[derive(Debug, Clone, Serialize)]
pub struct NegativityReport {
    pub entries: Vec<NegativityEntry>,
    pub max_deviation: f64,
}

/// Run the closed-form comparison over a theta grid, all nine (l, m)
/// columns per point. Fails when the nine columns disagree among
/// themselves beyond 1e-10 (which would indicate a construction bug,
/// not an entanglement property).
pub fn negativity_sweep(params: &SweepParams, thetas: &[f64]) -> Result<NegativityReport> {
    if thetas.is_empty() {
        return Err(Error::Parameter("empty theta grid".into()));
    }
    let mut entries = Vec::with_capacity(thetas.len() * 9);
    let mut max_deviation = 0.0f64;
    for &theta in thetas {
        let r = r_matrix(theta, params.phi1, params.phi2, params.epsilon, 3)?;
        let closed = negativity_closed_form(theta);
        let mut column_values = Vec::with_capacity(9);
        for l in 0..3 {
            for m in 0..3 {
                let numeric = negativity(&apply_to_basis(&r, l, m)?)?;
                column_values.push(numeric);
                let deviation = (numeric - closed).abs();
                max_deviation = max_deviation.max(deviation);
                entries.push(NegativityEntry {
                    theta,
                    l,
                    m,
                    negativity_numeric: numeric,
                    negativity_closed_form: closed,
                    deviation,
                });
            }
        }
        let spread = column_values.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
            - column_values.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        if spread > COLUMN_AGREEMENT_TOL {
            return Err(Error::ColumnMismatch {
                spread,
                tol: COLUMN_AGREEMENT_TOL,
            });
        }
    }
    Ok(NegativityReport {
        entries,
        max_deviation,
    })
}

/// The diagonal local unitary Y = Y1 (x) Y2 with
/// Y1 = diag(e^(i 4 pi/9), 1, e^(-i 4 pi/9)) and
/// Y2 = diag(e^(-i 2 pi/9), 1, e^(-i 4 pi/9)).
pub fn local_unitary_y() -> ComplexMatrix {
    use std::f64::consts::PI;
    let diag3 = |phases: [f64; 3]| {
        let mut m = ComplexMatrix::zeros(3, 3);
        for (i, p) in phases.into_iter().enumerate() {
            m[(i, i)] = Complex64::cis(p);
        }
        m
    };
    let y1 = diag3([4.0 * PI / 9.0, 0.0, -4.0 * PI / 9.0]);
    let y2 = diag3([-2.0 * PI / 9.0, 0.0, -4.0 * PI / 9.0]);
    y1.kron(&y2).expect("9 x 9 is far below the size cap")
}
