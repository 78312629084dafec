//! Yang-Baxterization of the Temperley-Lieb generators.
//!
//! The braid matrix is sought in the ansatz R(u) = F(u) [I + G(u) U] over a
//! rapidity-like parameter u with the relativistic composition rule
//! w = (u + v)/(1 + beta^2 u v). Substituting the ansatz into the braid
//! equation leaves a single functional equation for G,
//!
//! ```text
//!   G(u) + G(v) + G(w) [G(u) G(v) - 1] + sqrt(n) G(u) G(v) = 0,
//! ```
//!
//! solved by the rational expression implemented in [`g_value`] (any local
//! dimension except n = 4, where the closed form degenerates). Unitarity
//! forces |F| = 1 and G + G* + sqrt(n) G G* = 0, which lets the whole family
//! be reparameterized by a real angle theta with G = (e^(-2 i theta) - 1)/sqrt(n):
//!
//! ```text
//!   R(theta) = e^(i theta) I - (2 i sin(theta) / sqrt(n)) U.
//! ```
//!
//! [`r_matrix`] builds that unitary gate for the n = 2 and n = 3 generators;
//! [`ybe_residual`] measures the three-strand braid equation directly.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{embed_site, ComplexMatrix};
use crate::tla::{tl2_eight_vertex, tl3_generator, TLGenerator};
use crate::Sign;

const POLE_TOL: f64 = 1e-14;

fn validate_local_dimension(n: usize) -> Result<()> {
    if n == 2 || n == 3 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "braid gates are built for local dimension 2 or 3, got {n}"
        )))
    }
}

/// The rational solution of the G functional equation:
///
/// ```text
///   G(u) = 4 i eps beta u / [sqrt(4 - n) (beta^2 u^2 - 2 sqrt(n/(4-n)) i eps beta u + 1)]
/// ```
///
/// Valid for any n != 4 (the square roots are taken as principal complex
/// branches above n = 4). Errors at n = 4 and within `1e-14` of the
/// denominator zeros.
pub fn g_value(u: f64, beta: f64, n: usize, epsilon: Sign) -> Result<Complex64> {
    if n == 4 {
        return Err(Error::Domain(
            "the rational solution degenerates at local dimension 4".into(),
        ));
    }
    let bu = beta * u;
    let root_gap = Complex64::new(4.0 - n as f64, 0.0).sqrt();
    let root_ratio = Complex64::new(n as f64 / (4.0 - n as f64), 0.0).sqrt();
    let den = Complex64::new(bu * bu + 1.0, 0.0)
        - root_ratio * Complex64::new(0.0, 2.0 * epsilon.value() * bu);
    if den.norm() < POLE_TOL {
        return Err(Error::Pole(format!(
            "denominator magnitude {:.3e} at u = {u}",
            den.norm()
        )));
    }
    Ok(Complex64::new(0.0, 4.0 * epsilon.value() * bu) / (root_gap * den))
}

/// Residual of the G functional equation at (u, v) with the relativistic
/// composition w = (u + v)/(1 + beta^2 u v).
pub fn g_functional_residual(u: f64, v: f64, beta: f64, n: usize, epsilon: Sign) -> Result<f64> {
    let den = 1.0 + beta * beta * u * v;
    if den.abs() < POLE_TOL {
        return Err(Error::Pole(format!(
            "rapidity composition pole: 1 + beta^2 u v = {den:.3e}"
        )));
    }
    let w = (u + v) / den;
    let gu = g_value(u, beta, n, epsilon)?;
    let gv = g_value(v, beta, n, epsilon)?;
    let gw = g_value(w, beta, n, epsilon)?;
    let root_n = Complex64::new((n as f64).sqrt(), 0.0);
    Ok((gu + gv + gw * (gu * gv - Complex64::new(1.0, 0.0)) + root_n * gu * gv).norm())
}

/// Angle reparameterization: the unit-modulus quotient
///
/// ```text
///   z = (beta^2 u^2 + 2 sqrt(n/(4-n)) i eps beta u + 1)
///     / (beta^2 u^2 - 2 sqrt(n/(4-n)) i eps beta u + 1)  = e^(-2 i theta)
/// ```
///
/// solved for theta on the principal branch (-pi/2, pi/2], so that
/// G(u) = (e^(-2 i theta) - 1)/sqrt(n) holds.
pub fn theta_value(u: f64, beta: f64, n: usize, epsilon: Sign) -> Result<f64> {
    if n == 4 {
        return Err(Error::Domain(
            "the rational solution degenerates at local dimension 4".into(),
        ));
    }
    let bu = beta * u;
    let root_ratio = Complex64::new(n as f64 / (4.0 - n as f64), 0.0).sqrt();
    let cross = root_ratio * Complex64::new(0.0, 2.0 * epsilon.value() * bu);
    let base = Complex64::new(bu * bu + 1.0, 0.0);
    let den = base - cross;
    if den.norm() < POLE_TOL {
        return Err(Error::Pole(format!(
            "denominator magnitude {:.3e} at u = {u}",
            den.norm()
        )));
    }
    let z = (base + cross) / den;
    let theta = -z.arg() / 2.0;
    // arg lands in (-pi, pi], putting theta in [-pi/2, pi/2); fold the
    // lower endpoint onto +pi/2 (same gate either way).
    if theta == -std::f64::consts::FRAC_PI_2 {
        return Ok(std::f64::consts::FRAC_PI_2);
    }
    Ok(theta)
}

/// Rapidity-side parameters of a braid gate, with the derived angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    u: f64,
    beta: f64,
    epsilon: Sign,
    n: usize,
    theta: f64,
}

impl SpectralPoint {
    /// Validate the parameters and derive the angle. Local dimension must be
    /// 2 or 3 and beta must be a positive real constant.
    pub fn new(u: f64, beta: f64, epsilon: Sign, n: usize) -> Result<Self> {
        validate_local_dimension(n)?;
        if !u.is_finite() {
            return Err(Error::Parameter(format!("rapidity {u} is not finite")));
        }
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::Parameter(format!(
                "beta must be a positive constant, got {beta}"
            )));
        }
        let theta = theta_value(u, beta, n, epsilon)?;
        Ok(Self {
            u,
            beta,
            epsilon,
            n,
            theta,
        })
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn epsilon(&self) -> Sign {
        self.epsilon
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The derived angle with e^(-2 i theta) = 1 + sqrt(n) G(u).
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// G evaluated at this point. The constructors exclude every pole, so
    /// this cannot fail.
    pub fn g(&self) -> Complex64 {
        g_value(self.u, self.beta, self.n, self.epsilon)
            .expect("no poles on the real rapidity line for n in {2, 3}")
    }
}

/// Unitary braid gate R(theta, q1, q2) for local dimension 2 or 3.
#[derive(Debug, Clone)]
pub struct RMatrix {
    theta: f64,
    phi1: f64,
    phi2: f64,
    epsilon: Sign,
    n: usize,
    matrix: ComplexMatrix,
}

impl RMatrix {
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi1(&self) -> f64 {
        self.phi1
    }

    pub fn phi2(&self) -> f64 {
        self.phi2
    }

    pub fn epsilon(&self) -> Sign {
        self.epsilon
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Rebuild from raw parts (deserialization); the matrix payload is
    /// adopted as-is.
    pub fn from_parts(
        theta: f64,
        phi1: f64,
        phi2: f64,
        epsilon: Sign,
        n: usize,
        matrix: ComplexMatrix,
    ) -> Result<Self> {
        validate_local_dimension(n)?;
        if matrix.rows() != n * n || matrix.cols() != n * n {
            return Err(Error::Shape(format!(
                "braid gate for local dimension {n} needs a {0} x {0} matrix, got {1} x {2}",
                n * n,
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self {
            theta,
            phi1,
            phi2,
            epsilon,
            n,
            matrix,
        })
    }
}

fn generator_for(n: usize, phi1: f64, phi2: f64, epsilon: Sign) -> Result<TLGenerator> {
    validate_local_dimension(n)?;
    Ok(match n {
        2 => tl2_eight_vertex(phi1, epsilon),
        _ => tl3_generator(phi1, phi2, epsilon),
    })
}

/// F I - (2 i s / sqrt(n)) U for a (possibly complex) pair (F, s).
fn gate_matrix(f: Complex64, s: Complex64, u: &ComplexMatrix, n: usize) -> ComplexMatrix {
    let identity = ComplexMatrix::identity(u.rows());
    let coeff = Complex64::new(0.0, -2.0) * s / Complex64::new((n as f64).sqrt(), 0.0);
    identity.scale(f).add(&u.scale(coeff))
}

/// The unitary braid gate
/// R(theta) = e^(i theta) I - (2 i sin(theta)/sqrt(n)) U(phi1, phi2, eps).
///
/// For n = 2 the generator is the eight-vertex one with q-phase `phi1`
/// (`phi2` has no effect); for n = 3 it is the qutrit generator.
pub fn r_matrix(theta: f64, phi1: f64, phi2: f64, epsilon: Sign, n: usize) -> Result<RMatrix> {
    let gen = generator_for(n, phi1, phi2, epsilon)?;
    let matrix = gate_matrix(
        Complex64::cis(theta),
        Complex64::new(theta.sin(), 0.0),
        gen.matrix(),
        n,
    );
    Ok(RMatrix {
        theta,
        phi1,
        phi2,
        epsilon,
        n,
        matrix,
    })
}

/// Same formula with an unconstrained complex angle. Only real angles give a
/// unitary gate; this hook exists so the unitarity report can be shown to
/// catch misuse.
#[allow(dead_code)]
pub(crate) fn r_matrix_complex_theta(
    theta: Complex64,
    phi1: f64,
    phi2: f64,
    epsilon: Sign,
    n: usize,
) -> Result<ComplexMatrix> {
    let gen = generator_for(n, phi1, phi2, epsilon)?;
    let i = Complex64::new(0.0, 1.0);
    let f = (i * theta).exp();
    let s = ((i * theta).exp() - (-i * theta).exp()) / Complex64::new(0.0, 2.0);
    Ok(gate_matrix(f, s, gen.matrix(), n))
}

/// Max-entry norm of R R' - I.
pub fn unitarity_report(r: &RMatrix) -> f64 {
    r.matrix()
        .matmul(&r.matrix().dagger())
        .max_diff(&ComplexMatrix::identity(r.matrix().rows()))
}

/// How the middle rapidity of the three-strand check is composed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RapidityAddition {
    /// w = (u + v)/(1 + beta^2 u v); the rule under which the braid
    /// equation actually closes.
    Relativistic,
    /// w = u + v; a deliberately wrong rule used as a sensitivity probe.
    Naive,
}

/// Three-strand braid-equation residual
/// || R_1(u) R_2(w) R_1(v) - R_2(v) R_1(w) R_2(u) ||_max
/// with w composed according to `addition`.
pub fn ybe_residual_with(
    u: f64,
    v: f64,
    beta: f64,
    epsilon: Sign,
    phi1: f64,
    phi2: f64,
    n: usize,
    addition: RapidityAddition,
) -> Result<f64> {
    validate_local_dimension(n)?;
    let w = match addition {
        RapidityAddition::Relativistic => {
            let den = 1.0 + beta * beta * u * v;
            if den.abs() < POLE_TOL {
                return Err(Error::Pole(format!(
                    "rapidity composition pole: 1 + beta^2 u v = {den:.3e}"
                )));
            }
            (u + v) / den
        }
        RapidityAddition::Naive => u + v,
    };
    let gate = |rapidity: f64| -> Result<ComplexMatrix> {
        let theta = theta_value(rapidity, beta, n, epsilon)?;
        Ok(r_matrix(theta, phi1, phi2, epsilon, n)?.matrix().clone())
    };
    let site = |m: &ComplexMatrix, s: usize| embed_site(m, s, 3, n);

    let (ru, rv, rw) = (gate(u)?, gate(v)?, gate(w)?);
    let lhs = site(&ru, 1)?.matmul(&site(&rw, 2)?).matmul(&site(&rv, 1)?);
    let rhs = site(&rv, 2)?.matmul(&site(&rw, 1)?).matmul(&site(&ru, 2)?);
    Ok(lhs.max_diff(&rhs))
}

/// Braid-equation residual under the relativistic composition rule.
pub fn ybe_residual(
    u: f64,
    v: f64,
    beta: f64,
    epsilon: Sign,
    phi1: f64,
    phi2: f64,
    n: usize,
) -> Result<f64> {
    ybe_residual_with(
        u,
        v,
        beta,
        epsilon,
        phi1,
        phi2,
        n,
        RapidityAddition::Relativistic,
    )
}
