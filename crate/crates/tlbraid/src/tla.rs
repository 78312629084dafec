//! Temperley-Lieb generators from permutation-phase matrix families.
//!
//! The algebra TL_m(d) is generated by {1, U_1, ..., U_{m-1}} subject to
//!
//! ```text
//!   U_i^2           = d U_i
//!   U_i U_{i+-1} U_i = U_i
//!   U_i U_j         = U_j U_i        for |i - j| >= 2
//! ```
//!
//! A single n x n invertible matrix A yields a generator through
//! U[(a,b),(c,d)] = A[a,b] (A^-1)[c,d] with loop value d = Tr(A^T A^-1);
//! more generally a pair (A, B) works whenever (BA)^T (AB) = (AB)(BA)^T = I,
//! with d = Tr(B^T A). Summing n such generators built on pairwise-disjoint
//! involutive permutations and dividing by sqrt(n) produces an n^2 x n^2
//! generator with n^3 nonzero entries and loop value sqrt(n), provided the
//! cross-family limiting sums
//!
//! ```text
//!   sum_j (B_i A_j)^T (A_k B_j)   and   sum_j (A_j B_i) (B_j A_k)^T
//! ```
//!
//! vanish for every i != k. [`limiting_residual`] measures those sums; the
//! combined constructor gates on them. The n = 2 branch realizes the
//! eight-vertex generator, the n = 3 branch the 9 x 9 qutrit generator whose
//! rank-3 image is spanned by three maximally entangled states.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{embed_site, ComplexMatrix, MAX_DIM};
use crate::Sign;

/// Residual bound for identities that hold by construction
/// (products of unit-modulus scalars).
pub const CONSTRUCTION_TOL: f64 = 1e-12;

/// Gate for algebraic constraints on constructor inputs.
pub const CONSTRAINT_TOL: f64 = 1e-10;

const UNIT_PHASE_TOL: f64 = 1e-12;

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// n x n matrix with exactly one unit-modulus entry per row and column,
/// placed on the involutive permutation row a -> col (i - 1 - a) mod n of
/// family index i.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePermMatrix {
    n: usize,
    family_index: usize,
    phases: Vec<Complex64>,
}

/// Build the family-`i` permutation-phase matrix with the given row phases.
///
/// Entry (a, (i - 1 - a) mod n) holds `phases[a]`; everything else is zero.
/// Every phase must be unit modulus.
pub fn build_phase_perm(n: usize, i: usize, phases: &[Complex64]) -> Result<PhasePermMatrix> {
    if n == 0 || i == 0 || i > n {
        return Err(Error::Parameter(format!(
            "family index {i} not in 1..={n}"
        )));
    }
    if phases.len() != n {
        return Err(Error::Parameter(format!(
            "{} phases supplied for dimension {n}",
            phases.len()
        )));
    }
    for (row, z) in phases.iter().enumerate() {
        if (z.norm() - 1.0).abs() > UNIT_PHASE_TOL {
            return Err(Error::Parameter(format!(
                "phase {z} in row {row} has modulus {:.3e}, expected 1",
                z.norm()
            )));
        }
    }
    Ok(PhasePermMatrix {
        n,
        family_index: i,
        phases: phases.to_vec(),
    })
}

impl PhasePermMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family_index(&self) -> usize {
        self.family_index
    }

    pub fn phases(&self) -> &[Complex64] {
        &self.phases
    }

    /// Column carrying the nonzero entry of `row`.
    pub fn column_of_row(&self, row: usize) -> usize {
        (self.family_index - 1 + self.n - row % self.n) % self.n
    }

    /// Same permutation with every phase inverted.
    pub fn entrywise_inverse(&self) -> PhasePermMatrix {
        PhasePermMatrix {
            n: self.n,
            family_index: self.family_index,
            phases: self.phases.iter().map(|z| z.inv()).collect(),
        }
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.n, self.n);
        for (row, &z) in self.phases.iter().enumerate() {
            m[(row, self.column_of_row(row))] = z;
        }
        m
    }
}

/// Parameter record of a generator, kept for serialization.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorParams {
    /// n = 2 eight-vertex generator: q = e^(i q_phase), cross ratio eps*i.
    EightVertex { q_phase: f64, epsilon: Sign },
    /// n = 3 generator: q_k = e^(i phi_k), omega = e^(i eps 2 pi / 3).
    Qutrit { phi1: f64, phi2: f64, epsilon: Sign },
    /// Anything built from explicit matrices or families.
    Generic,
}

/// An n^2 x n^2 Temperley-Lieb generator with its loop value.
#[derive(Debug, Clone)]
pub struct TLGenerator {
    n: usize,
    loop_value: f64,
    matrix: ComplexMatrix,
    params: GeneratorParams,
}

impl TLGenerator {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The scalar d in U^2 = d U.
    pub fn loop_value(&self) -> f64 {
        self.loop_value
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn params(&self) -> &GeneratorParams {
        &self.params
    }

    /// Max-entry norm of U^2 - d U.
    pub fn idempotency_residual(&self) -> f64 {
        let u2 = self.matrix.matmul(&self.matrix);
        u2.sub(&self.matrix.scale(Complex64::new(self.loop_value, 0.0)))
            .max_norm()
    }

    /// Number of exactly nonzero entries.
    pub fn nonzero_count(&self) -> usize {
        self.matrix.data().iter().filter(|z| **z != czero()).count()
    }

    /// Rebuild from raw parts (deserialization); no identities are re-derived.
    pub fn from_parts(
        n: usize,
        loop_value: f64,
        matrix: ComplexMatrix,
        params: GeneratorParams,
    ) -> Result<Self> {
        if matrix.rows() != n * n || matrix.cols() != n * n {
            return Err(Error::Shape(format!(
                "generator for local dimension {n} needs a {0} x {0} matrix, got {1} x {2}",
                n * n,
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self {
            n,
            loop_value,
            matrix,
            params,
        })
    }
}

/// U[(a,b),(c,d)] = A[a,b] B[c,d]: the outer product of the two row-major
/// flattenings.
fn pair_generator_matrix(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let dim = a.rows() * a.cols();
    let af = a.data();
    let bf = b.data();
    ComplexMatrix::from_fn(dim, dim, |row, col| af[row] * bf[col])
}

/// Entrywise sum A[x,y] B[x,y], i.e. Tr(B^T A).
fn entrywise_trace(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    a.data().iter().zip(b.data()).map(|(x, y)| x * y).sum()
}

fn real_loop_value(d: Complex64) -> Result<f64> {
    if d.im.abs() > 1e-10 {
        return Err(Error::Domain(format!(
            "loop value {d} is not real; the generator record only carries real loop values"
        )));
    }
    Ok(d.re)
}

/// Generator from a single invertible matrix:
/// U[(a,b),(c,d)] = A[a,b] (A^-1)[c,d], d = Tr(A^T A^-1).
pub fn kulish_generator(a: &ComplexMatrix) -> Result<TLGenerator> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "generator seed must be square, got {} x {}",
            a.rows(),
            a.cols()
        )));
    }
    let inv = a.inverse()?;
    let loop_value = real_loop_value(entrywise_trace(a, &inv))?;
    Ok(TLGenerator {
        n: a.rows(),
        loop_value,
        matrix: pair_generator_matrix(a, &inv),
        params: GeneratorParams::Generic,
    })
}

/// Generator from a pair (A, B) subject to (BA)^T (AB) = (AB)(BA)^T = I.
/// U[(a,b),(c,d)] = A[a,b] B[c,d], d = Tr(B^T A).
pub fn product_generator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<TLGenerator> {
    if !a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::Shape(format!(
            "pair must be square matrices of equal size, got {} x {} and {} x {}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let n = a.rows();
    let identity = ComplexMatrix::identity(n);
    let ba = b.matmul(a);
    let ab = a.matmul(b);
    let first = ba.transpose().matmul(&ab).max_diff(&identity);
    let second = ab.matmul(&ba.transpose()).max_diff(&identity);
    let residual = first.max(second);
    if residual >= CONSTRAINT_TOL {
        return Err(Error::Constraint {
            residual,
            tol: CONSTRAINT_TOL,
        });
    }
    let loop_value = real_loop_value(entrywise_trace(a, b))?;
    Ok(TLGenerator {
        n,
        loop_value,
        matrix: pair_generator_matrix(a, b),
        params: GeneratorParams::Generic,
    })
}

/// Max-entry norm of the cross-family limiting sums
/// sum_j (B_i A_j)^T (A_k B_j) and sum_j (A_j B_i) (B_j A_k)^T over all
/// ordered i != k. Zero (to rounding) exactly when the family assembles
/// into a Temperley-Lieb generator.
pub fn limiting_residual(family: &[(PhasePermMatrix, PhasePermMatrix)]) -> f64 {
    let a: Vec<ComplexMatrix> = family.iter().map(|(a, _)| a.to_matrix()).collect();
    let b: Vec<ComplexMatrix> = family.iter().map(|(_, b)| b.to_matrix()).collect();
    let count = family.len();
    let mut worst = 0.0f64;
    for i in 0..count {
        for k in 0..count {
            if i == k {
                continue;
            }
            let n = a[i].rows();
            let mut s1 = ComplexMatrix::zeros(n, n);
            let mut s2 = ComplexMatrix::zeros(n, n);
            for j in 0..count {
                s1 = s1.add(&b[i].matmul(&a[j]).transpose().matmul(&a[k].matmul(&b[j])));
                s2 = s2.add(&a[j].matmul(&b[i]).matmul(&b[j].matmul(&a[k]).transpose()));
            }
            worst = worst.max(s1.max_norm()).max(s2.max_norm());
        }
    }
    worst
}

fn validate_family(family: &[(PhasePermMatrix, PhasePermMatrix)]) -> Result<usize> {
    let n = match family.first() {
        Some((a, _)) => a.n(),
        None => return Err(Error::Family("empty family".into())),
    };
    if family.len() != n {
        return Err(Error::Family(format!(
            "{} pairs supplied for local dimension {n}; need exactly {n}",
            family.len()
        )));
    }
    let mut seen = vec![false; n];
    for (a, b) in family {
        if a.n() != n || b.n() != n {
            return Err(Error::Family("mixed dimensions in family".into()));
        }
        if a.family_index() != b.family_index() {
            return Err(Error::Family(format!(
                "pair mixes permutations {} and {}",
                a.family_index(),
                b.family_index()
            )));
        }
        let slot = a.family_index() - 1;
        if seen[slot] {
            return Err(Error::Family(format!(
                "overlapping permutations: family index {} appears twice",
                a.family_index()
            )));
        }
        seen[slot] = true;
    }
    Ok(n)
}

fn combine_family(family: &[(PhasePermMatrix, PhasePermMatrix)], n: usize) -> TLGenerator {
    let dim = n * n;
    let mut sum = ComplexMatrix::zeros(dim, dim);
    for (a, b) in family {
        sum = sum.add(&pair_generator_matrix(&a.to_matrix(), &b.to_matrix()));
    }
    let root = (n as f64).sqrt();
    TLGenerator {
        n,
        loop_value: root,
        matrix: sum.scale(Complex64::new(1.0 / root, 0.0)),
        params: GeneratorParams::Generic,
    }
}

/// Combined generator U = (1/sqrt(n)) sum_i U^(i) over a family of n
/// permutation-phase pairs covering all n^2 entry slots. The loop value is
/// sqrt(n). Fails when the pairs are not entrywise inverses of each other
/// or the limiting sums do not vanish.
pub fn combined_generator(family: &[(PhasePermMatrix, PhasePermMatrix)]) -> Result<TLGenerator> {
    let n = validate_family(family)?;
    let identity = ComplexMatrix::identity(n);
    let mut residual = limiting_residual(family);
    for (a, b) in family {
        let pair_residual = a
            .to_matrix()
            .transpose()
            .matmul(&b.to_matrix())
            .max_diff(&identity);
        residual = residual.max(pair_residual);
    }
    if residual >= CONSTRAINT_TOL {
        return Err(Error::Constraint {
            residual,
            tol: CONSTRAINT_TOL,
        });
    }
    Ok(combine_family(family, n))
}

/// Diagnostic variant of [`combined_generator`] that skips the limiting
/// gate. The result is generally *not* a Temperley-Lieb generator; it exists
/// so verification paths can measure how badly broken parameters fail.
pub fn combined_generator_unchecked(
    family: &[(PhasePermMatrix, PhasePermMatrix)],
) -> Result<TLGenerator> {
    let n = validate_family(family)?;
    Ok(combine_family(family, n))
}

/// The n = 2 family: a diagonal member carrying q = e^(i q_phase) and an
/// anti-diagonal member carrying `cross_ratio` (the ratio a2/b2, which the
/// limiting conditions force to +-i).
pub fn tl2_family(
    q_phase: f64,
    cross_ratio: Complex64,
) -> Result<Vec<(PhasePermMatrix, PhasePermMatrix)>> {
    let q = Complex64::cis(q_phase);
    let diag = build_phase_perm(2, 1, &[Complex64::new(1.0, 0.0), q.inv()])?;
    let anti = build_phase_perm(2, 2, &[Complex64::new(1.0, 0.0), cross_ratio.inv()])?;
    Ok(vec![
        (diag.clone(), diag.entrywise_inverse()),
        (anti.clone(), anti.entrywise_inverse()),
    ])
}

/// The 4 x 4 eight-vertex generator with loop value sqrt(2):
///
/// ```text
///         | 1       0      0     q |
///  1      | 0       1    eps*i   0 |
/// ---- *  | 0   -eps*i      1    0 |
/// sqrt(2) | 1/q     0      0     1 |
/// ```
pub fn tl2_eight_vertex(q_phase: f64, epsilon: Sign) -> TLGenerator {
    let cross = Complex64::new(0.0, epsilon.value());
    let family = tl2_family(q_phase, cross).expect("eight-vertex phases are unit modulus");
    let mut gen =
        combined_generator(&family).expect("the eight-vertex family satisfies the limiting sums");
    gen.params = GeneratorParams::EightVertex { q_phase, epsilon };
    gen
}

/// Phase exponents of one n = 3 generator entry: the entry equals
/// omega^omega_pow q1^q1_pow q2^q2_pow / sqrt(3).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QutritMonomial {
    pub omega_pow: i8,
    pub q1_pow: i8,
    pub q2_pow: i8,
}

impl QutritMonomial {
    /// Numeric value of the entry for given angles and omega branch.
    pub fn eval(&self, phi1: f64, phi2: f64, omega: Complex64) -> Complex64 {
        let q1 = Complex64::cis(phi1);
        let q2 = Complex64::cis(phi2);
        omega.powi(self.omega_pow as i32)
            * q1.powi(self.q1_pow as i32)
            * q2.powi(self.q2_pow as i32)
            / Complex64::new(3f64.sqrt(), 0.0)
    }
}

/// Row-phase exponent table (omega, q1, q2) for the three n = 3 families,
/// keyed by the general family index 1..=3.
const TL3_ROW_EXPONENTS: [[(i8, i8, i8); 3]; 3] = [
    // index 1 (offset 0): phases 1, (omega q1)^-1, q1^-1
    [(0, 0, 0), (-1, -1, 0), (0, -1, 0)],
    // index 2 (offset 1): phases 1, omega^-1, (omega q2)^-1
    [(0, 0, 0), (-1, 0, 0), (-1, 0, -1)],
    // index 3 (offset 2): phases 1, q2/q1, 1
    [(0, 0, 0), (0, -1, 1), (0, 0, 0)],
];

fn tl3_row_phase(exp: (i8, i8, i8), q1: Complex64, q2: Complex64, omega: Complex64) -> Complex64 {
    omega.powi(exp.0 as i32) * q1.powi(exp.1 as i32) * q2.powi(exp.2 as i32)
}

/// The n = 3 family for given angles and an explicit omega value.
///
/// The ratio assignments only close the limiting sums when omega is a
/// primitive cube root of unity; other values make [`combined_generator`]
/// reject the family, which is exactly what the broken-parameter probes
/// rely on.
pub fn tl3_family(
    phi1: f64,
    phi2: f64,
    omega: Complex64,
) -> Result<Vec<(PhasePermMatrix, PhasePermMatrix)>> {
    let q1 = Complex64::cis(phi1);
    let q2 = Complex64::cis(phi2);
    let mut family = Vec::with_capacity(3);
    for (idx, rows) in TL3_ROW_EXPONENTS.iter().enumerate() {
        let phases: Vec<Complex64> = rows
            .iter()
            .map(|&exp| tl3_row_phase(exp, q1, q2, omega))
            .collect();
        let a = build_phase_perm(3, idx + 1, &phases)?;
        let b = a.entrywise_inverse();
        family.push((a, b));
    }
    Ok(family)
}

/// Cube root of unity selected by the sign branch: e^(i eps 2 pi / 3).
pub fn omega_root(epsilon: Sign) -> Complex64 {
    Complex64::cis(epsilon.value() * 2.0 * std::f64::consts::PI / 3.0)
}

/// The 9 x 9 qutrit generator with loop value sqrt(3) and 27 nonzero
/// entries, Hermitian for all real angles.
pub fn tl3_generator(phi1: f64, phi2: f64, epsilon: Sign) -> TLGenerator {
    let family =
        tl3_family(phi1, phi2, omega_root(epsilon)).expect("qutrit phases are unit modulus");
    let mut gen = combined_generator(&family)
        .expect("the qutrit family with a cube root of unity satisfies the limiting sums");
    gen.params = GeneratorParams::Qutrit {
        phi1,
        phi2,
        epsilon,
    };
    gen
}

/// Exponent table of the n = 3 generator: entry (row, col) of the matrix is
/// omega^s q1^p q2^r / sqrt(3) with (s, p, r) read from the table, `None`
/// marking structural zeros. The table is independent of the angle values
/// and of the omega branch.
pub fn tl3_monomials() -> [[Option<QutritMonomial>; 9]; 9] {
    let mut table: [[Option<QutritMonomial>; 9]; 9] = [[None; 9]; 9];
    for (idx, rows) in TL3_ROW_EXPONENTS.iter().enumerate() {
        let offset = idx; // family index idx+1 places row a at column (offset - a) mod 3
        let col_of = |a: usize| (offset + 3 - a % 3) % 3;
        for a in 0..3 {
            for c in 0..3 {
                let row = a * 3 + col_of(a);
                let col = c * 3 + col_of(c);
                table[row][col] = Some(QutritMonomial {
                    omega_pow: rows[a].0 - rows[c].0,
                    q1_pow: rows[a].1 - rows[c].1,
                    q2_pow: rows[a].2 - rows[c].2,
                });
            }
        }
    }
    table
}

/// The three maximally entangled states spanning the image of the n = 3
/// generator: U = sqrt(3) (|psi1><psi1| + |psi2><psi2| + |psi3><psi3|).
/// Each state is the normalized row-major flattening of one family member.
pub fn bell_basis_3(phi1: f64, phi2: f64, epsilon: Sign) -> [Vec<Complex64>; 3] {
    let family =
        tl3_family(phi1, phi2, omega_root(epsilon)).expect("qutrit phases are unit modulus");
    let root3 = 3f64.sqrt();
    let state_of = |p: &PhasePermMatrix| -> Vec<Complex64> {
        let mut amps = vec![czero(); 9];
        for (row, &z) in p.phases().iter().enumerate() {
            amps[row * 3 + p.column_of_row(row)] = z / root3;
        }
        amps
    };
    // Families ordered by descending offset: the anti-diagonal member first.
    [
        state_of(&family[2].0),
        state_of(&family[1].0),
        state_of(&family[0].0),
    ]
}

/// Residuals of the defining relations measured on an open chain.
#[derive(Debug, Clone)]
pub struct TLAVerdict {
    /// Max-entry norm of U^2 - d U.
    pub residual_idempotent: f64,
    /// Worst of ||U_i U_{i+1} U_i - U_i|| and ||U_{i+1} U_i U_{i+1} - U_{i+1}||.
    pub residual_braid_like: f64,
    /// Worst commutator norm over |i - j| >= 2; zero when strands < 4.
    pub residual_commute: f64,
    /// Tolerance the verdict was taken at.
    pub tol: f64,
    pub pass: bool,
}

/// Check the defining relations for `gen` embedded on `strands` sites.
///
/// Needs at least 3 strands for the neighbor relation; the distance-two
/// commutator is only measured from 4 strands up. The chain dimension
/// n^strands must stay within [`MAX_DIM`].
pub fn verify_tla(gen: &TLGenerator, strands: usize, tol: f64) -> Result<TLAVerdict> {
    if strands < 3 {
        return Err(Error::Parameter(format!(
            "need at least 3 strands for the neighbor relation, got {strands}"
        )));
    }
    let n = gen.n();
    let dim = n
        .checked_pow(strands as u32)
        .filter(|&d| d <= MAX_DIM)
        .ok_or(Error::SizeLimit {
            dim: usize::MAX,
            max: MAX_DIM,
        })?;
    let _ = dim;

    let residual_idempotent = gen.idempotency_residual();

    let sites: Vec<ComplexMatrix> = (1..strands)
        .map(|site| embed_site(gen.matrix(), site, strands, n))
        .collect::<Result<_>>()?;

    let mut residual_braid_like = 0.0f64;
    for i in 0..sites.len() - 1 {
        let (u, v) = (&sites[i], &sites[i + 1]);
        residual_braid_like = residual_braid_like
            .max(u.matmul(v).matmul(u).max_diff(u))
            .max(v.matmul(u).matmul(v).max_diff(v));
    }

    let mut residual_commute = 0.0f64;
    for i in 0..sites.len() {
        for j in (i + 2)..sites.len() {
            let forward = sites[i].matmul(&sites[j]);
            let backward = sites[j].matmul(&sites[i]);
            residual_commute = residual_commute.max(forward.max_diff(&backward));
        }
    }

    let pass =
        residual_idempotent < tol && residual_braid_like < tol && residual_commute < tol;
    Ok(TLAVerdict {
        residual_idempotent,
        residual_braid_like,
        residual_commute,
        tol,
        pass,
    })
}
