//! Dense complex matrix kernel.
//!
//! Row-major `Vec<Complex64>` storage, sized for desk-scale verification:
//! everything in this crate lives in dimension <= 81 (four qutrit strands),
//! with a hard cap of [`MAX_DIM`] on any constructed dimension. Products,
//! Kronecker products, adjoints, partial transposition over a fixed
//! first-factor convention, and a cyclic Jacobi eigensolver for Hermitian
//! matrices are provided; nothing here is sparse, preconditioned or fast.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hard cap on any matrix dimension constructed by this crate.
///
/// Keeps chain embeddings (n = 3, 4 strands -> 81) comfortably in range
/// while refusing accidental exponential blowup.
pub const MAX_DIM: usize = 4096;

/// Default tolerance for the Hermitian eigensolver: off-diagonal Frobenius
/// mass target and Hermiticity gate.
pub const EIGEN_TOL: f64 = 1e-12;

/// Sweep cap for the cyclic Jacobi iteration. Quadratic convergence makes
/// this generous for 81 x 81 inputs.
const MAX_SWEEPS: usize = 100;

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build a matrix from row-major entries. Fails on a length mismatch or
    /// a non-finite entry.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries supplied for a {rows} x {cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Parameter(format!("non-finite matrix entry {bad}")));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Matrix product. Panics on an inner-dimension mismatch; all callers in
    /// this crate control their shapes.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "inner dimensions {} and {} differ",
            self.cols, rhs.rows
        );
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * z).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Max-entry norm: max |a_ij|.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max-entry norm of M - M'.
    pub fn hermiticity_residual(&self) -> f64 {
        assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Kronecker product `self (x) rhs`. Errors when a product dimension
    /// exceeds [`MAX_DIM`].
    pub fn kron(&self, rhs: &Self) -> Result<Self> {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let dim = rows.max(cols);
        if dim > MAX_DIM {
            return Err(Error::SizeLimit { dim, max: MAX_DIM });
        }
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out[(i * rhs.rows + k, j * rhs.cols + l)] = a * rhs[(k, l)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Column `j` as a vector of amplitudes.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Gauss-Jordan inverse with partial pivoting. Errors when a pivot
    /// collapses below `1e-12 * max_norm` (singular input).
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "cannot invert a {} x {} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let scale = self.max_norm();
        if scale == 0.0 {
            return Err(Error::Singular("zero matrix".into()));
        }
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let (pivot_row, pivot_mag) = (col..n)
                .map(|r| (r, a[(r, col)].norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .expect("non-empty pivot search");
            if pivot_mag < 1e-12 * scale {
                return Err(Error::Singular(format!(
                    "pivot {pivot_mag:.3e} in column {col} (matrix scale {scale:.3e})"
                )));
            }
            if pivot_row != col {
                for j in 0..n {
                    a.data.swap(pivot_row * n + j, col * n + j);
                    inv.data.swap(pivot_row * n + j, col * n + j);
                }
            }
            let pivot = a[(col, col)];
            for j in 0..n {
                a[(col, j)] /= pivot;
                inv[(col, j)] /= pivot;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[(r, col)];
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let aj = a[(col, j)];
                    let ij = inv[(col, j)];
                    a[(r, j)] -= factor * aj;
                    inv[(r, j)] -= factor * ij;
                }
            }
        }
        Ok(inv)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Real eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// Max-entry norm of M v - lambda v over the returned pairs.
    pub residual: f64,
    /// Eigenvectors as matrix columns, ordered like `eigenvalues`.
    pub eigenvectors: Option<ComplexMatrix>,
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations.
///
/// `tol` is both the Hermiticity gate (max |M - M'| must stay below it)
/// and the convergence target for the off-diagonal Frobenius mass.
pub fn hermitian_eigenvalues(m: &ComplexMatrix, tol: f64) -> Result<EigenResult> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "eigensolver needs a square matrix, got {} x {}",
            m.rows(),
            m.cols()
        )));
    }
    let herm_residual = m.hermiticity_residual();
    if herm_residual >= tol {
        return Err(Error::NotHermitian {
            residual: herm_residual,
            tol,
        });
    }
    let n = m.rows();

    // Work on the Hermitian part; the gate bounds the perturbation by tol.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);

    let off_mass = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += 2.0 * a[(i, j)].norm_sqr();
            }
        }
        s.sqrt()
    };

    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS {
        if off_mass(&a) < tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r < 1e-150 {
                    // Mass far below any convergence target; drop it.
                    a[(p, q)] = Complex64::new(0.0, 0.0);
                    a[(q, p)] = Complex64::new(0.0, 0.0);
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sigma = t * c;
                let phase = apq / r;
                let s = phase * sigma;

                // Rows/columns outside the pivot pair.
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    let new_kp = akp * c - akq * s.conj();
                    let new_kq = akp * s + akq * c;
                    a[(k, p)] = new_kp;
                    a[(p, k)] = new_kp.conj();
                    a[(k, q)] = new_kq;
                    a[(q, k)] = new_kq.conj();
                }
                // Pivot block.
                let d = 2.0 * c * sigma * r;
                a[(p, p)] = Complex64::new(c * c * app + sigma * sigma * aqq - d, 0.0);
                a[(q, q)] = Complex64::new(sigma * sigma * app + c * c * aqq + d, 0.0);
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                // Accumulate the rotation into the eigenvector basis.
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * s.conj();
                    v[(k, q)] = vkp * s + vkq * c;
                }
            }
        }
        sweeps += 1;
    }
    if !converged && off_mass(&a) >= tol {
        return Err(Error::NoConvergence {
            sweeps,
            off_diagonal: off_mass(&a),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);

    // Residual against the original input.
    let mut residual = 0.0f64;
    for (j, &lambda) in eigenvalues.iter().enumerate() {
        for i in 0..n {
            let mut mv = Complex64::new(0.0, 0.0);
            for k in 0..n {
                mv += m[(i, k)] * vectors[(k, j)];
            }
            residual = residual.max((mv - vectors[(i, j)] * lambda).norm());
        }
    }

    Ok(EigenResult {
        eigenvalues,
        residual,
        eigenvectors: Some(vectors),
    })
}

/// Trace norm (sum of |eigenvalue|) of a Hermitian matrix.
pub fn trace_norm_hermitian(m: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eigenvalues(m, EIGEN_TOL)?;
    Ok(eig.eigenvalues.iter().map(|l| l.abs()).sum())
}

/// Partial transpose over the first tensor factor of an n (x) n bipartite
/// operator: out[(a,b),(c,d)] = rho[(c,b),(a,d)] with composite index
/// (x,y) -> x*n + y.
pub fn partial_transpose(rho: &ComplexMatrix, n: usize) -> Result<ComplexMatrix> {
    let dim = n * n;
    if rho.rows() != dim || rho.cols() != dim {
        return Err(Error::Shape(format!(
            "partial transpose for local dimension {n} needs a {dim} x {dim} matrix, got {} x {}",
            rho.rows(),
            rho.cols()
        )));
    }
    Ok(ComplexMatrix::from_fn(dim, dim, |row, col| {
        let (a, b) = (row / n, row % n);
        let (c, d) = (col / n, col % n);
        rho[(c * n + b, a * n + d)]
    }))
}

/// Embed a two-site operator at `site` (1-based) of an open chain with
/// `strands` sites of local dimension `n`:
/// I^(site-1) (x) op (x) I^(strands-site-1).
pub fn embed_site(
    op: &ComplexMatrix,
    site: usize,
    strands: usize,
    n: usize,
) -> Result<ComplexMatrix> {
    let dim = n * n;
    if op.rows() != dim || op.cols() != dim {
        return Err(Error::Shape(format!(
            "two-site operator must be {dim} x {dim}, got {} x {}",
            op.rows(),
            op.cols()
        )));
    }
    if site == 0 || site > strands.saturating_sub(1) {
        return Err(Error::Index(format!(
            "site {site} not in 1..={} for {strands} strands",
            strands.saturating_sub(1)
        )));
    }
    let total = n
        .checked_pow(strands as u32)
        .filter(|&d| d <= MAX_DIM)
        .ok_or(Error::SizeLimit {
            dim: usize::MAX,
            max: MAX_DIM,
        })?;
    let left = ComplexMatrix::identity(n.pow((site - 1) as u32));
    let right = ComplexMatrix::identity(n.pow((strands - site - 1) as u32));
    let embedded = left.kron(op)?.kron(&right)?;
    debug_assert_eq!(embedded.rows(), total);
    Ok(embedded)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag(entries: &[Complex64]) -> ComplexMatrix {
        let n = entries.len();
        let mut m = ComplexMatrix::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// Deterministic pseudo-random matrix for property loops.
    fn random_matrix(n: usize, seed: u64) -> ComplexMatrix {
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        ComplexMatrix::from_fn(n, n, |_, _| c(next(), next()))
    }

    fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
        let g = random_matrix(n, seed);
        g.add(&g.dagger()).scale(c(0.5, 0.0))
    }

    #[test]
    fn kron_identity_cases() {
        let i2 = ComplexMatrix::identity(2);
        let i4 = ComplexMatrix::identity(4);
        assert_eq!(i2.kron(&i2).unwrap(), i4);

        let a = random_matrix(3, 7);
        let unit = ComplexMatrix::identity(1);
        assert_eq!(a.kron(&unit).unwrap(), a);
        assert_eq!(unit.kron(&a).unwrap(), a);
    }

    #[test]
    fn kron_of_sign_diagonals() {
        let z = diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        let zz = z.kron(&z).unwrap();
        let expect = diag(&[c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)]);
        assert!(zz.max_diff(&expect) == 0.0);
    }

    #[test]
    fn kron_rejects_oversized_products() {
        let a = ComplexMatrix::identity(128);
        let b = ComplexMatrix::identity(64);
        match a.kron(&b) {
            Err(Error::SizeLimit { dim, max }) => {
                assert_eq!(dim, 8192);
                assert_eq!(max, MAX_DIM);
            }
            other => panic!("expected size error, got {other:?}"),
        }
    }

    #[test]
    fn dagger_basics() {
        let i3 = ComplexMatrix::identity(3);
        assert_eq!(i3.dagger(), i3);

        let m = ComplexMatrix::new(1, 1, vec![c(0.0, 1.0)]).unwrap();
        assert_eq!(m.dagger()[(0, 0)], c(0.0, -1.0));

        let a = random_matrix(4, 3);
        assert!(a.dagger().dagger().max_diff(&a) == 0.0);
    }

    #[test]
    fn non_finite_entries_rejected() {
        let err = ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]);
        assert!(matches!(err, Err(Error::Parameter(_))));
    }

    #[test]
    fn eigenvalues_of_diagonal_input() {
        let m = diag(&[c(3.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]);
        let eig = hermitian_eigenvalues(&m, EIGEN_TOL).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 2.0, 3.0]);
        assert!(eig.residual < 1e-12);
    }

    #[test]
    fn eigenvalues_of_bit_flip() {
        let m = ComplexMatrix::new(
            2,
            2,
            vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        let eig = hermitian_eigenvalues(&m, EIGEN_TOL).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigensolver_rejects_non_square_and_non_hermitian() {
        let rect = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            hermitian_eigenvalues(&rect, EIGEN_TOL),
            Err(Error::Shape(_))
        ));

        let skew = ComplexMatrix::new(
            2,
            2,
            vec![c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        assert!(matches!(
            hermitian_eigenvalues(&skew, EIGEN_TOL),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn partial_transpose_of_maximally_entangled_projector() {
        // |Phi> = (|00> + |11> + |22>)/sqrt(3); rho^(T_A) must be SWAP/3.
        let n = 3;
        let mut rho = ComplexMatrix::zeros(9, 9);
        for a in 0..n {
            for b in 0..n {
                rho[(a * n + a, b * n + b)] = c(1.0 / 3.0, 0.0);
            }
        }
        let pt = partial_transpose(&rho, n).unwrap();
        let swap = ComplexMatrix::from_fn(9, 9, |row, col| {
            let (a, b) = (row / n, row % n);
            let (cc, d) = (col / n, col % n);
            if a == d && b == cc {
                c(1.0 / 3.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        assert!(pt.max_diff(&swap) == 0.0);

        // Spectrum: -1/3 three times, +1/3 six times; trace norm 3.
        let eig = hermitian_eigenvalues(&pt, EIGEN_TOL).unwrap();
        let negatives = eig.eigenvalues.iter().filter(|&&l| l < 0.0).count();
        assert_eq!(negatives, 3);
        for l in &eig.eigenvalues {
            assert!((l.abs() - 1.0 / 3.0).abs() < 1e-12, "eigenvalue {l}");
        }
        let trace: f64 = eig.eigenvalues.iter().sum();
        assert!((trace - 1.0).abs() < 1e-12);
        assert!((trace_norm_hermitian(&pt).unwrap() - 3.0).abs() < 1e-11);
    }

    #[test]
    fn partial_transpose_identity_and_involution() {
        let i9 = ComplexMatrix::identity(9);
        assert_eq!(partial_transpose(&i9, 3).unwrap(), i9);

        let rho = random_hermitian(9, 11);
        let twice = partial_transpose(&partial_transpose(&rho, 3).unwrap(), 3).unwrap();
        assert!(twice.max_diff(&rho) == 0.0);
    }

    #[test]
    fn partial_transpose_preserves_trace_and_hermiticity() {
        let rho = random_hermitian(9, 23);
        let pt = partial_transpose(&rho, 3).unwrap();
        assert!((pt.trace() - rho.trace()).norm() < 1e-14);
        assert!(pt.hermiticity_residual() < 1e-14);
    }

    #[test]
    fn partial_transpose_needs_square_of_n() {
        let m = ComplexMatrix::zeros(8, 8);
        assert!(matches!(partial_transpose(&m, 3), Err(Error::Shape(_))));
    }

    #[test]
    fn trace_norm_simple_cases() {
        assert!((trace_norm_hermitian(&ComplexMatrix::identity(3)).unwrap() - 3.0).abs() < 1e-12);
        let m = diag(&[c(1.0, 0.0), c(-2.0, 0.0)]);
        assert!((trace_norm_hermitian(&m).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn embed_site_edges() {
        let op = random_matrix(9, 5);
        assert!(embed_site(&op, 1, 2, 3).unwrap().max_diff(&op) == 0.0);

        let i9 = ComplexMatrix::identity(9);
        assert_eq!(embed_site(&i9, 1, 3, 3).unwrap(), ComplexMatrix::identity(27));

        // X (x) X placed at site 2 of three qubit strands.
        let x = ComplexMatrix::new(
            2,
            2,
            vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        let xx = x.kron(&x).unwrap();
        let embedded = embed_site(&xx, 2, 3, 2).unwrap();
        let direct = ComplexMatrix::identity(2).kron(&xx).unwrap();
        assert!(embedded.max_diff(&direct) == 0.0);

        assert!(matches!(
            embed_site(&xx, 3, 3, 2),
            Err(Error::Index(_))
        ));
        assert!(matches!(
            embed_site(&ComplexMatrix::identity(9), 1, 9, 3),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn inverse_round_trip_and_singular_detection() {
        let a = random_matrix(4, 19);
        let inv = a.inverse().unwrap();
        assert!(a.matmul(&inv).max_diff(&ComplexMatrix::identity(4)) < 1e-12);

        let singular = ComplexMatrix::zeros(3, 3);
        assert!(matches!(singular.inverse(), Err(Error::Singular(_))));
    }

    proptest! {
        #[test]
        fn kron_is_associative(seed_a in 0u64..1000, seed_b in 0u64..1000, seed_c in 0u64..1000) {
            let a = random_matrix(2, seed_a);
            let b = random_matrix(3, seed_b);
            let cm = random_matrix(2, seed_c);
            let left = a.kron(&b).unwrap().kron(&cm).unwrap();
            let right = a.kron(&b.kron(&cm).unwrap()).unwrap();
            prop_assert!(left.max_diff(&right) < 1e-14);
        }

        #[test]
        fn eigenvalue_sum_matches_trace(seed in 0u64..500, n in 2usize..8) {
            let m = random_hermitian(n, seed);
            let eig = hermitian_eigenvalues(&m, EIGEN_TOL).unwrap();
            let sum: f64 = eig.eigenvalues.iter().sum();
            prop_assert!((sum - m.trace().re).abs() < 1e-11);
            prop_assert!(eig.residual < 1e-11);
        }

        #[test]
        fn spectrum_invariant_under_permutation(seed in 0u64..200, shift in 1usize..5) {
            let n = 6;
            let m = random_hermitian(n, seed);
            // Cyclic permutation matrix P, conjugate M by it.
            let mut p = ComplexMatrix::zeros(n, n);
            for i in 0..n {
                p[(i, (i + shift) % n)] = Complex64::new(1.0, 0.0);
            }
            let conjugated = p.matmul(&m).matmul(&p.dagger());
            let e1 = hermitian_eigenvalues(&m, EIGEN_TOL).unwrap().eigenvalues;
            let e2 = hermitian_eigenvalues(&conjugated, EIGEN_TOL).unwrap().eigenvalues;
            for (a, b) in e1.iter().zip(&e2) {
                prop_assert!((a - b).abs() < 1e-11);
            }
        }

        #[test]
        fn distant_embeddings_commute(seed_u in 0u64..200, seed_v in 0u64..200) {
            let u = random_matrix(4, seed_u);
            let v = random_matrix(4, seed_v);
            let u1 = embed_site(&u, 1, 4, 2).unwrap();
            let v3 = embed_site(&v, 3, 4, 2).unwrap();
            let forward = u1.matmul(&v3);
            let backward = v3.matmul(&u1);
            prop_assert!(forward.max_diff(&backward) < 1e-13);
        }
    }
}
