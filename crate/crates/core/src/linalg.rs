//! Dense complex linear algebra for small matrices.
//!
//! Everything here is sized for the problems of this crate: unitaries of
//! dimension up to about five and bipartite density matrices up to 9x9 or
//! 16x16. Storage is row-major. Tensor products use the convention that the
//! first (A) factor's indices vary slowest.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::{Error, Result};

/// Default tolerance for [`is_unitary`] in the max-entry norm.
pub const DEFAULT_UNITARY_TOL: f64 = 1e-10;

/// Tolerance for the Hermiticity precondition of the eigensolvers.
pub const HERMITIAN_TOL: f64 = 1e-10;

const JACOBI_OFF_DIAGONAL_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// A dense rectangular complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("matrix must be nonempty, got {rows}x{cols}")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Argument(format!("non-finite entry at ({}, {})", pos / cols, pos % cols)));
        }
        Ok(Self { rows, cols, data: entries })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Builds a matrix from a slice of equally long rows.
    pub fn from_rows(rows: &[&[Complex64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("rows have different lengths".into()));
        }
        Self::new(rows.len(), cols, rows.iter().flat_map(|r| r.iter().copied()).collect())
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Result<Self> {
        let rows = columns.first().map_or(0, |c| c.len());
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Dimension("columns have different lengths".into()));
        }
        let cols = columns.len();
        let mut data = vec![ZERO; rows * cols];
        for (j, c) in columns.iter().enumerate() {
            for (i, &z) in c.iter().enumerate() {
                data[i * cols + j] = z;
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![ONE; n.max(1)])
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        let (rows, cols) = (rows.max(1), cols.max(1));
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len().max(1);
        let mut m = Self::zeros(n, n);
        for (i, &z) in diag.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn diagonal_real(diag: &[f64]) -> Self {
        let d: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::diagonal(&d)
    }

    /// The projector `|v><v|` onto a (not necessarily normalized) vector.
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len().max(1);
        let mut m = Self::zeros(n, n);
        for i in 0..v.len() {
            for j in 0..v.len() {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
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
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Complex64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} against {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum()).collect())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * factor).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-entry distance to another matrix of the same shape.
    pub fn max_abs_diff(&self, rhs: &Self) -> Result<f64> {
        self.check_same_shape(rhs)?;
        Ok(self.data.iter().zip(&rhs.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// Max-entry deviation from Hermiticity, `max |m_ij - conj(m_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0_f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    /// Whether every entry off the main diagonal is below `tol` in modulus.
    pub fn is_diagonal(&self, tol: f64) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].norm() <= tol))
    }

    /// The Gram matrix `M^dagger M`.
    pub fn gram(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.cols);
        for i in 0..self.cols {
            for j in i..self.cols {
                let z: Complex64 = (0..self.rows).map(|k| self[(k, i)].conj() * self[(k, j)]).sum();
                out[(i, j)] = z;
                out[(j, i)] = z.conj();
            }
        }
        out
    }

    /// The co-Gram matrix `M M^dagger`.
    pub fn co_gram(&self) -> Self {
        let mut out = Self::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for j in i..self.rows {
                let z: Complex64 = (0..self.cols).map(|k| self[(i, k)] * self[(j, k)].conj()).sum();
                out[(i, j)] = z;
                out[(j, i)] = z.conj();
            }
        }
        out
    }

    /// Extracts the submatrix selected by `index`.
    pub fn submatrix(&self, index: &SubmatrixIndex) -> Result<Self> {
        index.check_bounds(self.rows, self.cols)?;
        let data = index
            .row_set()
            .iter()
            .flat_map(|&i| index.col_set().iter().map(move |&j| (i, j)))
            .map(|(i, j)| self[(i, j)])
            .collect();
        Ok(Self { rows: index.row_set().len(), cols: index.col_set().len(), data })
    }

    fn check_same_shape(&self, rhs: &Self) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension(format!(
                "shape {}x{} differs from {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

/// Row and column selections defining a (not necessarily contiguous)
/// submatrix.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubmatrixIndex {
    row_set: Vec<usize>,
    col_set: Vec<usize>,
}

impl SubmatrixIndex {
    /// Both selections must be nonempty and strictly increasing.
    pub fn new(row_set: Vec<usize>, col_set: Vec<usize>) -> Result<Self> {
        for (name, set) in [("row_set", &row_set), ("col_set", &col_set)] {
            if set.is_empty() {
                return Err(Error::Argument(format!("{name} is empty")));
            }
            if set.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Argument(format!("{name} is not strictly increasing")));
            }
        }
        Ok(Self { row_set, col_set })
    }

    pub fn row_set(&self) -> &[usize] {
        &self.row_set
    }

    pub fn col_set(&self) -> &[usize] {
        &self.col_set
    }

    /// `(r, r')`, the submatrix shape.
    pub fn shape(&self) -> (usize, usize) {
        (self.row_set.len(), self.col_set.len())
    }

    fn check_bounds(&self, rows: usize, cols: usize) -> Result<()> {
        let row_ok = self.row_set.last().is_some_and(|&i| i < rows);
        let col_ok = self.col_set.last().is_some_and(|&j| j < cols);
        if !(row_ok && col_ok) {
            return Err(Error::Dimension(format!(
                "selection {:?} x {:?} exceeds a {rows}x{cols} matrix",
                self.row_set, self.col_set
            )));
        }
        Ok(())
    }
}

/// Largest singular value, from the largest eigenvalue of the smaller Gram
/// matrix.
pub fn spectral_norm(m: &ComplexMatrix) -> Result<f64> {
    if m.rows == 0 || m.cols == 0 {
        return Err(Error::Dimension("spectral norm of an empty matrix".into()));
    }
    // Vectors have a single singular value.
    if m.rows == 1 || m.cols == 1 {
        return Ok(m.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt());
    }
    let gram = if m.rows <= m.cols { m.co_gram() } else { m.gram() };
    let top = eig_hermitian(&gram)?[0];
    Ok(top.max(0.0).sqrt())
}

/// Whether `M^dagger M` is within `tol` of the identity in max-entry norm.
pub fn is_unitary(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("unitarity needs a square matrix, got {}x{}", m.rows, m.cols)));
    }
    let defect = m.gram().max_abs_diff(&ComplexMatrix::identity(m.rows))?;
    Ok(defect <= tol)
}

/// Every selection of `r` rows and `r'` columns of a `d x d` matrix with
/// `r + r' = k + 1`.
///
/// Ordered by row count, then row set, then column set (each set compared
/// lexicographically).
pub fn enumerate_submatrices(d: usize, k: usize) -> Result<Vec<SubmatrixIndex>> {
    if d == 0 || k == 0 || k > 2 * d - 1 {
        return Err(Error::Argument(format!("class k = {k} outside 1..={} for d = {d}", 2 * d.max(1) - 1)));
    }
    let mut out = Vec::new();
    let r_min = (k + 1).saturating_sub(d).max(1);
    for r in r_min..=d.min(k) {
        let r_cols = k + 1 - r;
        let col_sets = combinations(d, r_cols);
        for rows in combinations(d, r) {
            for cols in &col_sets {
                out.push(SubmatrixIndex { row_set: rows.clone(), col_set: cols.clone() });
            }
        }
    }
    Ok(out)
}

/// All `r`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r == 0 || r > n {
        return out;
    }
    let mut current: Vec<usize> = (0..r).collect();
    loop {
        out.push(current.clone());
        // Rightmost position that can still advance.
        let Some(pos) = (0..r).rev().find(|&i| current[i] < n - r + i) else {
            return out;
        };
        current[pos] += 1;
        for i in pos + 1..r {
            current[i] = current[i - 1] + 1;
        }
    }
}

/// Real eigenvalues of a Hermitian matrix in descending order.
///
/// Sizes up to three use closed-form roots of the characteristic polynomial;
/// larger matrices go through cyclic Jacobi rotations. A 3x3 matrix with a
/// nearly repeated eigenvalue also goes through Jacobi, since the
/// trigonometric roots lose half the digits there.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<Vec<f64>> {
    check_hermitian(m)?;
    let mut values = match m.rows {
        _ if m.is_diagonal(0.0) => (0..m.rows).map(|i| m[(i, i)].re).collect(),
        1 => vec![m[(0, 0)].re],
        2 => eig_closed_2(m),
        3 => eig_closed_3(m).unwrap_or_else(|| jacobi(m, false).0),
        _ => jacobi(m, false).0,
    };
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Eigenvalues (descending) and eigenvectors (as matching columns) of a
/// Hermitian matrix, by cyclic Jacobi rotations at every size.
pub fn eigh(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    check_hermitian(m)?;
    let (values, vectors) = jacobi(m, true);
    let n = m.rows;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let sorted_values = order.iter().map(|&i| values[i]).collect();
    let mut sorted_vectors = ComplexMatrix::zeros(n, n);
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..n {
            sorted_vectors[(i, new_j)] = vectors[(i, old_j)];
        }
    }
    Ok((sorted_values, sorted_vectors))
}

fn check_hermitian(m: &ComplexMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("{}x{} matrix is not square", m.rows, m.cols)));
    }
    let defect = m.hermitian_defect();
    if defect > HERMITIAN_TOL * m.max_abs().max(1.0) {
        return Err(Error::Argument(format!("matrix is not Hermitian (defect {defect:e})")));
    }
    Ok(())
}

fn eig_closed_2(m: &ComplexMatrix) -> Vec<f64> {
    let (a, d) = (m[(0, 0)].re, m[(1, 1)].re);
    let b = m[(0, 1)];
    let mean = 0.5 * (a + d);
    let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    vec![mean + radius, mean - radius]
}

// Trigonometric solution of the depressed characteristic cubic. `None` when
// two roots nearly coincide, where acos amplifies rounding to ~sqrt(eps).
fn eig_closed_3(m: &ComplexMatrix) -> Option<Vec<f64>> {
    let q = (m[(0, 0)].re + m[(1, 1)].re + m[(2, 2)].re) / 3.0;
    let b = |i: usize, j: usize| if i == j { Complex64::new(m[(i, i)].re - q, 0.0) } else { m[(i, j)] };
    let frob2: f64 = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| b(i, j).norm_sqr()).sum();
    let p = (frob2 / 6.0).sqrt();
    if p <= f64::EPSILON * q.abs().max(1e-300) {
        return Some(vec![q; 3]);
    }
    let det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) - b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0))
        + b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    let r = (det.re / (2.0 * p * p * p)).clamp(-1.0, 1.0);
    if 1.0 - r.abs() < 1e-6 {
        return None;
    }
    let phi = r.acos() / 3.0;
    let largest = q + 2.0 * p * phi.cos();
    let smallest = q + 2.0 * p * (phi + 2.0 * core::f64::consts::PI / 3.0).cos();
    Some(vec![largest, 3.0 * q - largest - smallest, smallest])
}

/// Cyclic complex Jacobi. Returns unsorted eigenvalues and, when requested,
/// the accumulated eigenvector matrix.
fn jacobi(m: &ComplexMatrix, want_vectors: bool) -> (Vec<f64>, ComplexMatrix) {
    let n = m.rows;
    let mut a = m.clone();
    // Symmetrize so the iteration sees an exactly Hermitian input.
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in i + 1..n {
            let z = 0.5 * (a[(i, j)] + a[(j, i)].conj());
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
    }
    let mut v = if want_vectors { ComplexMatrix::identity(n) } else { ComplexMatrix::zeros(1, 1) };
    let scale = a.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off < JACOBI_OFF_DIAGONAL_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r < 1e-300 {
                    continue;
                }
                let phase = apq / r;
                let (app, aqq) = (a[(p, p)].re, a[(q, q)].re);
                let theta = (aqq - app) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // U = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
                let u_pp = Complex64::new(c, 0.0);
                let u_pq = Complex64::new(s, 0.0);
                let u_qp = -s * phase.conj();
                let u_qq = c * phase.conj();
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * u_pp + akq * u_qp;
                    a[(k, q)] = akp * u_pq + akq * u_qq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                if want_vectors {
                    for k in 0..n {
                        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                        v[(k, p)] = vkp * u_pp + vkq * u_qp;
                        v[(k, q)] = vkp * u_pq + vkq * u_qq;
                    }
                }
            }
        }
    }
    ((0..n).map(|i| a[(i, i)].re).collect(), v)
}

/// Kronecker product `a (x) b`, with `a`'s indices major.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (rows, cols) = (a.rows * b.rows, a.cols * b.cols);
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ia in 0..a.rows {
        for ja in 0..a.cols {
            let x = a[(ia, ja)];
            for ib in 0..b.rows {
                for jb in 0..b.cols {
                    out[(ia * b.rows + ib, ja * b.cols + jb)] = x * b[(ib, jb)];
                }
            }
        }
    }
    out
}

/// Kronecker product of two vectors, `a`'s index major.
pub fn tensor_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect()
}

/// Which factor of a bipartite system to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Partial trace of an operator on `A (x) B` with `dims = (dim_a, dim_b)`.
pub fn partial_trace(rho: &ComplexMatrix, dims: (usize, usize), keep: Subsystem) -> Result<ComplexMatrix> {
    let (da, db) = dims;
    if da == 0 || db == 0 || !rho.is_square() || rho.rows != da * db {
        return Err(Error::Dimension(format!(
            "{}x{} operator does not act on a {da}x{db} bipartite space",
            rho.rows, rho.cols
        )));
    }
    check_hermitian(rho)?;
    let out = match keep {
        Subsystem::A => {
            let mut out = ComplexMatrix::zeros(da, da);
            for i in 0..da {
                for j in 0..da {
                    out[(i, j)] = (0..db).map(|k| rho[(i * db + k, j * db + k)]).sum();
                }
            }
            out
        }
        Subsystem::B => {
            let mut out = ComplexMatrix::zeros(db, db);
            for i in 0..db {
                for j in 0..db {
                    out[(i, j)] = (0..da).map(|k| rho[(k * db + i, k * db + j)]).sum();
                }
            }
            out
        }
    };
    Ok(out)
}
