//! Dense real linear-algebra kernels.
//!
//! Everything here works on small dense matrices (a few hundred rows at
//! most). The symmetric eigensolver is a cyclic Jacobi rotation sweep, the
//! SVD is one-sided (Hestenes) Jacobi, and the SPD factorization is a plain
//! Cholesky decomposition.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Maximum number of Jacobi sweeps before giving up.
pub const MAX_SWEEPS: usize = 100;

/// Off-diagonal Frobenius norm, relative to the input norm, below which the
/// symmetric eigensolver stops.
pub const EIGEN_TOLERANCE: f64 = 1e-12;

/// Singular values below `RANK_TOLERANCE * sigma_1` are treated as zero by
/// [`pseudo_inverse`].
pub const RANK_TOLERANCE: f64 = 1e-12;

/// Asymmetry tolerated by [`SymmetricMatrix::from_rows`], relative to the
/// largest absolute entry.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Dense row-major real matrix of arbitrary shape.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from a list of equally long rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::Empty);
        }
        let c = rows[0].len();
        if c == 0 {
            return Err(Error::Empty);
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    context: "matrix row length",
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        let c = columns.len();
        if c == 0 {
            return Err(Error::Empty);
        }
        let r = columns[0].len();
        if r == 0 {
            return Err(Error::Empty);
        }
        for col in columns {
            if col.len() != r {
                return Err(Error::DimensionMismatch {
                    context: "matrix column length",
                    expected: r,
                    found: col.len(),
                });
            }
        }
        Ok(Matrix::from_fn(r, c, |i, j| columns[j][i]))
    }

    pub fn column_vector(v: &[f64]) -> Self {
        Matrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_columns(&self) -> Vec<Vec<f64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Keeps the first `k` columns.
    pub fn leading_columns(&self, k: usize) -> Matrix {
        let k = k.min(self.cols);
        Matrix::from_fn(self.rows, k, |i, j| self[(i, j)])
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(l, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if self.cols != x.len() {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                context: "matrix difference",
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scaled(&self, s: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    /// Largest absolute entrywise difference; `f64::INFINITY` on shape mismatch.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        if self.shape() != other.shape() {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Dense real symmetric matrix. Only the lower triangle is stored, so
/// `get(i, j) == get(j, i)` holds exactly.
#[derive(Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    lower: Vec<f64>,
}

#[inline]
fn packed(i: usize, j: usize) -> usize {
    let (i, j) = if i >= j { (i, j) } else { (j, i) };
    i * (i + 1) / 2 + j
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        Ok(SymmetricMatrix {
            n,
            lower: vec![0.0; n * (n + 1) / 2],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = SymmetricMatrix::zeros(n)?;
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        Ok(m)
    }

    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        let mut m = SymmetricMatrix::zeros(diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        Ok(m)
    }

    /// Builds from the lower triangle: `f(i, j)` is called for `j <= i` only.
    pub fn from_lower_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut m = SymmetricMatrix::zeros(n)?;
        for i in 0..n {
            for j in 0..=i {
                m.lower[packed(i, j)] = f(i, j);
            }
        }
        Ok(m)
    }

    /// Builds from full rows, rejecting inputs whose upper and lower
    /// triangles disagree by more than [`SYMMETRY_TOLERANCE`] (relative).
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let full = Matrix::from_rows(rows)?;
        if !full.is_square() {
            return Err(Error::DimensionMismatch {
                context: "symmetric matrix columns",
                expected: full.rows(),
                found: full.cols(),
            });
        }
        let tol = SYMMETRY_TOLERANCE * full.max_abs();
        for i in 0..full.rows() {
            for j in 0..i {
                let (lower, upper) = (full[(i, j)], full[(j, i)]);
                if (lower - upper).abs() > tol || !lower.is_finite() || !upper.is_finite() {
                    return Err(Error::NotSymmetric {
                        row: j,
                        col: i,
                        upper,
                        lower,
                    });
                }
            }
        }
        SymmetricMatrix::from_lower_fn(full.rows(), |i, j| full[(i, j)])
    }

    /// Averages `a` with its transpose. Used for products that are
    /// symmetric in exact arithmetic but not after rounding.
    pub fn symmetrize(a: &Matrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch {
                context: "symmetrize",
                expected: a.rows(),
                found: a.cols(),
            });
        }
        SymmetricMatrix::from_lower_fn(a.rows(), |i, j| 0.5 * (a[(i, j)] + a[(j, i)]))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.lower[packed(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.lower[packed(i, j)] = value;
    }

    pub fn diag(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.to_matrix().to_rows()
    }

    pub fn add(&self, other: &SymmetricMatrix) -> Result<SymmetricMatrix> {
        self.check_same_dim(other, "symmetric sum")?;
        Ok(SymmetricMatrix {
            n: self.n,
            lower: self
                .lower
                .iter()
                .zip(&other.lower)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &SymmetricMatrix) -> Result<SymmetricMatrix> {
        self.check_same_dim(other, "symmetric difference")?;
        Ok(SymmetricMatrix {
            n: self.n,
            lower: self
                .lower
                .iter()
                .zip(&other.lower)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scaled(&self, s: f64) -> SymmetricMatrix {
        SymmetricMatrix {
            n: self.n,
            lower: self.lower.iter().map(|a| a * s).collect(),
        }
    }

    /// `self - alpha * I`.
    pub fn shifted(&self, alpha: f64) -> SymmetricMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            out.lower[packed(i, i)] -= alpha;
        }
        out
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                context: "symmetric matrix-vector product",
                expected: self.n,
                found: x.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum())
            .collect())
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        self.to_matrix().matmul(other)
    }

    /// `x^T A x`.
    pub fn quadratic_form(&self, x: &[f64]) -> Result<f64> {
        Ok(dot(x, &self.matvec(x)?))
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..=i {
                let a = self.get(i, j);
                s += if i == j { a * a } else { 2.0 * a * a };
            }
        }
        s.sqrt()
    }

    fn check_same_dim(&self, other: &SymmetricMatrix, context: &'static str) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                context,
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for SymmetricMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Symmetric{:?}", self.to_matrix())
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `a - s * b`.
pub fn sub_scaled(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - s * y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// Index of the entry with the largest magnitude. Entries within a relative
/// `1e-12` of the maximum count as ties, and ties go to the lowest index.
fn dominant_index(v: impl Iterator<Item = f64> + Clone) -> usize {
    let max = v.clone().fold(0.0_f64, |m, x| m.max(x.abs()));
    let cutoff = max * (1.0 - 1e-12);
    v.enumerate()
        .find(|(_, x)| x.abs() >= cutoff)
        .map(|(i, _)| i)
        .unwrap_or(0)
}

/// Flips the sign of `v` so that its dominant entry is positive.
pub fn normalize_sign(v: &mut [f64]) {
    let idx = dominant_index(v.iter().copied());
    if v.get(idx).is_some_and(|x| *x < 0.0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

fn normalize_column_sign(m: &mut Matrix, j: usize) {
    let idx = dominant_index((0..m.rows()).map(|i| m[(i, j)]));
    if m[(idx, j)] < 0.0 {
        for i in 0..m.rows() {
            m[(i, j)] = -m[(i, j)];
        }
    }
}

/// Eigen-decomposition of a symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, in the order of `values`.
    pub vectors: Matrix,
}

impl SpectrumResult {
    pub fn vector(&self, i: usize) -> Vec<f64> {
        self.vectors.column(i)
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }
}

/// Full eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Eigenvalues come back ascending. Each eigenvector is signed so that its
/// largest-magnitude component is positive (lowest index on ties).
pub fn sym_eigen(a: &SymmetricMatrix) -> Result<SpectrumResult> {
    let n = a.dim();
    let mut w = a.to_matrix();
    let mut v = Matrix::identity(n);
    let scale = a.frobenius_norm();

    let off_norm = |w: &Matrix| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..i {
                s += 2.0 * w[(i, j)] * w[(i, j)];
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&w);
        if off <= EIGEN_TOLERANCE * scale {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_diagonal: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = w[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (w[(q, q)] - w[(p, p)]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (wkp, wkq) = (w[(k, p)], w[(k, q)]);
                    w[(k, p)] = c * wkp - s * wkq;
                    w[(k, q)] = s * wkp + c * wkq;
                }
                for k in 0..n {
                    let (wpk, wqk) = (w[(p, k)], w[(q, k)]);
                    w[(p, k)] = c * wpk - s * wqk;
                    w[(q, k)] = s * wpk + c * wqk;
                }
                w[(p, q)] = 0.0;
                w[(q, p)] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[(i, i)].total_cmp(&w[(j, j)]));
    let values = order.iter().map(|&i| w[(i, i)]).collect();
    let mut vectors = Matrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    for j in 0..n {
        normalize_column_sign(&mut vectors, j);
    }
    Ok(SpectrumResult { values, vectors })
}

/// Largest absolute eigenvalue. For symmetric input this is also the
/// spectral (operator 2-) norm.
pub fn spectral_radius(a: &SymmetricMatrix) -> Result<f64> {
    let spec = sym_eigen(a)?;
    Ok(spec.values.iter().fold(0.0, |m, x| m.max(x.abs())))
}

/// Lower-triangular Cholesky factor `L` with `L L^T = A`.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerTriangular {
    n: usize,
    // packed rows, same layout as SymmetricMatrix
    data: Vec<f64>,
}

impl LowerTriangular {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if j > i {
            0.0
        } else {
            self.data[packed(i, j)]
        }
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    /// Solves `L y = b`.
    pub fn solve_lower(&self, b: &[f64]) -> Vec<f64> {
        let mut y = b.to_vec();
        for i in 0..self.n {
            let s = y[i] - (0..i).map(|j| self.get(i, j) * y[j]).sum::<f64>();
            y[i] = s / self.get(i, i);
        }
        y
    }

    /// Solves `L^T x = b`.
    pub fn solve_upper_transpose(&self, b: &[f64]) -> Vec<f64> {
        let mut x = b.to_vec();
        for i in (0..self.n).rev() {
            let s = x[i] - (i + 1..self.n).map(|j| self.get(j, i) * x[j]).sum::<f64>();
            x[i] = s / self.get(i, i);
        }
        x
    }

    /// Solves `A x = b` with `A = L L^T`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        self.solve_upper_transpose(&self.solve_lower(b))
    }

    /// `L L^T`.
    pub fn reconstruct(&self) -> SymmetricMatrix {
        SymmetricMatrix::from_lower_fn(self.n, |i, j| {
            (0..=j).map(|l| self.get(i, l) * self.get(j, l)).sum()
        })
        .expect("factor dimension is positive")
    }
}

/// Cholesky factorization of a symmetric positive definite matrix.
///
/// A pivot at or below `n * eps * max|diag(A)|` is rejected with
/// [`Error::NotPositiveDefinite`] carrying its (zero-based) index.
pub fn cholesky(a: &SymmetricMatrix) -> Result<LowerTriangular> {
    let n = a.dim();
    let diag_max = a.diag().iter().fold(0.0_f64, |m, d| m.max(d.abs()));
    let pivot_tol = n as f64 * f64::EPSILON * diag_max;
    let mut l = LowerTriangular {
        n,
        data: vec![0.0; n * (n + 1) / 2],
    };
    for j in 0..n {
        let mut d = a.get(j, j);
        for k in 0..j {
            d -= l.get(j, k) * l.get(j, k);
        }
        if !(d > pivot_tol) {
            return Err(Error::NotPositiveDefinite { pivot: j, value: d });
        }
        let ljj = d.sqrt();
        l.data[packed(j, j)] = ljj;
        for i in j + 1..n {
            let mut s = a.get(i, j);
            for k in 0..j {
                s -= l.get(i, k) * l.get(j, k);
            }
            l.data[packed(i, j)] = s / ljj;
        }
    }
    Ok(l)
}

/// Thin singular value decomposition `A = U diag(s) V^T`.
#[derive(Debug, Clone, PartialEq)]
pub struct Svd {
    /// `m x r` left singular vectors, `r = min(m, n)`. Columns belonging to
    /// zero singular values are zero.
    pub u: Matrix,
    /// Descending singular values.
    pub singular_values: Vec<f64>,
    /// `n x r` right singular vectors.
    pub v: Matrix,
}

/// One-sided Jacobi SVD.
pub fn svd(a: &Matrix) -> Result<Svd> {
    if a.rows() < a.cols() {
        let t = svd_tall(&a.transpose())?;
        return Ok(Svd {
            u: t.v,
            singular_values: t.singular_values,
            v: t.u,
        });
    }
    svd_tall(a)
}

fn svd_tall(a: &Matrix) -> Result<Svd> {
    let (m, n) = a.shape();
    let mut u = a.clone();
    let mut v = Matrix::identity(n);
    let tol = 1e-15;
    // columns below this squared norm are roundoff and never rotated
    let negligible = (m.max(n) as f64 * f64::EPSILON * a.frobenius_norm()).powi(2);

    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        let mut worst: f64 = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for i in 0..m {
                    alpha += u[(i, p)] * u[(i, p)];
                    beta += u[(i, q)] * u[(i, q)];
                    gamma += u[(i, p)] * u[(i, q)];
                }
                if alpha <= negligible || beta <= negligible {
                    continue;
                }
                let cosine = gamma.abs() / (alpha * beta).sqrt();
                worst = worst.max(cosine);
                if cosine <= tol {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let (up, uq) = (u[(i, p)], u[(i, q)]);
                    u[(i, p)] = c * up - s * uq;
                    u[(i, q)] = s * up + c * uq;
                }
                for i in 0..n {
                    let (vp, vq) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = c * vp - s * vq;
                    v[(i, q)] = s * vp + c * vq;
                }
            }
        }
        if !rotated {
            break;
        }
        sweeps += 1;
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_diagonal: worst,
            });
        }
    }

    let norms: Vec<f64> = (0..n).map(|j| norm(&u.column(j))).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let singular_values: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let u_sorted = Matrix::from_fn(m, n, |i, c| {
        let j = order[c];
        if norms[j] > 0.0 {
            u[(i, j)] / norms[j]
        } else {
            0.0
        }
    });
    let v_sorted = Matrix::from_fn(n, n, |i, c| v[(i, order[c])]);
    Ok(Svd {
        u: u_sorted,
        singular_values,
        v: v_sorted,
    })
}

/// Singular values of any real matrix, descending.
pub fn singular_values(a: &Matrix) -> Result<Vec<f64>> {
    Ok(svd(a)?.singular_values)
}

/// Largest singular value (the operator 2-norm).
pub fn sigma1(a: &Matrix) -> Result<f64> {
    Ok(singular_values(a)?.first().copied().unwrap_or(0.0))
}

/// Moore-Penrose pseudo-inverse. Singular values below
/// [`RANK_TOLERANCE`]` * sigma_1` are dropped, so rank-deficient input is
/// handled without error.
pub fn pseudo_inverse(a: &Matrix) -> Result<Matrix> {
    let Svd {
        u,
        singular_values,
        v,
    } = svd(a)?;
    let (m, n) = a.shape();
    let cutoff = RANK_TOLERANCE * singular_values.first().copied().unwrap_or(0.0);
    let mut out = Matrix::zeros(n, m);
    for (r, &s) in singular_values.iter().enumerate() {
        if s <= cutoff || s == 0.0 {
            continue;
        }
        let inv = 1.0 / s;
        for i in 0..n {
            let vi = v[(i, r)] * inv;
            if vi == 0.0 {
                continue;
            }
            for j in 0..m {
                out[(i, j)] += vi * u[(j, r)];
            }
        }
    }
    Ok(out)
}
