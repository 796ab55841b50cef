//! Dense row-major matrices and the small linear-algebra kernel used by
//! the main computation path (products, symmetric eigenvalues via Jacobi
//! sweeps, elimination solves, numerical rank).
//!
//! Dimensions here are frame dimensions (single digits to low tens), so
//! the kernel optimizes for transparency and determinism, not blocking.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// Dense `rows × cols` matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Builds a matrix from row slices; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::LengthMismatch {
                    expected: ncols,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    /// Rank-one product `u vᵀ`.
    pub fn outer(u: &[f64], v: &[f64]) -> Self {
        let mut m = Matrix::zeros(u.len(), v.len());
        for (i, &ui) in u.iter().enumerate() {
            for (j, &vj) in v.iter().enumerate() {
                m.data[i * v.len() + j] = ui * vj;
            }
        }
        m
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Is this matrix square?
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry at `(i, j)`.
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    /// Overwrites the entry at `(i, j)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.cols + j] = value;
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Rows as owned vectors (for serialization).
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Transposed copy.
    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    /// Matrix product `self · rhs`. Panics on incompatible shapes; shape
    /// agreement is a programming contract, not runtime input.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.data[i * self.cols + k];
                if aik == 0.0 {
                    continue;
                }
                let out_row = i * rhs.cols;
                let rhs_row = k * rhs.cols;
                for j in 0..rhs.cols {
                    out.data[out_row + j] += aik * rhs.data[rhs_row + j];
                }
            }
        }
        out
    }

    /// Matrix-vector product `self · x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, x.len(), "matrix-vector shape mismatch");
        let mut y = vec![0.0; self.rows];
        for i in 0..self.rows {
            let row = self.row(i);
            let mut acc = 0.0;
            for (a, b) in row.iter().zip(x) {
                acc += a * b;
            }
            y[i] = acc;
        }
        y
    }

    /// Transposed matrix-vector product `selfᵀ · x`.
    pub fn apply_transpose(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.rows, x.len(), "matrix-vector shape mismatch");
        let mut y = vec![0.0; self.cols];
        for i in 0..self.rows {
            let xi = x[i];
            if xi == 0.0 {
                continue;
            }
            let row = self.row(i);
            for (out, a) in y.iter_mut().zip(row) {
                *out += xi * a;
            }
        }
        y
    }

    /// Elementwise sum.
    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Elementwise difference.
    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Adds `factor · rhs` into `self`.
    pub fn add_scaled(&mut self, rhs: &Matrix, factor: f64) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += factor * b;
        }
    }

    /// Scaled copy.
    pub fn scale(&self, factor: f64) -> Matrix {
        let data = self.data.iter().map(|a| a * factor).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// `self − I` for square matrices.
    pub fn minus_identity(&self) -> Matrix {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            m.data[i * self.cols + i] -= 1.0;
        }
        m
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, &x| acc.max(math::abs(x)))
    }
}

/// Eigenvalues and orthonormal eigenvectors of a symmetric matrix by
/// cyclic Jacobi sweeps. Returns `(eigenvalues, V)` with eigenvectors in
/// the columns of `V`; eigenvalues are unsorted.
///
/// Jacobi is chosen for the main path because it is simple, backward
/// stable, and essentially exact at these dimensions; the oracle module
/// cross-checks it with an unrelated bisection solver.
pub(crate) fn sym_eigen(m: &Matrix) -> (Vec<f64>, Matrix) {
    assert!(m.is_square(), "eigensolver needs a square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut v = Matrix::identity(n);
    if n <= 1 {
        return ((0..n).map(|i| a.at(i, i)).collect(), v);
    }

    let mut frob_sq = 0.0;
    for &x in &a.data {
        frob_sq += x * x;
    }
    let stop = math::sqrt(frob_sq) * 1e-15 + 1e-300;

    for _sweep in 0..64 {
        let mut off_sq = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                let x = a.at(i, j);
                off_sq += 2.0 * x * x;
            }
        }
        if math::sqrt(off_sq) <= stop {
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a.at(p, q);
                if math::abs(apq) <= 1e-300 {
                    a.set(p, q, 0.0);
                    a.set(q, p, 0.0);
                    continue;
                }
                let app = a.at(p, p);
                let aqq = a.at(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if math::abs(theta) > 1e150 {
                    // Avoid overflow in theta^2; the rotation is tiny.
                    1.0 / (2.0 * theta)
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (math::abs(theta) + math::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / math::sqrt(t * t + 1.0);
                let s = t * c;
                let tau = s / (1.0 + c);

                a.set(p, p, app - t * apq);
                a.set(q, q, aqq + t * apq);
                a.set(p, q, 0.0);
                a.set(q, p, 0.0);
                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = a.at(i, p);
                    let aiq = a.at(i, q);
                    a.set(i, p, aip - s * (aiq + tau * aip));
                    a.set(p, i, a.at(i, p));
                    a.set(i, q, aiq + s * (aip - tau * aiq));
                    a.set(q, i, a.at(i, q));
                }
                for i in 0..n {
                    let vip = v.at(i, p);
                    let viq = v.at(i, q);
                    v.set(i, p, vip - s * (viq + tau * vip));
                    v.set(i, q, viq + s * (vip - tau * viq));
                }
            }
        }
    }

    ((0..n).map(|i| a.at(i, i)).collect(), v)
}

/// Solves `a · X = rhs` by Gaussian elimination with partial pivoting.
pub(crate) fn solve(a: &Matrix, rhs: &Matrix) -> Result<Matrix> {
    assert!(a.is_square(), "solve needs a square system");
    assert_eq!(a.rows(), rhs.rows(), "solve shape mismatch");
    let n = a.rows();
    let k = rhs.cols();
    let mut work = a.clone();
    let mut sol = rhs.clone();
    let scale = work.max_abs().max(1e-300);

    for col in 0..n {
        let mut piv = col;
        let mut piv_val = math::abs(work.at(col, col));
        for r in (col + 1)..n {
            let v = math::abs(work.at(r, col));
            if v > piv_val {
                piv = r;
                piv_val = v;
            }
        }
        if piv_val <= scale * 1e-15 {
            return Err(Error::Singular);
        }
        if piv != col {
            for j in 0..n {
                let tmp = work.at(col, j);
                work.set(col, j, work.at(piv, j));
                work.set(piv, j, tmp);
            }
            for j in 0..k {
                let tmp = sol.at(col, j);
                sol.set(col, j, sol.at(piv, j));
                sol.set(piv, j, tmp);
            }
        }
        let d = work.at(col, col);
        for r in (col + 1)..n {
            let factor = work.at(r, col) / d;
            if factor == 0.0 {
                continue;
            }
            for j in col..n {
                let v = work.at(r, j) - factor * work.at(col, j);
                work.set(r, j, v);
            }
            for j in 0..k {
                let v = sol.at(r, j) - factor * sol.at(col, j);
                sol.set(r, j, v);
            }
        }
    }

    for col in (0..n).rev() {
        let d = work.at(col, col);
        for j in 0..k {
            let mut acc = sol.at(col, j);
            for c in (col + 1)..n {
                acc -= work.at(col, c) * sol.at(c, j);
            }
            sol.set(col, j, acc / d);
        }
    }
    Ok(sol)
}

/// Numerical rank by row-normalized Gaussian elimination.
///
/// Each nonzero row is first scaled to unit max-abs so that the pivot
/// threshold `rel_tol` is scale-free; span questions are invariant under
/// row scaling, which is exactly the use case.
pub(crate) fn rank(m: &Matrix, rel_tol: f64) -> usize {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for i in 0..m.rows() {
        let r = m.row(i);
        let mx = r.iter().fold(0.0f64, |acc, &x| acc.max(math::abs(x)));
        if mx > 0.0 {
            rows.push(r.iter().map(|&x| x / mx).collect());
        }
    }
    let nrows = rows.len();
    let ncols = m.cols();
    let mut rk = 0;
    let mut col = 0;
    while rk < nrows && col < ncols {
        let mut piv = rk;
        let mut piv_val = math::abs(rows[piv][col]);
        for r in (rk + 1)..nrows {
            let v = math::abs(rows[r][col]);
            if v > piv_val {
                piv = r;
                piv_val = v;
            }
        }
        if piv_val <= rel_tol {
            col += 1;
            continue;
        }
        rows.swap(rk, piv);
        for r in (rk + 1)..nrows {
            let factor = rows[r][col] / rows[rk][col];
            if factor != 0.0 {
                for j in col..ncols {
                    rows[r][j] -= factor * rows[rk][j];
                }
            }
        }
        rk += 1;
        col += 1;
    }
    rk
}
