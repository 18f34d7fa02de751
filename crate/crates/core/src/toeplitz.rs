//! The Toeplitz family `T_k` built from the window `c_{m-n+1}, …, c_{m+n}`
//! and the column-deleted / row-inserted variants used by the vanishing
//! coefficient tests.
//!
//! Row and column indices are 0-based throughout, except [`delete_column`],
//! which takes a 1-based column number.

use std::fmt;
use std::ops::Mul;

use crate::error::{PadeError, Result};
use crate::series::{Complex, PowerSeries};

const ZERO: Complex = Complex::new(0.0, 0.0);

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// # Panics
    /// If `data.len() != rows * cols`.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Self { rows, cols, data }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(r, c, |i, j| Complex::new(rows[i][j], 0.0))
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

    pub fn as_slice(&self) -> &[Complex] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn mul_vec(&self, v: &[Complex]) -> Vec<Complex> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Complex;
    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|k| self[(i, k)] * rhs[(k, j)]).sum()
        })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|c| format!("{c:.6}")).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Numerator / denominator degree bounds `(m, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PadeOrder {
    pub m: usize,
    pub n: usize,
}

impl PadeOrder {
    pub fn new(m: usize, n: usize) -> Self {
        Self { m, n }
    }

    /// Number of series coefficients `c_0 … c_{m+n}` an approximant consumes.
    pub fn coefficients_needed(&self) -> usize {
        self.m + self.n + 1
    }
}

impl fmt::Display for PadeOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

/// `T_k` for the window of `order`: entry `(i, j) = c_{k+i-j}`, shape
/// `(m+n-k+1) × (k-m+n)`, valid for `m-n+1 <= k <= m+n+1`.
///
/// `T_{m+1}` is the `n × (n+1)` matrix of the classical denominator system,
/// `T_m` the `(n+1) × n` matrix whose rank fixes the essential indices.
pub fn build_tk(f: &PowerSeries, order: PadeOrder, k: i64) -> Result<Matrix> {
    let (m, n) = (order.m as i64, order.n as i64);
    let (lo, hi) = (m - n + 1, m + n + 1);
    if k < lo || k > hi {
        return Err(PadeError::IndexOutOfFamily { k, lo, hi });
    }
    f.require(order.coefficients_needed())?;
    let rows = (m + n - k + 1) as usize;
    let cols = (k - m + n) as usize;
    Ok(Matrix::from_fn(rows, cols, |i, j| {
        f.coeff(k + i as i64 - j as i64)
    }))
}

/// `T^{(k)}`: the matrix with its `k`-th column (1-based) removed.
pub fn delete_column(t: &Matrix, k: usize) -> Result<Matrix> {
    if k == 0 || k > t.cols {
        return Err(PadeError::IndexOutOfRange {
            index: k,
            len: t.cols,
        });
    }
    let skip = k - 1;
    Ok(Matrix::from_fn(t.rows, t.cols - 1, |i, j| {
        t[(i, if j < skip { j } else { j + 1 })]
    }))
}

/// `T^{[k]}`: the row `(c_k, c_{k-1}, …, c_{k-κ})` prepended to `t`, which
/// must have `κ + 1` columns.
pub fn insert_row(t: &Matrix, f: &PowerSeries, k: usize, kappa: usize) -> Result<Matrix> {
    if t.cols != kappa + 1 {
        return Err(PadeError::ShapeMismatch {
            expected: kappa + 1,
            found: t.cols,
        });
    }
    f.require(k + 1)?;
    Ok(Matrix::from_fn(t.rows + 1, t.cols, |i, j| {
        if i == 0 {
            f.coeff(k as i64 - j as i64)
        } else {
            t[(i - 1, j)]
        }
    }))
}
