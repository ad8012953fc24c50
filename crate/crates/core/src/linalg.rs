//! Small dense linear algebra: a row-major matrix, a Householder QR with a
//! rank check, and a pivoted solve for the little systems Wald tests need.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance on |r_jj| against the largest column norm.
pub const RANK_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data: Vec<f64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::from_row_major(rows.len(), cols, data)
    }

    pub fn from_columns(columns: &[Vec<f64>]) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// First `n` rows.
    pub fn head_rows(&self, n: usize) -> Matrix {
        Matrix::from_row_major(n, self.cols, self.data[..n * self.cols].to_vec())
    }

    /// Appends columns on the right.
    pub fn hstack(&self, extra: &[Vec<f64>]) -> Matrix {
        let cols = self.cols + extra.len();
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            for c in extra {
                data.push(c[i]);
            }
        }
        Matrix::from_row_major(self.rows, cols, data)
    }

    /// Keeps the listed columns, in order.
    pub fn select_columns(&self, keep: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * keep.len());
        for i in 0..self.rows {
            let r = self.row(i);
            data.extend(keep.iter().map(|&j| r[j]));
        }
        Matrix::from_row_major(self.rows, keep.len(), data)
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
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
        out
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Thin Householder QR of an n x k matrix (n >= k).
#[derive(Debug, Clone)]
pub struct Qr {
    /// Householder vectors below the diagonal, R on and above.
    packed: Matrix,
    betas: Vec<f64>,
}

impl Qr {
    pub fn new(a: &Matrix) -> Result<Self> {
        let (n, k) = (a.nrows(), a.ncols());
        if n < k {
            return Err(Error::TooFewObservations { n, k });
        }
        let max_norm = (0..k)
            .map(|j| (0..n).map(|i| a[(i, j)] * a[(i, j)]).sum::<f64>().sqrt())
            .fold(0.0, f64::max);
        let mut m = a.clone();
        let mut betas = vec![0.0; k];
        for j in 0..k {
            let norm = (j..n).map(|i| m[(i, j)] * m[(i, j)]).sum::<f64>().sqrt();
            let ratio = if max_norm > 0.0 { norm / max_norm } else { 0.0 };
            if ratio <= RANK_TOLERANCE {
                return Err(Error::RankDeficient { column: j, ratio });
            }
            let alpha = if m[(j, j)] > 0.0 { -norm } else { norm };
            let v0 = m[(j, j)] - alpha;
            // v = (v0, m[j+1..n, j]); beta = 2 / v'v, stored normalized so v0 = 1
            for i in j + 1..n {
                m[(i, j)] /= v0;
            }
            let vtv = 1.0 + (j + 1..n).map(|i| m[(i, j)] * m[(i, j)]).sum::<f64>();
            let beta = 2.0 / vtv;
            betas[j] = beta;
            m[(j, j)] = alpha;
            for c in j + 1..k {
                let mut s = m[(j, c)];
                for i in j + 1..n {
                    s += m[(i, j)] * m[(i, c)];
                }
                s *= beta;
                m[(j, c)] -= s;
                for i in j + 1..n {
                    let vi = m[(i, j)];
                    m[(i, c)] -= s * vi;
                }
            }
        }
        Ok(Self { packed: m, betas })
    }

    pub fn ncols(&self) -> usize {
        self.packed.ncols()
    }

    /// Applies Q' to `y` in place.
    pub fn apply_qt(&self, y: &mut [f64]) {
        let (n, k) = (self.packed.nrows(), self.packed.ncols());
        for j in 0..k {
            let mut s = y[j];
            for i in j + 1..n {
                s += self.packed[(i, j)] * y[i];
            }
            s *= self.betas[j];
            y[j] -= s;
            for i in j + 1..n {
                y[i] -= s * self.packed[(i, j)];
            }
        }
    }

    pub fn r(&self, i: usize, j: usize) -> f64 {
        if j >= i {
            self.packed[(i, j)]
        } else {
            0.0
        }
    }

    /// Solves R b = c for the leading k entries of `c`.
    pub fn solve_r(&self, c: &[f64]) -> Vec<f64> {
        let k = self.ncols();
        let mut b = vec![0.0; k];
        for i in (0..k).rev() {
            let mut s = c[i];
            for j in i + 1..k {
                s -= self.packed[(i, j)] * b[j];
            }
            b[i] = s / self.packed[(i, i)];
        }
        b
    }

    /// Solves R' z = c.
    pub fn solve_rt(&self, c: &[f64]) -> Vec<f64> {
        let k = self.ncols();
        let mut z = vec![0.0; k];
        for i in 0..k {
            let mut s = c[i];
            for j in 0..i {
                s -= self.packed[(j, i)] * z[j];
            }
            z[i] = s / self.packed[(i, i)];
        }
        z
    }

    /// Least-squares coefficients for response `y`.
    pub fn solve(&self, y: &[f64]) -> Vec<f64> {
        let mut qty = y.to_vec();
        self.apply_qt(&mut qty);
        self.solve_r(&qty)
    }

    /// (X'X)^{-1} = R^{-1} R^{-T}.
    pub fn xtx_inverse(&self) -> Matrix {
        let k = self.ncols();
        // columns of R^{-1}
        let mut rinv = Matrix::zeros(k, k);
        for j in 0..k {
            let mut e = vec![0.0; k];
            e[j] = 1.0;
            let col = self.solve_r(&e);
            for i in 0..k {
                rinv[(i, j)] = col[i];
            }
        }
        let mut out = Matrix::zeros(k, k);
        for i in 0..k {
            for j in 0..=i {
                let s = dot(rinv.row(i), rinv.row(j));
                out[(i, j)] = s;
                out[(j, i)] = s;
            }
        }
        out
    }
}

/// Solves A z = b with partial pivoting; `None` if A is numerically singular.
pub fn solve_square(a: &Matrix, b: &[f64]) -> Option<Vec<f64>> {
    let n = a.nrows();
    assert_eq!(a.ncols(), n);
    let scale = a.as_slice().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return None;
    }
    let mut m = a.clone();
    let mut z = b.to_vec();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[(i, c)].abs().total_cmp(&m[(j, c)].abs()))?;
        if m[(p, c)].abs() <= 1e-13 * scale {
            return None;
        }
        if p != c {
            for j in 0..n {
                let tmp = m[(c, j)];
                m[(c, j)] = m[(p, j)];
                m[(p, j)] = tmp;
            }
            z.swap(c, p);
        }
        for i in c + 1..n {
            let f = m[(i, c)] / m[(c, c)];
            if f == 0.0 {
                continue;
            }
            for j in c..n {
                m[(i, j)] -= f * m[(c, j)];
            }
            z[i] -= f * z[c];
        }
    }
    for i in (0..n).rev() {
        let mut s = z[i];
        for j in i + 1..n {
            s -= m[(i, j)] * z[j];
        }
        z[i] = s / m[(i, i)];
    }
    Some(z)
}
