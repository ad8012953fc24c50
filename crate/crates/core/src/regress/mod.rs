//! Ordinary least squares and the inference every test statistic reduces to.
//!
//! Estimation goes through a Householder QR of the design; the coefficient
//! covariance is `sigma2 * R^{-1} R^{-T}` and never inverts `X'X` directly.
//! `sigma2` is `RSS / (n - k)` everywhere in the crate.

mod hac;
mod recursive;

pub use hac::{autocovariance, newey_west_lrv};
pub use recursive::recursive_residuals;

use serde::{Deserialize, Serialize};

use crate::dist;
use crate::error::{Error, Result};
use crate::linalg::{dot, solve_square, Matrix, Qr};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionFit {
    pub coefficients: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub residuals: Vec<f64>,
    pub fitted: Vec<f64>,
    pub rss: f64,
    pub sigma2: f64,
    pub nobs: usize,
    pub nregressors: usize,
    /// Gaussian log-likelihood at the ML variance `RSS / n`.
    pub log_likelihood: f64,
    pub covariance: Matrix,
}

impl RegressionFit {
    pub fn df_resid(&self) -> usize {
        self.nobs - self.nregressors
    }

    /// Schwarz criterion `-2 logL + k ln n`.
    pub fn sbc(&self) -> f64 {
        -2.0 * self.log_likelihood + self.nregressors as f64 * (self.nobs as f64).ln()
    }

    pub fn t_statistic(&self, index: usize) -> f64 {
        t_statistic(self, index)
    }

    /// Two-sided p-value of coefficient `index`.
    pub fn p_value(&self, index: usize) -> f64 {
        dist::t_two_sided(self.t_statistic(index), self.df_resid() as f64)
    }

    /// Centered R-squared of the fit for response `y`.
    pub fn r_squared(&self, y: &[f64]) -> f64 {
        let mean = y.iter().sum::<f64>() / y.len() as f64;
        let tss: f64 = y.iter().map(|v| (v - mean).powi(2)).sum();
        if tss == 0.0 {
            0.0
        } else {
            1.0 - self.rss / tss
        }
    }
}

/// OLS of `y` on the columns of `x`.
pub fn ols_fit(x: &Matrix, y: &[f64]) -> Result<RegressionFit> {
    let (n, k) = (x.nrows(), x.ncols());
    if y.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "design has {n} rows, response {}",
            y.len()
        )));
    }
    if n <= k {
        return Err(Error::TooFewObservations { n, k });
    }
    let qr = Qr::new(x)?;
    let coefficients = qr.solve(y);
    let fitted = x.mul_vec(&coefficients);
    let residuals: Vec<f64> = y.iter().zip(&fitted).map(|(a, b)| a - b).collect();
    let rss = dot(&residuals, &residuals);
    let sigma2 = rss / (n - k) as f64;
    let mut covariance = qr.xtx_inverse();
    for i in 0..k {
        for j in 0..k {
            covariance[(i, j)] *= sigma2;
        }
    }
    let std_errors = (0..k).map(|i| covariance[(i, i)].max(0.0).sqrt()).collect();
    let nf = n as f64;
    let log_likelihood = if rss > 0.0 {
        -0.5 * nf * ((2.0 * std::f64::consts::PI).ln() + (rss / nf).ln() + 1.0)
    } else {
        f64::INFINITY
    };
    Ok(RegressionFit {
        coefficients,
        std_errors,
        residuals,
        fitted,
        rss,
        sigma2,
        nobs: n,
        nregressors: k,
        log_likelihood,
        covariance,
    })
}

/// `R beta = r` with `R` of size q x k.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearRestriction {
    pub matrix: Matrix,
    pub target: Vec<f64>,
}

impl LinearRestriction {
    pub fn new(matrix: Matrix, target: Vec<f64>) -> Result<Self> {
        if matrix.nrows() != target.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} restriction rows, {} targets",
                matrix.nrows(),
                target.len()
            )));
        }
        if matrix.nrows() == 0 || matrix.nrows() > matrix.ncols() {
            return Err(Error::InvalidArgument(format!(
                "restriction count {} must lie in 1..={}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self { matrix, target })
    }

    /// Joint null that the listed coefficients are all zero.
    pub fn zeros(k: usize, indices: &[usize]) -> Result<Self> {
        let mut m = Matrix::zeros(indices.len(), k);
        for (row, &j) in indices.iter().enumerate() {
            if j >= k {
                return Err(Error::InvalidArgument(format!("coefficient {j} out of range {k}")));
            }
            m[(row, j)] = 1.0;
        }
        Self::new(m, vec![0.0; indices.len()])
    }

    pub fn len(&self) -> usize {
        self.target.len()
    }

    pub fn is_empty(&self) -> bool {
        self.target.is_empty()
    }
}

/// Wald F statistic `(Rb - r)' [R V R']^{-1} (Rb - r) / q`.
pub fn wald_f(fit: &RegressionFit, restr: &LinearRestriction) -> Result<f64> {
    let k = fit.coefficients.len();
    if restr.matrix.ncols() != k {
        return Err(Error::DimensionMismatch(format!(
            "restriction has {} columns, fit has {k} coefficients",
            restr.matrix.ncols()
        )));
    }
    let q = restr.len();
    let discrepancy: Vec<f64> = restr
        .matrix
        .mul_vec(&fit.coefficients)
        .iter()
        .zip(&restr.target)
        .map(|(a, b)| a - b)
        .collect();
    let rv = restr.matrix.matmul(&fit.covariance);
    let middle = rv.matmul(&restr.matrix.transpose());
    let z = solve_square(&middle, &discrepancy).ok_or(Error::SingularRestrictionCovariance)?;
    Ok((dot(&discrepancy, &z) / q as f64).max(0.0))
}

pub fn t_statistic(fit: &RegressionFit, index: usize) -> f64 {
    let se = fit.std_errors[index];
    if fit.coefficients[index] == 0.0 {
        0.0
    } else {
        fit.coefficients[index] / se
    }
}

/// F test of adding `extra` columns to `x`, from the two residual sums of
/// squares. Returns (F, p, df1, df2).
pub fn nested_f(x: &Matrix, extra: &[Vec<f64>], y: &[f64]) -> Result<(f64, f64, usize, usize)> {
    let restricted = ols_fit(x, y)?;
    let unrestricted = ols_fit(&x.hstack(extra), y)?;
    let df1 = extra.len();
    let df2 = unrestricted.df_resid();
    let stat = if unrestricted.rss > 0.0 {
        (((restricted.rss - unrestricted.rss) / df1 as f64) / (unrestricted.rss / df2 as f64))
            .max(0.0)
    } else {
        f64::INFINITY
    };
    Ok((stat, dist::f_sf(stat, df1 as f64, df2 as f64), df1, df2))
}
