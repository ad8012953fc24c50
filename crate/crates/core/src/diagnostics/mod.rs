//! Post-estimation battery: Breusch-Godfrey serial correlation, White
//! heteroskedasticity, Ramsey RESET, Jarque-Bera normality, ARCH LM and the
//! CUSUM / CUSUM-of-squares stability paths.
//!
//! The auxiliary-regression tests report the small-sample F form; the
//! `n R^2`-type chi-square form is carried alongside for every test.

mod cusum;
pub mod durbin;

pub use cusum::{cusum_paths, CusumPaths, PathKind};

use serde::{Deserialize, Serialize};

use crate::dist;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::regress::{ols_fit, RegressionFit};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
    pub df1: usize,
    /// Denominator degrees of freedom of the F form, 0 for chi-square tests.
    pub df2: usize,
    /// Lagrange-multiplier form `n (RSS_r - RSS_u) / RSS_r` and its
    /// chi-square p-value.
    pub lm_statistic: f64,
    pub lm_p_value: f64,
}

impl TestResult {
    pub fn rejects(&self, level: f64) -> bool {
        self.p_value < level
    }

    /// (statistic, p) in the requested form.
    pub fn in_form(&self, form: StatForm) -> (f64, f64) {
        match form {
            StatForm::F => (self.statistic, self.p_value),
            StatForm::ChiSquare => (self.lm_statistic, self.lm_p_value),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatForm {
    #[default]
    F,
    ChiSquare,
}

/// Restricted regression of `y` on `base`, unrestricted on `base | extra`.
fn nested_test(base: &Matrix, extra: &[Vec<f64>], y: &[f64]) -> Result<TestResult> {
    let restricted = ols_fit(base, y)?;
    let unrestricted = ols_fit(&base.hstack(extra), y)?;
    let df1 = extra.len();
    let df2 = unrestricted.df_resid();
    let drop = (restricted.rss - unrestricted.rss).max(0.0);
    let statistic = if unrestricted.rss > 0.0 {
        (drop / df1 as f64) / (unrestricted.rss / df2 as f64)
    } else {
        f64::INFINITY
    };
    let lm_statistic = if restricted.rss > 0.0 {
        y.len() as f64 * drop / restricted.rss
    } else {
        0.0
    };
    Ok(TestResult {
        statistic,
        p_value: dist::f_sf(statistic, df1 as f64, df2 as f64),
        df1,
        df2,
        lm_statistic,
        lm_p_value: dist::chi2_sf(lm_statistic, df1 as f64),
    })
}

fn constant_column(m: &Matrix) -> Matrix {
    Matrix::from_row_major(m.nrows(), 1, vec![1.0; m.nrows()])
}

fn is_constant(col: &[f64]) -> bool {
    col.iter().all(|v| *v == col[0])
}

/// Breusch-Godfrey test: residuals on the original regressors plus `lags`
/// lagged residuals, zero-padded at the start.
pub fn breusch_godfrey(fit: &RegressionFit, design: &Matrix, lags: usize) -> Result<TestResult> {
    if lags == 0 {
        return Err(Error::InvalidLagCount);
    }
    let e = &fit.residuals;
    let n = e.len();
    if n <= design.ncols() + lags {
        return Err(Error::TooFewObservations {
            n,
            k: design.ncols() + lags,
        });
    }
    let lagged: Vec<Vec<f64>> = (1..=lags)
        .map(|l| (0..n).map(|t| if t >= l { e[t - l] } else { 0.0 }).collect())
        .collect();
    nested_test(design, &lagged, e)
}

/// White test without cross products: squared residuals on a constant, the
/// non-constant regressors and their squares.
pub fn white_test(fit: &RegressionFit, design: &Matrix) -> Result<TestResult> {
    let mut extra = Vec::new();
    let mut squares = Vec::new();
    for j in 0..design.ncols() {
        let col = design.column(j);
        if is_constant(&col) {
            continue;
        }
        let sq: Vec<f64> = col.iter().map(|v| v * v).collect();
        extra.push(col);
        if !is_constant(&sq) {
            squares.push(sq);
        }
    }
    if extra.is_empty() {
        return Err(Error::NoRegressorsToTest);
    }
    extra.extend(squares);
    let e2: Vec<f64> = fit.residuals.iter().map(|r| r * r).collect();
    nested_test(&constant_column(design), &extra, &e2)
}

/// Ramsey RESET: adds powers of the fitted values to the design.
pub fn ramsey_reset(fit: &RegressionFit, design: &Matrix, powers: &[u32]) -> Result<TestResult> {
    if powers.is_empty() {
        return Err(Error::InvalidArgument("RESET needs at least one power".into()));
    }
    if let Some(p) = powers.iter().find(|&&p| p < 2) {
        return Err(Error::InvalidArgument(format!("RESET power {p} must be at least 2")));
    }
    let y: Vec<f64> = fit.fitted.iter().zip(&fit.residuals).map(|(f, e)| f + e).collect();
    let extra: Vec<Vec<f64>> = powers
        .iter()
        .map(|&p| fit.fitted.iter().map(|f| f.powi(p as i32)).collect())
        .collect();
    nested_test(design, &extra, &y)
}

/// Jarque-Bera `n (S^2/6 + (K-3)^2/24)` with moment-based skewness and
/// kurtosis, chi-square(2) p-value.
pub fn jarque_bera(residuals: &[f64]) -> Result<TestResult> {
    let n = residuals.len();
    if n < 8 {
        return Err(Error::SeriesTooShort { needed: 7, got: n });
    }
    let nf = n as f64;
    let mean = residuals.iter().sum::<f64>() / nf;
    let moment = |k: i32| residuals.iter().map(|r| (r - mean).powi(k)).sum::<f64>() / nf;
    let m2 = moment(2);
    if m2 == 0.0 {
        return Err(Error::InvalidArgument("residuals have zero variance".into()));
    }
    let skew = moment(3) / m2.powf(1.5);
    let kurt = moment(4) / (m2 * m2);
    let statistic = nf * (skew * skew / 6.0 + (kurt - 3.0).powi(2) / 24.0);
    let p_value = dist::chi2_sf(statistic, 2.0);
    Ok(TestResult {
        statistic,
        p_value,
        df1: 2,
        df2: 0,
        lm_statistic: statistic,
        lm_p_value: p_value,
    })
}

/// ARCH LM: squared residuals on a constant and `order` of their own lags.
pub fn arch_lm(residuals: &[f64], order: usize) -> Result<TestResult> {
    if order == 0 {
        return Err(Error::InvalidLagCount);
    }
    let n = residuals.len();
    if n <= order + 2 {
        return Err(Error::SeriesTooShort {
            needed: order + 2,
            got: n,
        });
    }
    let e2: Vec<f64> = residuals.iter().map(|r| r * r).collect();
    let y = e2[order..].to_vec();
    let lags: Vec<Vec<f64>> = (1..=order)
        .map(|l| (order..n).map(|t| e2[t - l]).collect())
        .collect();
    let base = Matrix::from_row_major(y.len(), 1, vec![1.0; y.len()]);
    nested_test(&base, &lags, &y)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsConfig {
    pub lm_lags: usize,
    pub reset_powers: Vec<u32>,
    pub arch_order: usize,
    pub level: f64,
    pub form: StatForm,
}

impl Default for DiagnosticsConfig {
    fn default() -> Self {
        Self {
            lm_lags: 2,
            reset_powers: vec![2],
            arch_order: 1,
            level: 0.05,
            form: StatForm::F,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsReport {
    pub lm: TestResult,
    pub white: TestResult,
    pub reset: TestResult,
    pub jarque_bera: TestResult,
    pub arch: TestResult,
    pub paths: CusumPaths,
}

impl DiagnosticsReport {
    /// Names of the tests rejecting at `level`, in table order.
    pub fn rejections(&self, level: f64, form: StatForm) -> Vec<&'static str> {
        let mut out: Vec<&'static str> = [
            ("LM", &self.lm),
            ("White", &self.white),
            ("Ramsey", &self.reset),
            ("JB", &self.jarque_bera),
            ("ARCH", &self.arch),
        ]
        .into_iter()
        .filter(|(_, t)| t.in_form(form).1 < level)
        .map(|(n, _)| n)
        .collect();
        if !self.paths.cusum_stable {
            out.push("CUSUM");
        }
        if !self.paths.cusumsq_stable {
            out.push("CUSUMSQ");
        }
        out
    }
}

/// Runs the whole battery on one regression.
pub fn run_diagnostics(
    fit: &RegressionFit,
    design: &Matrix,
    response: &[f64],
    cfg: &DiagnosticsConfig,
) -> Result<DiagnosticsReport> {
    Ok(DiagnosticsReport {
        lm: breusch_godfrey(fit, design, cfg.lm_lags)?,
        white: white_test(fit, design)?,
        reset: ramsey_reset(fit, design, &cfg.reset_powers)?,
        jarque_bera: jarque_bera(&fit.residuals)?,
        arch: arch_lm(&fit.residuals, cfg.arch_order)?,
        paths: cusum_paths(design, response, cfg.level)?,
    })
}
