//! Augmented Dickey-Fuller and Phillips-Perron unit root tests, plus the
//! integration-order screen that keeps I(2) series out of the ARDL stage.

mod critical;

pub use critical::{mackinnon, CriticalValues};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::regress::{newey_west_lrv, ols_fit, RegressionFit};
use crate::series::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Deterministic {
    #[default]
    Constant,
    ConstantTrend,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitRootTest {
    Adf,
    Pp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejections {
    pub one: bool,
    pub five: bool,
    pub ten: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitRootResult {
    pub test: UnitRootTest,
    pub deterministic: Deterministic,
    /// Augmentation lags (ADF) or Bartlett bandwidth (PP).
    pub lag: usize,
    pub statistic: f64,
    pub nobs: usize,
    pub critical_values: CriticalValues,
    pub reject: Rejections,
}

impl UnitRootResult {
    fn new(
        test: UnitRootTest,
        deterministic: Deterministic,
        lag: usize,
        statistic: f64,
        nobs: usize,
    ) -> Self {
        let cv = mackinnon(deterministic, nobs);
        Self {
            test,
            deterministic,
            lag,
            statistic,
            nobs,
            critical_values: cv,
            reject: Rejections {
                one: statistic < cv.one,
                five: statistic < cv.five,
                ten: statistic < cv.ten,
            },
        }
    }

    /// Rejection of the unit root at one of 1%, 5%, 10%.
    pub fn rejects_at(&self, level: f64) -> bool {
        self.critical_values
            .at(level)
            .is_some_and(|cv| self.statistic < cv)
    }
}

/// Schwert rule `floor(12 (T/100)^{1/4})`.
pub fn schwert_max_lag(len: usize) -> usize {
    (12.0 * (len as f64 / 100.0).powf(0.25)).floor() as usize
}

/// Newey-West automatic rule `floor(4 (T/100)^{2/9})`.
pub fn newey_west_bandwidth(len: usize) -> usize {
    (4.0 * (len as f64 / 100.0).powf(2.0 / 9.0)).floor() as usize
}

/// DF regression of `dy_t` on `y_{t-1}`, deterministics and `lags` lagged
/// differences, over t = start..n. Column 0 is `y_{t-1}`.
fn df_regression(
    y: &[f64],
    det: Deterministic,
    lags: usize,
    start: usize,
) -> Result<(RegressionFit, usize)> {
    let mut rows = Vec::with_capacity(y.len() - start);
    let mut resp = Vec::with_capacity(y.len() - start);
    for t in start..y.len() {
        let mut row = vec![y[t - 1], 1.0];
        if det == Deterministic::ConstantTrend {
            row.push(t as f64);
        }
        for i in 1..=lags {
            row.push(y[t - i] - y[t - i - 1]);
        }
        rows.push(row);
        resp.push(y[t] - y[t - 1]);
    }
    let n = resp.len();
    Ok((ols_fit(&Matrix::from_rows(&rows), &resp)?, n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdfConfig {
    pub deterministic: Deterministic,
    /// Largest augmentation considered; Schwert rule when `None`.
    pub max_lag: Option<usize>,
}

impl Default for AdfConfig {
    fn default() -> Self {
        Self {
            deterministic: Deterministic::Constant,
            max_lag: None,
        }
    }
}

/// ADF test with the augmentation chosen by the Schwarz criterion over
/// 0..=max_lag on a common sample; the chosen model is then refitted on all
/// observations it can use.
pub fn adf_test(y: &[f64], cfg: AdfConfig) -> Result<UnitRootResult> {
    let max_lag = cfg.max_lag.unwrap_or_else(|| schwert_max_lag(y.len()));
    if y.len() < max_lag + 10 {
        return Err(Error::SeriesTooShort {
            needed: max_lag + 9,
            got: y.len(),
        });
    }
    let common = max_lag + 1;
    let mut best: Option<(usize, f64)> = None;
    for p in 0..=max_lag {
        let (fit, _) = df_regression(y, cfg.deterministic, p, common)?;
        let sbc = fit.sbc();
        if best.is_none_or(|(_, b)| sbc < b) {
            best = Some((p, sbc));
        }
    }
    let (p, _) = best.expect("lag grid is never empty");
    adf_fixed_lag(y, cfg.deterministic, p)
}

/// ADF statistic for a fixed augmentation order, using all usable rows.
pub fn adf_fixed_lag(y: &[f64], det: Deterministic, lags: usize) -> Result<UnitRootResult> {
    if y.len() < lags + 5 {
        return Err(Error::SeriesTooShort {
            needed: lags + 4,
            got: y.len(),
        });
    }
    let (fit, n) = df_regression(y, det, lags, lags + 1)?;
    Ok(UnitRootResult::new(
        UnitRootTest::Adf,
        det,
        lags,
        fit.t_statistic(0),
        n,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PpConfig {
    pub deterministic: Deterministic,
    /// Bartlett bandwidth; Newey-West automatic rule when `None`.
    pub bandwidth: Option<usize>,
}

impl Default for PpConfig {
    fn default() -> Self {
        Self {
            deterministic: Deterministic::Constant,
            bandwidth: None,
        }
    }
}

/// Phillips-Perron Z-tau: the DF t ratio corrected with the Bartlett
/// long-run variance of the DF residuals.
pub fn pp_test(y: &[f64], cfg: PpConfig) -> Result<UnitRootResult> {
    if y.len() < 20 {
        return Err(Error::SeriesTooShort {
            needed: 19,
            got: y.len(),
        });
    }
    let (fit, n) = df_regression(y, cfg.deterministic, 0, 1)?;
    let bandwidth = cfg.bandwidth.unwrap_or_else(|| newey_west_bandwidth(y.len()));
    let u = &fit.residuals;
    let gamma0 = newey_west_lrv(u, 0)?;
    let lrv = newey_west_lrv(u, bandwidth)?;
    if lrv <= 0.0 {
        return Err(Error::InvalidArgument(
            "long-run variance of DF residuals is zero".into(),
        ));
    }
    let t = fit.t_statistic(0);
    let se = fit.std_errors[0];
    let s = fit.sigma2.sqrt();
    let stat = (gamma0 / lrv).sqrt() * t - (lrv - gamma0) / (2.0 * lrv.sqrt()) * (n as f64 * se / s);
    Ok(UnitRootResult::new(
        UnitRootTest::Pp,
        cfg.deterministic,
        bandwidth,
        stat,
        n,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Order {
    I0,
    I1,
    I2Plus,
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Order::I0 => "I(0)",
            Order::I1 => "I(1)",
            Order::I2Plus => "I(2+)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegrationOrder {
    pub series: String,
    pub order: Order,
    pub level: UnitRootResult,
    /// Only computed when the level test fails to reject.
    pub difference: Option<UnitRootResult>,
}

/// ADF at level, then at first difference, both at 5%.
pub fn classify_integration(s: &TimeSeries, cfg: AdfConfig) -> Result<IntegrationOrder> {
    let level = adf_test(s.values(), cfg)?;
    if level.reject.five {
        return Ok(IntegrationOrder {
            series: s.name().to_string(),
            order: Order::I0,
            level,
            difference: None,
        });
    }
    let dy = crate::series::diff(s.values());
    let difference = adf_test(&dy, cfg)?;
    let order = if difference.reject.five {
        Order::I1
    } else {
        Order::I2Plus
    };
    Ok(IntegrationOrder {
        series: s.name().to_string(),
        order,
        level,
        difference: Some(difference),
    })
}
