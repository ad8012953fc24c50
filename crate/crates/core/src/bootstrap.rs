//! Residual bootstrap for the three UECM cointegration statistics and the
//! verdict rules built on them.
//!
//! Pseudo-data are generated under the joint null `mu1 = mu2 = 0`: a pure
//! differences regression for `dy` and a marginal autoregression of order q
//! for `dx`. Each replication rebuilds the levels recursively from the first
//! actual observations, refits the UECM with the same lag orders and stores
//! the overall F, t-dependent and F-independent statistics.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ardl::{fit_uecm, ArdlSpec, UecmFit};
use crate::error::{Error, Result};
use crate::regress::{ols_fit, wald_f, LinearRestriction, RegressionFit};
use crate::series::{LagColumn, LaggedDesign, Source};

/// Share of failed draws above which a bootstrap run is abandoned.
pub const MAX_FAILURE_SHARE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resampling {
    /// y- and x-equation residuals drawn independently.
    #[default]
    Independent,
    /// Residual pairs drawn from the same date.
    Paired,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BootstrapConfig {
    pub replications: usize,
    pub level: f64,
    pub seed: u64,
    pub resampling: Resampling,
}

impl BootstrapConfig {
    pub fn new(replications: usize, level: f64, seed: u64) -> Result<Self> {
        let cfg = Self {
            replications,
            level,
            seed,
            resampling: Resampling::Independent,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications < 100 {
            return Err(Error::InvalidConfig(format!(
                "bootstrap replications must be at least 100, got {}",
                self.replications
            )));
        }
        if !(self.level > 0.0 && self.level < 0.5) {
            return Err(Error::InvalidConfig(format!(
                "significance level must lie in (0, 0.5), got {}",
                self.level
            )));
        }
        Ok(())
    }
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        Self {
            replications: 2000,
            level: 0.05,
            seed: 0,
            resampling: Resampling::Independent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestStatistics {
    pub overall_f: f64,
    pub t_dep: f64,
    pub f_indep: f64,
}

/// The three statistics of one UECM estimate.
pub fn uecm_statistics(uecm: &UecmFit) -> Result<TestStatistics> {
    let k = uecm.fit.coefficients.len();
    let (iy, ix) = (uecm.layout.level_y, uecm.layout.level_x);
    Ok(TestStatistics {
        overall_f: wald_f(&uecm.fit, &LinearRestriction::zeros(k, &[iy, ix])?)?,
        t_dep: uecm.fit.t_statistic(iy),
        f_indep: wald_f(&uecm.fit, &LinearRestriction::zeros(k, &[ix])?)?,
    })
}

/// Restricted model pair used to simulate under the null.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NullModel {
    pub spec: ArdlSpec,
    /// `dy_t` on constant, `dy_{t-1..t-p+1}`, `dx_{t..t-q+1}`.
    pub restricted: RegressionFit,
    /// `dx_t` on constant, `dx_{t-1..t-q}`.
    pub marginal: RegressionFit,
    /// Centered residuals of the restricted regression.
    pub y_residuals: Vec<f64>,
    /// Centered residuals of the marginal regression.
    pub x_residuals: Vec<f64>,
    pub restricted_start: usize,
    pub marginal_start: usize,
}

impl NullModel {
    /// Actual observations that seed each pseudo-series.
    pub fn initial_len(&self) -> usize {
        self.spec.p.max(self.spec.q + 1)
    }

    /// Rebuilds `(y*, x*)` of length `len` from the seeds and the given
    /// innovation sequences (indexed from the first simulated date).
    pub fn simulate(&self, y: &[f64], x: &[f64], e: &[f64], v: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let n = y.len();
        let m0 = self.initial_len();
        let (p, q) = (self.spec.p, self.spec.q);
        let rb = &self.restricted.coefficients;
        let mb = &self.marginal.coefficients;
        let mut ys = y[..m0].to_vec();
        let mut xs = x[..m0].to_vec();
        ys.reserve(n - m0);
        xs.reserve(n - m0);
        for t in m0..n {
            let dx_lag = |xs: &[f64], i: usize| xs[t - i] - xs[t - i - 1];
            let mut dx = mb[0] + v[t - m0];
            for i in 1..=q {
                dx += mb[i] * dx_lag(&xs, i);
            }
            xs.push(xs[t - 1] + dx);
            let mut dy = rb[0] + e[t - m0];
            for i in 1..p {
                dy += rb[i] * (ys[t - i] - ys[t - i - 1]);
            }
            for j in 0..q {
                let d = xs[t - j] - xs[t - j - 1];
                dy += rb[p + j] * d;
            }
            ys.push(ys[t - 1] + dy);
        }
        (ys, xs)
    }
}

fn centered(v: &[f64]) -> Vec<f64> {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    v.iter().map(|r| r - mean).collect()
}

/// Fits the restricted `dy` regression and the marginal `dx` autoregression.
pub fn null_dgp(y: &[f64], x: &[f64], spec: &ArdlSpec) -> Result<NullModel> {
    let mut cols: Vec<LagColumn> = (1..spec.p).map(|i| LagColumn::delta(Source::Dependent, i)).collect();
    cols.extend((0..spec.q).map(|j| LagColumn::delta(Source::Independent, j)));
    let restricted_design = LaggedDesign::new(true, true, cols).with_start(spec.min_start());
    let r = restricted_design.realize(y, x)?;
    let restricted = ols_fit(&r.x, &r.y)?;

    let mcols: Vec<LagColumn> = (1..=spec.q).map(|i| LagColumn::delta(Source::Dependent, i)).collect();
    let marginal_design = LaggedDesign::new(true, true, mcols);
    let m = marginal_design.realize(x, x)?;
    let marginal = ols_fit(&m.x, &m.y)?;

    Ok(NullModel {
        spec: spec.clone(),
        y_residuals: centered(&restricted.residuals),
        x_residuals: centered(&marginal.residuals),
        restricted,
        marginal,
        restricted_start: r.start,
        marginal_start: m.start,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalTriple {
    pub overall_f: f64,
    pub t_dep: f64,
    pub f_indep: f64,
}

/// Upper-tail nearest-rank quantile: the `ceil((1 - level) B)`-th order
/// statistic.
pub fn upper_quantile(values: &[f64], level: f64) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v[nearest_rank(1.0 - level, v.len())]
}

/// Lower-tail nearest-rank quantile: the `ceil(level B)`-th order statistic.
pub fn lower_quantile(values: &[f64], level: f64) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v[nearest_rank(level, v.len())]
}

/// Zero-based index of the nearest-rank `prob` quantile in a sorted vector.
pub fn nearest_rank(prob: f64, len: usize) -> usize {
    let rank = (prob * len as f64 - 1e-9).ceil() as usize;
    rank.clamp(1, len) - 1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapCriticalValues {
    pub replications: usize,
    pub level: f64,
    pub critical: CriticalTriple,
    /// Statistics of every replication, in replication order.
    pub overall_f: Vec<f64>,
    pub t_dep: Vec<f64>,
    pub f_indep: Vec<f64>,
    /// Draws that failed and were redrawn.
    pub failures: usize,
}

impl BootstrapCriticalValues {
    /// Critical values at another significance level from the same draws.
    pub fn at(&self, level: f64) -> CriticalTriple {
        CriticalTriple {
            overall_f: upper_quantile(&self.overall_f, level),
            t_dep: lower_quantile(&self.t_dep, level),
            f_indep: upper_quantile(&self.f_indep, level),
        }
    }
}

fn replication_rng(seed: u64, b: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(b as u64);
    rng
}

fn draw_innovations(null: &NullModel, rng: &mut ChaCha8Rng, len: usize, mode: Resampling) -> (Vec<f64>, Vec<f64>) {
    let (ey, ex) = (&null.y_residuals, &null.x_residuals);
    match mode {
        Resampling::Independent => {
            let e = (0..len).map(|_| ey[rng.random_range(0..ey.len())]).collect();
            let v = (0..len).map(|_| ex[rng.random_range(0..ex.len())]).collect();
            (e, v)
        }
        Resampling::Paired => {
            // pair rows that share a date; both pools end at the last observation
            let common = ey.len().min(ex.len());
            let (oy, ox) = (ey.len() - common, ex.len() - common);
            let mut e = Vec::with_capacity(len);
            let mut v = Vec::with_capacity(len);
            for _ in 0..len {
                let j = rng.random_range(0..common);
                e.push(ey[oy + j]);
                v.push(ex[ox + j]);
            }
            (e, v)
        }
    }
}

/// Bootstrap distribution of the three statistics under the joint null.
///
/// Replication `b` draws from its own ChaCha stream `(seed, b)`, so results
/// do not depend on the worker count. A failed refit is redrawn from the same
/// stream; if failures exceed 5% of `B` the run aborts.
pub fn bootstrap_critical_values(
    y: &[f64],
    x: &[f64],
    spec: &ArdlSpec,
    cfg: &BootstrapConfig,
) -> Result<BootstrapCriticalValues> {
    cfg.validate()?;
    let null = null_dgp(y, x, spec)?;
    let len = y.len() - null.initial_len();
    let budget = (MAX_FAILURE_SHARE * cfg.replications as f64).floor() as usize;
    let draws: Vec<(TestStatistics, usize)> = (0..cfg.replications)
        .into_par_iter()
        .map(|b| {
            let mut rng = replication_rng(cfg.seed, b);
            let mut failed = 0;
            loop {
                let (e, v) = draw_innovations(&null, &mut rng, len, cfg.resampling);
                let (ys, xs) = null.simulate(y, x, &e, &v);
                match fit_uecm(&ys, &xs, spec).and_then(|f| uecm_statistics(&f)) {
                    Ok(s) if s.overall_f.is_finite() && s.t_dep.is_finite() && s.f_indep.is_finite() => {
                        return Ok((s, failed))
                    }
                    _ => {
                        failed += 1;
                        if failed > budget {
                            return Err(Error::BootstrapFailure {
                                failed,
                                replications: cfg.replications,
                            });
                        }
                    }
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let failures: usize = draws.iter().map(|d| d.1).sum();
    if failures > budget {
        return Err(Error::BootstrapFailure {
            failed: failures,
            replications: cfg.replications,
        });
    }
    let overall_f: Vec<f64> = draws.iter().map(|d| d.0.overall_f).collect();
    let t_dep: Vec<f64> = draws.iter().map(|d| d.0.t_dep).collect();
    let f_indep: Vec<f64> = draws.iter().map(|d| d.0.f_indep).collect();
    let critical = CriticalTriple {
        overall_f: upper_quantile(&overall_f, cfg.level),
        t_dep: lower_quantile(&t_dep, cfg.level),
        f_indep: upper_quantile(&f_indep, cfg.level),
    };
    Ok(BootstrapCriticalValues {
        replications: cfg.replications,
        level: cfg.level,
        critical,
        overall_f,
        t_dep,
        f_indep,
        failures,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Cointegrated,
    /// Overall F and t-dependent reject, the lagged level of x is insignificant.
    DegenerateCase1,
    /// Overall F rejects, t-dependent does not.
    DegenerateCase2,
    NoCointegration,
}

impl Classification {
    pub fn is_cointegrated(&self) -> bool {
        matches!(self, Classification::Cointegrated)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Classification::Cointegrated => "cointegrated",
            Classification::DegenerateCase1 => "degenerate case 1",
            Classification::DegenerateCase2 => "degenerate case 2",
            Classification::NoCointegration => "no cointegration",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejections {
    pub overall_f: bool,
    pub t_dep: bool,
    pub f_indep: bool,
}

/// Maps rejection flags to a class. Total over all eight combinations.
pub fn classify(r: Rejections) -> Classification {
    match (r.overall_f, r.t_dep, r.f_indep) {
        (true, true, true) => Classification::Cointegrated,
        (true, true, false) => Classification::DegenerateCase1,
        (true, false, _) => Classification::DegenerateCase2,
        (false, _, _) => Classification::NoCointegration,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CointegrationVerdict {
    pub statistics: TestStatistics,
    pub critical: CriticalTriple,
    pub rejections: Rejections,
    pub classification: Classification,
    pub narrative: String,
}

/// F statistics reject above their critical values, the t statistic below.
pub fn decide(stats: TestStatistics, cvs: CriticalTriple) -> CointegrationVerdict {
    let rejections = Rejections {
        overall_f: stats.overall_f > cvs.overall_f,
        t_dep: stats.t_dep < cvs.t_dep,
        f_indep: stats.f_indep > cvs.f_indep,
    };
    let classification = classify(rejections);
    let narrative = match classification {
        Classification::Cointegrated => {
            "all three nulls rejected: cointegration between the series".to_string()
        }
        Classification::DegenerateCase1 => format!(
            "F-independent {:.3} does not exceed {:.3}: lagged level of the regressor is insignificant, no cointegration",
            stats.f_indep, cvs.f_indep
        ),
        Classification::DegenerateCase2 => format!(
            "t-dependent {:.3} is not below {:.3}: lagged level of the dependent variable is insignificant, no cointegration",
            stats.t_dep, cvs.t_dep
        ),
        Classification::NoCointegration => format!(
            "overall F {:.3} does not exceed {:.3}: no cointegration",
            stats.overall_f, cvs.overall_f
        ),
    };
    CointegrationVerdict {
        statistics: stats,
        critical: cvs,
        rejections,
        classification,
        narrative,
    }
}

/// Everything one bootstrap cointegration test produces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapOutcome {
    pub uecm: UecmFit,
    pub statistics: TestStatistics,
    pub bootstrap: BootstrapCriticalValues,
    pub verdict: CointegrationVerdict,
}

/// Fits the UECM, bootstraps its null distribution and decides.
pub fn bootstrap_test(y: &[f64], x: &[f64], spec: &ArdlSpec, cfg: &BootstrapConfig) -> Result<BootstrapOutcome> {
    let uecm = fit_uecm(y, x, spec)?;
    let statistics = uecm_statistics(&uecm)?;
    let bootstrap = bootstrap_critical_values(y, x, spec, cfg)?;
    let verdict = decide(statistics, bootstrap.critical);
    Ok(BootstrapOutcome {
        uecm,
        statistics,
        bootstrap,
        verdict,
    })
}
