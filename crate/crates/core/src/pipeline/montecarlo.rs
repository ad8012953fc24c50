use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::study::model_seed;
use crate::ardl::{select_lags, ArdlSpec};
use crate::bootstrap::{bootstrap_test, BootstrapConfig, Classification};
use crate::error::{Error, Result};
use crate::simulate::Dgp;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    /// Outer runs, each a fresh dataset.
    pub runs: usize,
    pub len: usize,
    pub bootstrap: BootstrapConfig,
    /// Fixed `(p, q)`; selected by SBC up to `max_lags` when `None`.
    pub lags: Option<(usize, usize)>,
    pub max_lags: (usize, usize),
}

impl MonteCarloConfig {
    pub fn new(runs: usize, len: usize, bootstrap: BootstrapConfig) -> Self {
        Self {
            runs,
            len,
            bootstrap,
            lags: None,
            max_lags: (4, 4),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizePowerTable {
    pub dgp: Dgp,
    pub runs: usize,
    pub len: usize,
    pub replications: usize,
    pub level: f64,
    pub overall_f_rate: f64,
    pub t_dep_rate: f64,
    pub f_indep_rate: f64,
    pub cointegrated_rate: f64,
    pub degenerate1_rate: f64,
    pub degenerate2_rate: f64,
    pub no_cointegration_rate: f64,
}

/// Overall F, t-dependent and F-independent rejections plus the class.
type RunOutcome = (bool, bool, bool, Classification);

/// Outer Monte Carlo: run `r` draws `(y, x)` from stream `r` of the seed and
/// bootstraps with its own derived seed, so the table does not depend on the
/// thread count.
pub fn run_size_power(dgp: Dgp, cfg: &MonteCarloConfig) -> Result<SizePowerTable> {
    if cfg.runs == 0 {
        return Err(Error::InvalidConfig("Monte Carlo needs at least one run".into()));
    }
    cfg.bootstrap.validate()?;
    let outcomes: Vec<RunOutcome> = (0..cfg.runs)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.bootstrap.seed);
            rng.set_stream(r as u64);
            let (y, x) = dgp.generate(&mut rng, cfg.len);
            let spec = match cfg.lags {
                Some((p, q)) => ArdlSpec::lags(p, q),
                None => select_lags(&y, &x, ("y", "x"), cfg.max_lags.0, cfg.max_lags.1)?.spec,
            };
            let bcfg = BootstrapConfig {
                seed: model_seed(cfg.bootstrap.seed, r + 1),
                ..cfg.bootstrap
            };
            let out = bootstrap_test(&y, &x, &spec, &bcfg)?;
            let rj = out.verdict.rejections;
            Ok((rj.overall_f, rj.t_dep, rj.f_indep, out.verdict.classification))
        })
        .collect::<Result<_>>()?;
    let rate = |f: &dyn Fn(&RunOutcome) -> bool| {
        outcomes.iter().filter(|o| f(o)).count() as f64 / cfg.runs as f64
    };
    Ok(SizePowerTable {
        dgp,
        runs: cfg.runs,
        len: cfg.len,
        replications: cfg.bootstrap.replications,
        level: cfg.bootstrap.level,
        overall_f_rate: rate(&|o| o.0),
        t_dep_rate: rate(&|o| o.1),
        f_indep_rate: rate(&|o| o.2),
        cointegrated_rate: rate(&|o| o.3 == Classification::Cointegrated),
        degenerate1_rate: rate(&|o| o.3 == Classification::DegenerateCase1),
        degenerate2_rate: rate(&|o| o.3 == Classification::DegenerateCase2),
        no_cointegration_rate: rate(&|o| o.3 == Classification::NoCointegration),
    })
}

impl SizePowerTable {
    pub fn to_text(&self) -> String {
        let pct = |v: f64| format!("{:6.1}%", 100.0 * v);
        let mut s = format!(
            "DGP {}  runs {}  T {}  B {}  level {}\n",
            self.dgp.name(),
            self.runs,
            self.len,
            self.replications,
            self.level
        );
        s += &format!("  overall F rejects     {}\n", pct(self.overall_f_rate));
        s += &format!("  t-dependent rejects   {}\n", pct(self.t_dep_rate));
        s += &format!("  F-independent rejects {}\n", pct(self.f_indep_rate));
        s += &format!("  cointegrated          {}\n", pct(self.cointegrated_rate));
        s += &format!("  degenerate case 1     {}\n", pct(self.degenerate1_rate));
        s += &format!("  degenerate case 2     {}\n", pct(self.degenerate2_rate));
        s += &format!("  no cointegration      {}\n", pct(self.no_cointegration_rate));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rates_partition_classes_and_are_reproducible() {
        let b = BootstrapConfig::new(100, 0.05, 9).unwrap();
        let mut cfg = MonteCarloConfig::new(6, 60, b);
        cfg.lags = Some((1, 1));
        let a = run_size_power(Dgp::Cointegrated, &cfg).unwrap();
        let total = a.cointegrated_rate + a.degenerate1_rate + a.degenerate2_rate + a.no_cointegration_rate;
        assert!((total - 1.0).abs() < 1e-12);
        assert_eq!(a, run_size_power(Dgp::Cointegrated, &cfg).unwrap());
    }
}
