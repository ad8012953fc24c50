use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::config::{ModelSpec, RunConfig};
use crate::ardl::{ecm_estimates, select_lags, EcmEstimates, LagCandidate};
use crate::bootstrap::{bootstrap_test, decide, BootstrapConfig, Classification, CriticalTriple, Rejections, TestStatistics};
use crate::diagnostics::{run_diagnostics, DiagnosticsReport};
use crate::error::{Error, Result};
use crate::ingest::{build_dataset, Dataset};
use crate::unitroot::{
    classify_integration, pp_test, AdfConfig, Order, PpConfig, UnitRootResult,
};

/// Bootstrap replications below which the report warns about precision.
pub const PRECISION_REPLICATIONS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputFingerprint {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub version: String,
    pub seed: u64,
    pub replications: usize,
    pub level: f64,
    pub window: String,
    pub count_mode: String,
    pub p_max: usize,
    pub q_max: usize,
    pub observations: usize,
    pub inputs: Vec<InputFingerprint>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitRootRow {
    pub series: String,
    pub adf_level: UnitRootResult,
    pub adf_difference: Option<UnitRootResult>,
    pub pp_level: UnitRootResult,
    pub pp_difference: Option<UnitRootResult>,
    pub order: Order,
    /// ADF and PP disagree on the level decision at 5%.
    pub disagreement: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CointegrationRow {
    pub model: ModelSpec,
    pub p: usize,
    pub q: usize,
    pub candidates: Vec<LagCandidate>,
    pub statistics: TestStatistics,
    /// Critical values at the run level.
    pub critical: CriticalTriple,
    pub critical_1pct: CriticalTriple,
    pub critical_5pct: CriticalTriple,
    pub rejections: Rejections,
    pub classification: Classification,
    pub narrative: String,
    pub bootstrap_seed: u64,
    pub failed_draws: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EcmRow {
    pub model: ModelSpec,
    pub estimates: EcmEstimates,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRow {
    pub model: ModelSpec,
    pub report: DiagnosticsReport,
    /// Tests rejecting at the run level.
    pub flagged: Vec<String>,
    pub cusum_csv: String,
    pub cusumsq_csv: String,
}

impl DiagnosticsRow {
    pub fn status(&self) -> &'static str {
        if self.flagged.is_empty() {
            "pass"
        } else {
            "warn"
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFailure {
    pub model: ModelSpec,
    pub error: String,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyReport {
    pub metadata: RunMetadata,
    pub unit_roots: Vec<UnitRootRow>,
    pub cointegration: Vec<CointegrationRow>,
    pub ecm: Vec<EcmRow>,
    pub diagnostics: Vec<DiagnosticsRow>,
    pub failures: Vec<ModelFailure>,
}

impl StudyReport {
    /// Models that ran to completion, by id.
    pub fn survivors(&self) -> Vec<usize> {
        self.cointegration.iter().map(|r| r.model.id).collect()
    }
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path)?;
    Ok(format!("{:x}", Sha256::digest(&bytes)))
}

/// SplitMix64 of `seed` and the model id, so models draw independent streams.
pub fn model_seed(seed: u64, id: usize) -> u64 {
    let mut z = seed ^ (id as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// ADF and PP at level and, where the level test does not reject at 5%, at
/// first difference. Fails on any series screened as I(2) or higher.
pub fn unit_root_table(dataset: &Dataset, cfg: &RunConfig) -> Result<Vec<UnitRootRow>> {
    let adf = AdfConfig {
        deterministic: cfg.deterministic,
        max_lag: None,
    };
    let pp = PpConfig {
        deterministic: cfg.deterministic,
        bandwidth: None,
    };
    let mut rows = Vec::new();
    for s in &dataset.series {
        let ctx = |e: Error| e.in_model(s.name());
        let io = classify_integration(s, adf).map_err(ctx)?;
        let pp_level = pp_test(s.values(), pp).map_err(ctx)?;
        let pp_difference = if pp_level.reject.five {
            None
        } else {
            Some(pp_test(&crate::series::diff(s.values()), pp).map_err(ctx)?)
        };
        rows.push(UnitRootRow {
            series: s.name().to_string(),
            disagreement: io.level.reject.five != pp_level.reject.five,
            adf_level: io.level,
            adf_difference: io.difference,
            pp_level,
            pp_difference,
            order: io.order,
        });
    }
    if let Some(r) = rows.iter().find(|r| r.order == Order::I2Plus) {
        return Err(Error::IntegratedOrderTwo {
            series: r.series.clone(),
        });
    }
    Ok(rows)
}

/// Everything computed for one model.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelResult {
    pub row: CointegrationRow,
    pub ecm: Option<EcmRow>,
    pub diagnostics: Option<DiagnosticsRow>,
}

/// Lag selection, bootstrap verdict and, for cointegrated models, ECM
/// estimates and diagnostics.
pub fn run_model(dataset: &Dataset, model: &ModelSpec, cfg: &RunConfig) -> Result<ModelResult> {
    let series = |name: &str| {
        dataset
            .get(name)
            .ok_or_else(|| Error::InvalidConfig(format!("series `{name}` is not in the dataset")))
    };
    let y = series(&model.dependent)?.values();
    let x = series(&model.independent)?.values();
    let selection = select_lags(y, x, (&model.dependent, &model.independent), cfg.p_max, cfg.q_max)?;
    let bootstrap_seed = model_seed(cfg.seed(), model.id);
    let bcfg = BootstrapConfig {
        seed: bootstrap_seed,
        ..cfg.bootstrap
    };
    let outcome = bootstrap_test(y, x, &selection.spec, &bcfg)?;
    let verdict = decide(outcome.statistics, outcome.bootstrap.critical);
    let row = CointegrationRow {
        model: model.clone(),
        p: selection.spec.p,
        q: selection.spec.q,
        candidates: selection.candidates,
        statistics: outcome.statistics,
        critical: outcome.bootstrap.critical,
        critical_1pct: outcome.bootstrap.at(0.01),
        critical_5pct: outcome.bootstrap.at(0.05),
        rejections: verdict.rejections,
        classification: verdict.classification,
        narrative: verdict.narrative,
        bootstrap_seed,
        failed_draws: outcome.bootstrap.failures,
    };
    if !row.classification.is_cointegrated() {
        return Ok(ModelResult {
            row,
            ecm: None,
            diagnostics: None,
        });
    }
    let estimates = ecm_estimates(&outcome.uecm)?;
    let uecm = &outcome.uecm;
    let report = run_diagnostics(&uecm.fit, &uecm.design, &uecm.response, &cfg.diagnostics)?;
    let flagged = report
        .rejections(cfg.diagnostics.level, cfg.diagnostics.form)
        .into_iter()
        .map(String::from)
        .collect();
    Ok(ModelResult {
        ecm: Some(EcmRow {
            model: model.clone(),
            estimates,
        }),
        diagnostics: Some(DiagnosticsRow {
            model: model.clone(),
            report,
            flagged,
            cusum_csv: format!("cusum_model{}.csv", model.id),
            cusumsq_csv: format!("cusumsq_model{}.csv", model.id),
        }),
        row,
    })
}

fn metadata(cfg: &RunConfig, dataset: &Dataset) -> Result<RunMetadata> {
    let inputs = cfg
        .sources
        .paths()
        .iter()
        .map(|p| {
            Ok(InputFingerprint {
                path: p.display().to_string(),
                sha256: sha256_file(p)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut notes = Vec::new();
    if cfg.bootstrap.replications < PRECISION_REPLICATIONS {
        notes.push(format!(
            "reduced precision: {} bootstrap replications (critical values are noisy below {PRECISION_REPLICATIONS})",
            cfg.bootstrap.replications
        ));
    }
    Ok(RunMetadata {
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: cfg.seed(),
        replications: cfg.bootstrap.replications,
        level: cfg.bootstrap.level,
        window: cfg.window.to_string(),
        count_mode: format!("{:?}", cfg.count_mode).to_lowercase(),
        p_max: cfg.p_max,
        q_max: cfg.q_max,
        observations: dataset.len(),
        inputs,
        notes,
    })
}

/// Builds the dataset from `cfg` and runs [`run_study_on`].
pub fn run_study(cfg: &RunConfig) -> Result<StudyReport> {
    cfg.validate()?;
    let dataset = build_dataset(cfg.window, &cfg.sources, cfg.count_mode)?;
    run_study_on(&dataset, cfg)
}

/// Unit-root screen, then every model. A failing model is recorded and the
/// rest continue; an I(2) series stops the whole study.
pub fn run_study_on(dataset: &Dataset, cfg: &RunConfig) -> Result<StudyReport> {
    let unit_roots = unit_root_table(dataset, cfg)?;
    let results: Vec<(ModelSpec, Result<ModelResult>)> = cfg
        .models
        .par_iter()
        .map(|m| (m.clone(), run_model(dataset, m, cfg)))
        .collect();
    let mut report = StudyReport {
        metadata: metadata(cfg, dataset)?,
        unit_roots,
        cointegration: Vec::new(),
        ecm: Vec::new(),
        diagnostics: Vec::new(),
        failures: Vec::new(),
    };
    for (model, res) in results {
        match res {
            Ok(r) => {
                report.cointegration.push(r.row);
                report.ecm.extend(r.ecm);
                report.diagnostics.extend(r.diagnostics);
            }
            Err(e) => report.failures.push(ModelFailure {
                exit_code: e.exit_code(),
                error: e.in_model(model.label()).to_string(),
                model,
            }),
        }
    }
    Ok(report)
}
