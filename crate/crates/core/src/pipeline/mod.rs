//! Configuration-driven study runner, report writers and the Monte Carlo
//! size/power harness.

mod config;
mod montecarlo;
mod report;
mod study;

pub use config::{default_models, ConfigFile, ModelSpec, RunConfig};
pub use montecarlo::{run_size_power, MonteCarloConfig, SizePowerTable};
pub use report::{emit_report, from_json, stars, to_json, to_text, write_csv_bundle, ReportFormat};
pub use study::{
    model_seed, run_model, run_study, run_study_on, sha256_file, unit_root_table, CointegrationRow,
    DiagnosticsRow, EcmRow, InputFingerprint, ModelFailure, ModelResult, RunMetadata, StudyReport,
    UnitRootRow, PRECISION_REPLICATIONS,
};
