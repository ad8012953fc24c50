use std::path::{Path, PathBuf};
use std::process::Command;

use bootardl::ingest::build_dataset;
use bootardl::pipeline::{
    emit_report, from_json, run_study, run_study_on, to_json, to_text, ConfigFile, ReportFormat, RunConfig,
};
use bootardl::series::TimeSeries;
use bootardl::simulate::{cumsum, random_walk};
use bootardl::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn snapshot() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn config(seed: u64, reps: usize) -> RunConfig {
    RunConfig::resolve(ConfigFile {
        seed: Some(seed),
        replications: Some(reps),
        data_dir: Some(snapshot()),
        ..Default::default()
    })
    .unwrap()
}

#[test]
fn study_is_deterministic_and_round_trips() {
    let cfg = config(11, 200);
    let a = run_study(&cfg).unwrap();
    let b = run_study(&cfg).unwrap();
    let ja = to_json(&a).unwrap();
    assert_eq!(ja, to_json(&b).unwrap());
    let back = from_json(&ja).unwrap();
    assert_eq!(back, a);
    assert_eq!(to_json(&back).unwrap(), ja);
    assert_eq!(a.cointegration.len() + a.failures.len(), 8);
    assert_eq!(a.metadata.inputs.len(), 3);
    assert!(a.metadata.inputs.iter().all(|i| i.sha256.len() == 64));
}

#[test]
fn different_seed_changes_critical_values_only() {
    let a = run_study(&config(1, 200)).unwrap();
    let b = run_study(&config(2, 200)).unwrap();
    for (ra, rb) in a.cointegration.iter().zip(&b.cointegration) {
        assert_eq!(ra.statistics, rb.statistics);
        assert_eq!((ra.p, ra.q), (rb.p, rb.q));
        assert_ne!(ra.critical, rb.critical);
        assert_ne!(ra.bootstrap_seed, rb.bootstrap_seed);
    }
}

#[test]
fn low_replication_count_is_noted() {
    let r = run_study(&config(3, 100)).unwrap();
    assert!(r.metadata.notes.iter().any(|n| n.contains("reduced precision")));
    assert!(to_text(&r).contains("reduced precision"));
    let full = run_study(&config(3, 1000)).unwrap();
    assert!(full.metadata.notes.is_empty());
}

#[test]
fn ecm_and_diagnostics_only_for_cointegrated_models() {
    let r = run_study(&config(5, 300)).unwrap();
    let coint: Vec<usize> = r
        .cointegration
        .iter()
        .filter(|c| c.classification.is_cointegrated())
        .map(|c| c.model.id)
        .collect();
    let ecm: Vec<usize> = r.ecm.iter().map(|e| e.model.id).collect();
    let diag: Vec<usize> = r.diagnostics.iter().map(|d| d.model.id).collect();
    assert_eq!(ecm, coint);
    assert_eq!(diag, coint);
}

#[test]
fn integrated_of_order_two_series_aborts_study() {
    let cfg = config(7, 200);
    let mut ds = build_dataset(cfg.window, &cfg.sources, cfg.count_mode).unwrap();
    let idx = ds.series.iter().position(|s| s.name() == "lncases_UK").unwrap();
    let old = &ds.series[idx];
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let walk: Vec<f64> = random_walk(&mut rng, old.len());
    let i2: Vec<f64> = cumsum(&walk).iter().map(|v| 10.0 + v).collect();
    ds.series[idx] = TimeSeries::new("lncases_UK", old.dates().to_vec(), i2).unwrap();
    let err = run_study_on(&ds, &cfg).unwrap_err();
    assert!(matches!(err, Error::IntegratedOrderTwo { ref series } if series == "lncases_UK"), "{err}");
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn failing_model_is_recorded_and_others_complete() {
    let cfg = config(7, 200);
    let mut ds = build_dataset(cfg.window, &cfg.sources, cfg.count_mode).unwrap();
    // an I(0) regressor proportional to the dependent variable collapses model 1
    let y = ds.get("lnEPU_US").unwrap().clone();
    let idx = ds.series.iter().position(|s| s.name() == "lncases_US").unwrap();
    ds.series[idx] = y.map(|v| 2.0 * v).unwrap().renamed("lncases_US");
    let r = run_study_on(&ds, &cfg).unwrap();
    assert_eq!(r.failures.len(), 1);
    assert_eq!(r.failures[0].model.id, 1);
    assert_eq!(r.failures[0].exit_code, 4);
    assert!(r.failures[0].error.contains("1)lnEPU_US"));
    assert_eq!(r.survivors(), vec![2, 3, 4, 5, 6, 7, 8]);
}

#[test]
fn csv_bundle_layout() {
    let r = run_study(&config(9, 200)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let files = emit_report(&r, ReportFormat::Csv, dir.path()).unwrap();
    let names: Vec<String> = files.iter().map(|p| p.file_name().unwrap().to_string_lossy().into_owned()).collect();
    for n in ["unit_roots.csv", "cointegration.csv", "ecm.csv", "diagnostics.csv"] {
        assert!(names.iter().any(|x| x == n), "missing {n}");
    }
    for d in &r.diagnostics {
        assert!(dir.path().join(&d.cusum_csv).is_file());
        assert!(dir.path().join(&d.cusumsq_csv).is_file());
    }
    let coint = std::fs::read_to_string(dir.path().join("cointegration.csv")).unwrap();
    assert_eq!(coint.lines().count(), 1 + r.cointegration.len());
}

fn cli() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_bootardl"));
    c.arg("--data-dir").arg(snapshot());
    c
}

#[test]
fn cli_exit_codes() {
    let missing_seed = cli().arg("study").output().unwrap();
    assert_eq!(missing_seed.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing_seed.stderr).contains("seed"));

    let bad_level = cli().args(["study", "--seed", "1", "--level", "0.2"]).output().unwrap();
    assert_eq!(bad_level.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad_data = Command::new(env!("CARGO_BIN_EXE_bootardl"))
        .args(["study", "--seed", "1", "--data-dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(bad_data.status.code(), Some(2));

    std::fs::copy(snapshot().join("epu_us_daily.csv"), dir.path().join("epu_us_daily.csv")).unwrap();
    std::fs::copy(snapshot().join("epu_uk_daily.csv"), dir.path().join("epu_uk_daily.csv")).unwrap();
    std::fs::write(dir.path().join("ecdc_covid19_daily.csv"), "dateRep,cases\n").unwrap();
    let malformed = Command::new(env!("CARGO_BIN_EXE_bootardl"))
        .args(["study", "--seed", "1", "--data-dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(malformed.status.code(), Some(3));
}

#[test]
fn cli_json_is_byte_identical_across_runs() {
    let run = || {
        let out = cli().args(["study", "--seed", "42", "--reps", "200", "--format", "json"]).output().unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    let a = run();
    assert_eq!(a, run());
    assert!(from_json(std::str::from_utf8(&a).unwrap()).is_ok());
}

#[test]
fn cli_config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "seed = 3\nreplications = 500\nlevel = 0.10\n").unwrap();
    let out = cli()
        .args(["study", "--format", "json", "--reps", "200", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(out.status.success());
    let r = from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(r.metadata.seed, 3);
    assert_eq!(r.metadata.replications, 200);
    assert_eq!(r.metadata.level, 0.10);

    std::fs::write(&cfg, "seed = 3\nreplicatons = 500\n").unwrap();
    let out = cli().args(["study", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cli_subcommands_run() {
    let out = cli().args(["unitroot", "--seed", "1"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 11);

    let out = cli().args(["coint", "--seed", "1", "--reps", "200", "--model", "3"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("verdict"));

    let dir = tempfile::tempdir().unwrap();
    let out = cli().args(["diag", "--seed", "1", "--model", "5", "--out"]).arg(dir.path()).output().unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("cusum.csv").is_file());

    let out = cli().args(["mc", "--seed", "1", "--reps", "100", "--runs", "4", "--dgp", "cointegrated"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("cointegrated"));

    let out = cli().args(["export-data", "--seed", "1"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 80);

    let out = cli().args(["coint", "--seed", "1", "--model", "99"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
