use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;

use bootardl::diagnostics::run_diagnostics;
use bootardl::ardl::{fit_uecm_from, select_lags};
use bootardl::bootstrap::BootstrapConfig;
use bootardl::ingest::{build_dataset, CountMode, Dataset};
use bootardl::pipeline::{
    emit_report, run_model, run_size_power, run_study, to_json, to_text, unit_root_table, ConfigFile,
    ModelSpec, MonteCarloConfig, ReportFormat, RunConfig,
};
use bootardl::simulate::Dgp;
use bootardl::{Error, Result};

#[derive(Parser)]
#[command(name = "bootardl", version, about = "Bootstrap ARDL cointegration study runner")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// TOML run file; flags override its keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Bootstrap replications.
    #[arg(long, global = true)]
    reps: Option<usize>,
    /// Significance level: 0.01, 0.05 or 0.10.
    #[arg(long, global = true)]
    level: Option<f64>,
    /// START..END, e.g. 2020-03-08..2020-05-24.
    #[arg(long, global = true)]
    window: Option<String>,
    /// cumulative or daily.
    #[arg(long = "count-mode", global = true)]
    count_mode: Option<String>,
    /// Directory holding the input snapshot.
    #[arg(long = "data-dir", global = true)]
    data_dir: Option<PathBuf>,
    /// Output directory (or file for export-data).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// text, json or csv; repeat for several.
    #[arg(long, global = true)]
    format: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Full study: unit roots, model battery, ECM and diagnostics.
    Study,
    /// Unit root table for the ten series.
    Unitroot,
    /// Bootstrap cointegration test for one model.
    Coint(ModelArgs),
    /// Diagnostic battery for one model at its SBC lags.
    Diag(ModelArgs),
    /// Monte Carlo size and power of the bootstrap test.
    Mc(McArgs),
    /// Writes the built dataset as one wide CSV.
    ExportData,
}

#[derive(Args)]
struct ModelArgs {
    /// Model number in the battery.
    #[arg(long, conflicts_with_all = ["dependent", "independent"])]
    model: Option<usize>,
    #[arg(long, requires = "independent")]
    dependent: Option<String>,
    #[arg(long, requires = "dependent")]
    independent: Option<String>,
}

#[derive(Args)]
struct McArgs {
    /// null-i1, null-i0, cointegrated, degenerate-1 or degenerate-2.
    #[arg(long, default_value = "null-i1")]
    dgp: String,
    #[arg(long, default_value_t = 200)]
    runs: usize,
    /// Sample length.
    #[arg(long, default_value_t = 80)]
    len: usize,
    /// Fixed lags `p,q`; SBC selection when absent.
    #[arg(long)]
    lags: Option<String>,
}

impl Common {
    fn file(&self) -> Result<ConfigFile> {
        let base = match &self.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let count_mode = self.count_mode.as_deref().map(str::parse::<CountMode>).transpose()?;
        Ok(base.overlay(ConfigFile {
            seed: self.seed,
            replications: self.reps,
            level: self.level,
            window: self.window.clone(),
            count_mode,
            data_dir: self.data_dir.clone(),
            out: self.out.clone(),
            ..ConfigFile::default()
        }))
    }

    fn run_config(&self) -> Result<RunConfig> {
        RunConfig::resolve(self.file()?)
    }

    fn formats(&self) -> Result<Vec<ReportFormat>> {
        self.format.iter().map(|f| f.parse()).collect()
    }
}

fn dataset(cfg: &RunConfig) -> Result<Dataset> {
    build_dataset(cfg.window, &cfg.sources, cfg.count_mode)
}

fn pick_model(cfg: &RunConfig, args: &ModelArgs) -> Result<ModelSpec> {
    match (&args.model, &args.dependent, &args.independent) {
        (Some(id), _, _) => cfg
            .models
            .iter()
            .find(|m| m.id == *id)
            .cloned()
            .ok_or_else(|| Error::InvalidConfig(format!("no model {id}"))),
        (None, Some(y), Some(x)) => Ok(ModelSpec::new(0, y, x)),
        _ => Err(Error::InvalidConfig("give --model or --dependent and --independent".into())),
    }
}

fn study(common: &Common) -> Result<i32> {
    let cfg = common.run_config()?;
    info!("running {} models with B = {}", cfg.models.len(), cfg.bootstrap.replications);
    let report = run_study(&cfg)?;
    let formats = common.formats()?;
    match &cfg.out {
        Some(dir) => {
            let formats = if formats.is_empty() {
                vec![ReportFormat::Text, ReportFormat::Json, ReportFormat::Csv]
            } else {
                formats
            };
            for f in formats {
                for p in emit_report(&report, f, dir)? {
                    info!("wrote {}", p.display());
                }
            }
        }
        None => {
            if formats.contains(&ReportFormat::Json) {
                print!("{}", to_json(&report)?);
            } else {
                print!("{}", to_text(&report));
            }
        }
    }
    if report.failures.is_empty() {
        return Ok(0);
    }
    for f in &report.failures {
        eprintln!("aborted: {}", f.error);
    }
    let survivors: Vec<String> = report.survivors().iter().map(usize::to_string).collect();
    eprintln!("completed models: {}", if survivors.is_empty() { "none".to_string() } else { survivors.join(", ") });
    Ok(report.failures.iter().map(|f| f.exit_code).max().unwrap_or(4))
}

fn unitroot(common: &Common) -> Result<i32> {
    let cfg = common.run_config()?;
    let rows = unit_root_table(&dataset(&cfg)?, &cfg)?;
    println!("{:<14} {:>10} {:>10} {:>10} {:>10}  Order", "Variable", "ADF", "ADF diff", "PP", "PP diff");
    let cell = |r: &bootardl::unitroot::UnitRootResult| {
        format!("{:.3}{}", r.statistic, bootardl::pipeline::stars(r.reject.one, r.reject.five))
    };
    for r in rows {
        println!(
            "{:<14} {:>10} {:>10} {:>10} {:>10}  {}",
            r.series,
            cell(&r.adf_level),
            r.adf_difference.as_ref().map_or("-".into(), cell),
            cell(&r.pp_level),
            r.pp_difference.as_ref().map_or("-".into(), cell),
            r.order
        );
    }
    Ok(0)
}

fn coint(common: &Common, args: &ModelArgs) -> Result<i32> {
    let cfg = common.run_config()?;
    let model = pick_model(&cfg, args)?;
    let result = run_model(&dataset(&cfg)?, &model, &cfg).map_err(|e| e.in_model(model.label()))?;
    let r = &result.row;
    println!("{}  ARDL({},{})  B = {}", model.label(), r.p, r.q, cfg.bootstrap.replications);
    println!("  overall F     {:>9.3}   cv {:>8.3}", r.statistics.overall_f, r.critical.overall_f);
    println!("  t-dependent   {:>9.3}   cv {:>8.3}", r.statistics.t_dep, r.critical.t_dep);
    println!("  F-independent {:>9.3}   cv {:>8.3}", r.statistics.f_indep, r.critical.f_indep);
    println!("  verdict: {} ({})", r.classification.label(), r.narrative);
    if let Some(e) = &result.ecm {
        let est = &e.estimates;
        println!("  ECT {:.3} (p {:.3})  long run {:.3} (se {:.3})", est.ect.value, est.ect.p_value, est.long_run.value, est.long_run.std_error);
    }
    Ok(0)
}

fn diag(common: &Common, args: &ModelArgs) -> Result<i32> {
    let cfg = common.run_config()?;
    let model = pick_model(&cfg, args)?;
    let data = dataset(&cfg)?;
    let get = |n: &str| data.get(n).ok_or_else(|| Error::InvalidConfig(format!("unknown series `{n}`")));
    let (y, x) = (get(&model.dependent)?.values(), get(&model.independent)?.values());
    let sel = select_lags(y, x, (&model.dependent, &model.independent), cfg.p_max, cfg.q_max)?;
    let uecm = fit_uecm_from(y, x, &sel.spec, sel.spec.min_start())?;
    let report = run_diagnostics(&uecm.fit, &uecm.design, &uecm.response, &cfg.diagnostics)?;
    println!("{}  ARDL({})", model.label(), sel.spec.label());
    for (name, t) in [("LM", &report.lm), ("White", &report.white), ("Ramsey", &report.reset), ("JB", &report.jarque_bera), ("ARCH", &report.arch)] {
        println!("  {name:<7} {:>9.3} (p {:.3})", t.statistic, t.p_value);
    }
    println!("  CUSUM   {}", if report.paths.cusum_stable { "stable" } else { "outside bounds" });
    println!("  CUSUMSQ {}", if report.paths.cusumsq_stable { "stable" } else { "outside bounds" });
    if let Some(dir) = &cfg.out {
        std::fs::create_dir_all(dir)?;
        use bootardl::diagnostics::PathKind;
        report.paths.write_csv(PathKind::Cusum, std::fs::File::create(dir.join("cusum.csv"))?)?;
        report.paths.write_csv(PathKind::CusumSquares, std::fs::File::create(dir.join("cusumsq.csv"))?)?;
    }
    Ok(0)
}

fn mc(common: &Common, args: &McArgs) -> Result<i32> {
    let file = common.file()?;
    let seed = file
        .seed
        .ok_or_else(|| Error::InvalidConfig("a seed is required (--seed)".into()))?;
    let dgp = Dgp::parse(&args.dgp).ok_or_else(|| Error::InvalidConfig(format!("unknown DGP `{}`", args.dgp)))?;
    let bcfg = BootstrapConfig::new(file.replications.unwrap_or(500), file.level.unwrap_or(0.05), seed)
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let mut cfg = MonteCarloConfig::new(args.runs, args.len, bcfg);
    if let Some(l) = &args.lags {
        let parsed = l
            .split_once(',')
            .and_then(|(p, q)| Some((p.trim().parse().ok()?, q.trim().parse().ok()?)));
        cfg.lags = Some(parsed.ok_or_else(|| Error::InvalidConfig(format!("lags `{l}` is not p,q")))?);
    }
    let table = run_size_power(dgp, &cfg)?;
    print!("{}", table.to_text());
    if let Some(dir) = &file.out {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(format!("mc_{}.json", dgp.name())), serde_json::to_string_pretty(&table)?)?;
    }
    Ok(0)
}

fn export_data(common: &Common) -> Result<i32> {
    let cfg = common.run_config()?;
    let data = dataset(&cfg)?;
    match &cfg.out {
        Some(p) => {
            let path = if p.extension().is_some() { p.clone() } else { p.join("dataset.csv") };
            if let Some(parent) = path.parent() {
                std::fs::create_dir_all(parent)?;
            }
            data.write_wide_csv(std::fs::File::create(&path)?)?;
            info!("wrote {}", path.display());
        }
        None => data.write_wide_csv(std::io::stdout().lock())?,
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let common = &cli.common;
    let result = match &cli.command {
        Command::Study => study(common),
        Command::Unitroot => unitroot(common),
        Command::Coint(a) => coint(common, a),
        Command::Diag(a) => diag(common, a),
        Command::Mc(a) => mc(common, a),
        Command::ExportData => export_data(common),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
