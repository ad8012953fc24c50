use std::fmt::Write as _;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::study::StudyReport;
use crate::ardl::Estimate;
use crate::diagnostics::{PathKind, TestResult};
use crate::error::{Error, Result};
use crate::unitroot::UnitRootResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReportFormat {
    Text,
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" | "text-table" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            "csv" | "csv-bundle" => Ok(ReportFormat::Csv),
            _ => Err(Error::InvalidConfig(format!(
                "format must be text, json or csv, got `{s}`"
            ))),
        }
    }
}

/// `*` beyond the 1% critical value, `**` beyond 5% only.
pub fn stars(beyond_1pct: bool, beyond_5pct: bool) -> &'static str {
    if beyond_1pct {
        "*"
    } else if beyond_5pct {
        "**"
    } else {
        ""
    }
}

fn p_stars(p: f64) -> &'static str {
    stars(p < 0.01, p < 0.05)
}

fn unit_root_cell(r: &UnitRootResult) -> String {
    format!("{:.3}{}", r.statistic, stars(r.reject.one, r.reject.five))
}

fn estimate_cell(e: &Estimate) -> String {
    format!("{:.3}{}", e.value, p_stars(e.p_value))
}

fn test_cell(t: &TestResult) -> String {
    format!("{:.3} ({:.3})", t.statistic, t.p_value)
}

/// Human-readable tables in the layout of the published results.
pub fn to_text(report: &StudyReport) -> String {
    let mut s = String::new();
    let m = &report.metadata;
    let cv = format!("{}% CV", (m.level * 100.0).round());
    let _ = writeln!(
        s,
        "bootardl {}  seed {}  window {}  T = {}  counts {}",
        m.version, m.seed, m.window, m.observations, m.count_mode
    );
    for f in &m.inputs {
        let _ = writeln!(s, "  input {}  sha256 {}", f.path, f.sha256);
    }
    for n in &m.notes {
        let _ = writeln!(s, "  note: {n}");
    }

    let _ = writeln!(s, "\nUnit root tests");
    let _ = writeln!(
        s,
        "{:<14} {:>11} {:>11} {:>11} {:>11}  Order",
        "Variable", "ADF level", "ADF diff", "PP level", "PP diff"
    );
    for r in &report.unit_roots {
        let dash = || "-".to_string();
        let _ = writeln!(
            s,
            "{:<14} {:>11} {:>11} {:>11} {:>11}  {}{}",
            r.series,
            unit_root_cell(&r.adf_level),
            r.adf_difference.as_ref().map_or_else(dash, unit_root_cell),
            unit_root_cell(&r.pp_level),
            r.pp_difference.as_ref().map_or_else(dash, unit_root_cell),
            r.order,
            if r.disagreement { "  (ADF/PP disagree)" } else { "" }
        );
    }
    let _ = writeln!(s, "Note: * and ** denote significance at 1% and 5% levels.");

    let _ = writeln!(s, "\nBootstrap ARDL results (B = {})", m.replications);
    let _ = writeln!(
        s,
        "{:<32} {:>5} {:>10} {:>8} {:>10} {:>8} {:>10} {:>8}  Verdict",
        "Model", "ARDL", "overall F", cv, "t-dep", cv, "F-indep", cv
    );
    for r in &report.cointegration {
        let (st, c1, c5) = (&r.statistics, &r.critical_1pct, &r.critical_5pct);
        let _ = writeln!(
            s,
            "{:<32} {:>5} {:>10} {:>8.3} {:>10} {:>8.3} {:>10} {:>8.3}  {}",
            r.model.label(),
            format!("{},{}", r.p, r.q),
            format!("{:.3}{}", st.overall_f, stars(st.overall_f > c1.overall_f, st.overall_f > c5.overall_f)),
            r.critical.overall_f,
            format!("{:.3}{}", st.t_dep, stars(st.t_dep < c1.t_dep, st.t_dep < c5.t_dep)),
            r.critical.t_dep,
            format!("{:.3}{}", st.f_indep, stars(st.f_indep > c1.f_indep, st.f_indep > c5.f_indep)),
            r.critical.f_indep,
            r.classification.label()
        );
    }
    let _ = writeln!(
        s,
        "Note: {} bootstrap replications. * and ** denote significance at 1% and 5% levels.",
        m.replications
    );

    let _ = writeln!(s, "\nLong- and short-run estimation");
    if report.ecm.is_empty() {
        let _ = writeln!(s, "(no cointegrated model)");
    }
    for e in &report.ecm {
        let est = &e.estimates;
        let x = &e.model.independent;
        let y = &e.model.dependent;
        let mut head = Vec::new();
        let mut vals = Vec::new();
        for (j, d) in est.short_run_dx.iter().enumerate() {
            head.push(if j == 0 { format!("d{x}_t") } else { format!("d{x}_t-{j}") });
            vals.push(estimate_cell(d));
        }
        for (i, d) in est.short_run_dy.iter().enumerate() {
            head.push(format!("d{y}_t-{}", i + 1));
            vals.push(estimate_cell(d));
        }
        head.push("ECT_t-1".into());
        vals.push(estimate_cell(&est.ect));
        head.push(x.clone());
        vals.push(estimate_cell(&est.long_run));
        if let Some(c) = &est.long_run_constant {
            head.push("Constant".into());
            vals.push(estimate_cell(c));
        }
        let width = head.iter().map(String::len).max().unwrap_or(8).max(10);
        let _ = writeln!(s, "{}", e.model.label());
        let _ = writeln!(s, "  {}", head.iter().map(|h| format!("{h:>width$}")).collect::<Vec<_>>().join(" "));
        let _ = writeln!(s, "  {}", vals.iter().map(|v| format!("{v:>width$}")).collect::<Vec<_>>().join(" "));
    }

    let _ = writeln!(s, "\nARDL diagnostic tests");
    let _ = writeln!(
        s,
        "{:<32} {:>16} {:>16} {:>16} {:>16} {:>16} {:>7} {:>7}  Status",
        "Model", "LM", "White", "Ramsey", "JB", "ARCH", "CUSUM", "CUSUMSQ"
    );
    let ok = |b: bool| if b { "stable" } else { "break" };
    for d in &report.diagnostics {
        let r = &d.report;
        let _ = writeln!(
            s,
            "{:<32} {:>16} {:>16} {:>16} {:>16} {:>16} {:>7} {:>7}  {}",
            d.model.label(),
            test_cell(&r.lm),
            test_cell(&r.white),
            test_cell(&r.reset),
            test_cell(&r.jarque_bera),
            test_cell(&r.arch),
            ok(r.paths.cusum_stable),
            ok(r.paths.cusumsq_stable),
            d.status()
        );
    }
    let _ = writeln!(s, "Note: (): probability values.");

    if !report.failures.is_empty() {
        let _ = writeln!(s, "\nAborted models");
        for f in &report.failures {
            let _ = writeln!(s, "  {}", f.error);
        }
        let ids: Vec<String> = report.survivors().iter().map(usize::to_string).collect();
        let _ = writeln!(s, "Completed models: {}", ids.join(", "));
    }
    s
}

/// Pretty JSON with full float precision; identical inputs give identical bytes.
pub fn to_json(report: &StudyReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json(text: &str) -> Result<StudyReport> {
    Ok(serde_json::from_str(text)?)
}

fn csv_writer(dir: &Path, name: &str, written: &mut Vec<PathBuf>) -> Result<csv::Writer<BufWriter<File>>> {
    let path = dir.join(name);
    let w = csv::Writer::from_writer(BufWriter::new(File::create(&path)?));
    written.push(path);
    Ok(w)
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Tables as CSV plus one CUSUM and one CUSUMSQ path per diagnosed model.
pub fn write_csv_bundle(report: &StudyReport, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();

    let mut w = csv_writer(dir, "unit_roots.csv", &mut written)?;
    w.write_record([
        "series", "adf_level", "adf_level_lag", "adf_difference", "pp_level", "pp_difference", "order", "disagreement",
    ])?;
    for r in &report.unit_roots {
        w.write_record([
            r.series.clone(),
            r.adf_level.statistic.to_string(),
            r.adf_level.lag.to_string(),
            opt(r.adf_difference.as_ref().map(|d| d.statistic)),
            r.pp_level.statistic.to_string(),
            opt(r.pp_difference.as_ref().map(|d| d.statistic)),
            r.order.to_string(),
            r.disagreement.to_string(),
        ])?;
    }
    w.flush()?;

    let mut w = csv_writer(dir, "cointegration.csv", &mut written)?;
    w.write_record([
        "model", "dependent", "independent", "p", "q", "overall_f", "overall_f_cv", "t_dep", "t_dep_cv", "f_indep",
        "f_indep_cv", "classification",
    ])?;
    for r in &report.cointegration {
        w.write_record([
            r.model.id.to_string(),
            r.model.dependent.clone(),
            r.model.independent.clone(),
            r.p.to_string(),
            r.q.to_string(),
            r.statistics.overall_f.to_string(),
            r.critical.overall_f.to_string(),
            r.statistics.t_dep.to_string(),
            r.critical.t_dep.to_string(),
            r.statistics.f_indep.to_string(),
            r.critical.f_indep.to_string(),
            r.classification.label().to_string(),
        ])?;
    }
    w.flush()?;

    let mut w = csv_writer(dir, "ecm.csv", &mut written)?;
    w.write_record(["model", "term", "value", "std_error", "p_value"])?;
    for e in &report.ecm {
        let est = &e.estimates;
        let mut terms: Vec<(String, &Estimate)> = Vec::new();
        for (j, d) in est.short_run_dx.iter().enumerate() {
            terms.push((format!("dx_{j}"), d));
        }
        for (i, d) in est.short_run_dy.iter().enumerate() {
            terms.push((format!("dy_{}", i + 1), d));
        }
        terms.push(("ect".into(), &est.ect));
        terms.push(("long_run".into(), &est.long_run));
        if let Some(c) = &est.long_run_constant {
            terms.push(("long_run_constant".into(), c));
        }
        for (name, t) in terms {
            w.write_record([
                e.model.id.to_string(),
                name,
                t.value.to_string(),
                t.std_error.to_string(),
                t.p_value.to_string(),
            ])?;
        }
    }
    w.flush()?;

    let mut w = csv_writer(dir, "diagnostics.csv", &mut written)?;
    w.write_record(["model", "test", "statistic", "p_value", "lm_statistic", "lm_p_value"])?;
    for d in &report.diagnostics {
        let r = &d.report;
        for (name, t) in [("lm", &r.lm), ("white", &r.white), ("ramsey", &r.reset), ("jb", &r.jarque_bera), ("arch", &r.arch)] {
            w.write_record([
                d.model.id.to_string(),
                name.to_string(),
                t.statistic.to_string(),
                t.p_value.to_string(),
                t.lm_statistic.to_string(),
                t.lm_p_value.to_string(),
            ])?;
        }
    }
    w.flush()?;

    for d in &report.diagnostics {
        for (name, kind) in [(&d.cusum_csv, PathKind::Cusum), (&d.cusumsq_csv, PathKind::CusumSquares)] {
            let path = dir.join(name);
            d.report.paths.write_csv(kind, BufWriter::new(File::create(&path)?))?;
            written.push(path);
        }
    }
    Ok(written)
}

/// Writes the report under `dir` in the chosen format and returns the files.
pub fn emit_report(report: &StudyReport, format: ReportFormat, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    match format {
        ReportFormat::Text => {
            let path = dir.join("report.txt");
            std::fs::write(&path, to_text(report))?;
            Ok(vec![path])
        }
        ReportFormat::Json => {
            let path = dir.join("report.json");
            std::fs::write(&path, to_json(report)?)?;
            Ok(vec![path])
        }
        ReportFormat::Csv => write_csv_bundle(report, dir),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_convention() {
        assert_eq!(stars(true, true), "*");
        assert_eq!(stars(false, true), "**");
        assert_eq!(stars(false, false), "");
        assert_eq!(p_stars(0.004), "*");
        assert_eq!(p_stars(0.03), "**");
        assert_eq!(p_stars(0.2), "");
    }

    #[test]
    fn format_names() {
        assert_eq!("text-table".parse::<ReportFormat>().unwrap(), ReportFormat::Text);
        assert_eq!("JSON".parse::<ReportFormat>().unwrap(), ReportFormat::Json);
        assert_eq!("csv-bundle".parse::<ReportFormat>().unwrap(), ReportFormat::Csv);
        assert!("xml".parse::<ReportFormat>().is_err());
    }
}
