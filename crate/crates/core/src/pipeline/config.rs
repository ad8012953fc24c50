use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bootstrap::{BootstrapConfig, Resampling};
use crate::diagnostics::DiagnosticsConfig;
use crate::error::{Error, Result};
use crate::ingest::{CountMode, DataSources, EpuColumns, StudyWindow, SERIES_NAMES};
use crate::unitroot::Deterministic;

/// One bivariate model `dependent = f(independent)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub id: usize,
    pub dependent: String,
    pub independent: String,
}

impl ModelSpec {
    pub fn new(id: usize, dependent: &str, independent: &str) -> Self {
        Self {
            id,
            dependent: dependent.to_string(),
            independent: independent.to_string(),
        }
    }

    pub fn label(&self) -> String {
        format!("{}){} = f({})", self.id, self.dependent, self.independent)
    }
}

/// The eight EPU models: each country's EPU on its own and the rest of the
/// world's cases and deaths.
pub fn default_models() -> Vec<ModelSpec> {
    let pairs = [
        ("lnEPU_US", "lncases_US"),
        ("lnEPU_US", "lndeaths_US"),
        ("lnEPU_US", "lncases_OUS"),
        ("lnEPU_US", "lndeaths_OUS"),
        ("lnEPU_UK", "lncases_UK"),
        ("lnEPU_UK", "lndeaths_UK"),
        ("lnEPU_UK", "lncases_OUK"),
        ("lnEPU_UK", "lndeaths_OUK"),
    ];
    pairs
        .iter()
        .enumerate()
        .map(|(i, (y, x))| ModelSpec::new(i + 1, y, x))
        .collect()
}

/// Flat key-value run file. Every key is optional except that a seed must
/// come from the file or the command line.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub seed: Option<u64>,
    /// Directory holding the three snapshot files under their default names.
    pub data_dir: Option<PathBuf>,
    pub ecdc: Option<PathBuf>,
    pub epu_us: Option<PathBuf>,
    pub epu_uk: Option<PathBuf>,
    pub epu_us_columns: Option<EpuColumns>,
    pub epu_uk_columns: Option<EpuColumns>,
    /// `START..END`.
    pub window: Option<String>,
    pub count_mode: Option<CountMode>,
    pub replications: Option<usize>,
    pub level: Option<f64>,
    pub resampling: Option<Resampling>,
    pub p_max: Option<usize>,
    pub q_max: Option<usize>,
    pub deterministic: Option<Deterministic>,
    pub out: Option<PathBuf>,
    /// Models appended after the default eight, as `dependent:independent`.
    pub extra_models: Option<Vec<String>>,
    pub lm_lags: Option<usize>,
    pub reset_powers: Option<Vec<u32>>,
    pub arch_order: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))
    }

    /// Keys set in `other` win.
    pub fn overlay(self, other: ConfigFile) -> ConfigFile {
        macro_rules! pick {
            ($($f:ident),*) => { ConfigFile { $($f: other.$f.or(self.$f)),* } };
        }
        pick!(
            seed, data_dir, ecdc, epu_us, epu_uk, epu_us_columns, epu_uk_columns, window,
            count_mode, replications, level, resampling, p_max, q_max, deterministic, out,
            extra_models, lm_lags, reset_powers, arch_order
        )
    }
}

/// Fully resolved run settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub sources: DataSources,
    pub window: StudyWindow,
    pub count_mode: CountMode,
    pub bootstrap: BootstrapConfig,
    pub p_max: usize,
    pub q_max: usize,
    pub deterministic: Deterministic,
    pub out: Option<PathBuf>,
    pub models: Vec<ModelSpec>,
    pub diagnostics: DiagnosticsConfig,
}

impl RunConfig {
    /// Defaults under `file`; `file` already carries any flag overrides.
    pub fn resolve(file: ConfigFile) -> Result<Self> {
        let seed = file
            .seed
            .ok_or_else(|| Error::InvalidConfig("a seed is required (`seed = ...` or --seed)".into()))?;
        let mut sources = DataSources::in_dir(file.data_dir.as_deref().unwrap_or(Path::new("data")));
        if let Some(p) = file.ecdc {
            sources.ecdc = p;
        }
        if let Some(p) = file.epu_us {
            sources.epu_us = p;
        }
        if let Some(p) = file.epu_uk {
            sources.epu_uk = p;
        }
        if let Some(c) = file.epu_us_columns {
            sources.epu_us_columns = c;
        }
        if let Some(c) = file.epu_uk_columns {
            sources.epu_uk_columns = c;
        }
        let window = match file.window {
            Some(w) => w.parse()?,
            None => StudyWindow::default(),
        };
        let level = file.level.unwrap_or(0.05);
        let mut bootstrap = BootstrapConfig::new(file.replications.unwrap_or(2000), level, seed)
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        bootstrap.resampling = file.resampling.unwrap_or_default();

        let mut models = default_models();
        for m in file.extra_models.unwrap_or_default() {
            let (y, x) = m.split_once(':').ok_or_else(|| {
                Error::InvalidConfig(format!("extra model `{m}` is not dependent:independent"))
            })?;
            models.push(ModelSpec::new(models.len() + 1, y.trim(), x.trim()));
        }
        for m in &models {
            for name in [&m.dependent, &m.independent] {
                if !SERIES_NAMES.contains(&name.as_str()) {
                    return Err(Error::InvalidConfig(format!("unknown series `{name}` in model {}", m.id)));
                }
            }
            if m.dependent == m.independent {
                return Err(Error::InvalidConfig(format!("model {} regresses a series on itself", m.id)));
            }
        }

        let mut diagnostics = DiagnosticsConfig {
            level,
            ..DiagnosticsConfig::default()
        };
        if let Some(l) = file.lm_lags {
            diagnostics.lm_lags = l;
        }
        if let Some(p) = file.reset_powers {
            diagnostics.reset_powers = p;
        }
        if let Some(a) = file.arch_order {
            diagnostics.arch_order = a;
        }

        let cfg = Self {
            sources,
            window,
            count_mode: file.count_mode.unwrap_or_default(),
            bootstrap,
            p_max: file.p_max.unwrap_or(4),
            q_max: file.q_max.unwrap_or(4),
            deterministic: file.deterministic.unwrap_or_default(),
            out: file.out,
            models,
            diagnostics,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for p in self.sources.paths() {
            if !p.is_file() {
                return Err(Error::InvalidConfig(format!("input file {} does not exist", p.display())));
            }
        }
        if self.p_max == 0 {
            return Err(Error::InvalidConfig("p_max must be at least 1".into()));
        }
        if ![0.01, 0.05, 0.10].iter().any(|l| (l - self.bootstrap.level).abs() < 1e-12) {
            return Err(Error::InvalidConfig(format!(
                "level must be 0.01, 0.05 or 0.10, got {}",
                self.bootstrap.level
            )));
        }
        self.bootstrap
            .validate()
            .map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub fn seed(&self) -> u64 {
        self.bootstrap.seed
    }
}
