use std::io::Write;

use serde::{Deserialize, Serialize};

use super::durbin;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::regress::recursive_residuals;

/// Brown-Durbin-Evans boundary constant for a two-sided significance level.
fn cusum_constant(level: f64) -> Option<f64> {
    [(0.10, 0.850), (0.05, 0.948), (0.01, 1.143)]
        .into_iter()
        .find(|(l, _)| (l - level).abs() < 1e-12)
        .map(|(_, a)| a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathKind {
    Cusum,
    CusumSquares,
}

/// Recursive-residual stability paths, indexed by observation t = k+1..n,
/// where k counts the observations used before the first recursive residual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CusumPaths {
    pub level: f64,
    pub t: Vec<usize>,
    pub cusum: Vec<f64>,
    pub cusum_lower: Vec<f64>,
    pub cusum_upper: Vec<f64>,
    pub cusumsq: Vec<f64>,
    pub cusumsq_lower: Vec<f64>,
    pub cusumsq_upper: Vec<f64>,
    pub cusum_stable: bool,
    pub cusumsq_stable: bool,
}

impl CusumPaths {
    /// Writes one path as `t,stat,lower,upper`.
    pub fn write_csv<W: Write>(&self, kind: PathKind, out: W) -> Result<()> {
        let (stat, lo, hi) = match kind {
            PathKind::Cusum => (&self.cusum, &self.cusum_lower, &self.cusum_upper),
            PathKind::CusumSquares => (&self.cusumsq, &self.cusumsq_lower, &self.cusumsq_upper),
        };
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "stat", "lower", "upper"])?;
        for i in 0..self.t.len() {
            w.write_record([
                self.t[i].to_string(),
                stat[i].to_string(),
                lo[i].to_string(),
                hi[i].to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn inside(path: &[f64], lo: &[f64], hi: &[f64]) -> bool {
    path.iter().zip(lo).zip(hi).all(|((v, l), h)| l <= v && v <= h)
}

/// CUSUM and CUSUM-of-squares of the recursive residuals with their
/// two-sided significance lines at `level` (0.01, 0.05 or 0.10).
pub fn cusum_paths(design: &Matrix, response: &[f64], level: f64) -> Result<CusumPaths> {
    let a = cusum_constant(level).ok_or_else(|| {
        Error::InvalidArgument(format!("CUSUM level must be 0.01, 0.05 or 0.10, got {level}"))
    })?;
    let w = recursive_residuals(design, response)?;
    let m = w.len();
    // first observation with a residual is k + 1
    let k = design.nrows() - m;
    if m < 3 {
        return Err(Error::TooFewObservations {
            n: design.nrows(),
            k: k + 2,
        });
    }
    let mf = m as f64;
    let mean = w.iter().sum::<f64>() / mf;
    let sd = (w.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (mf - 1.0)).sqrt();
    let total_sq: f64 = w.iter().map(|v| v * v).sum();
    if sd == 0.0 || total_sq == 0.0 {
        return Err(Error::InvalidArgument("recursive residuals are degenerate".into()));
    }
    let c0 = durbin::c0(mf / 2.0 - 1.0, level / 2.0).expect("level checked above");

    let mut paths = CusumPaths {
        level,
        t: Vec::with_capacity(m),
        cusum: Vec::with_capacity(m),
        cusum_lower: Vec::with_capacity(m),
        cusum_upper: Vec::with_capacity(m),
        cusumsq: Vec::with_capacity(m),
        cusumsq_lower: Vec::with_capacity(m),
        cusumsq_upper: Vec::with_capacity(m),
        cusum_stable: true,
        cusumsq_stable: true,
    };
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for (r, wr) in w.iter().enumerate() {
        let r1 = (r + 1) as f64;
        sum += wr / sd;
        sum_sq += wr * wr;
        let band = a * (mf.sqrt() + 2.0 * r1 / mf.sqrt());
        let centre = r1 / mf;
        paths.t.push(k + r + 1);
        paths.cusum.push(sum);
        paths.cusum_lower.push(-band);
        paths.cusum_upper.push(band);
        paths.cusumsq.push(sum_sq / total_sq);
        paths.cusumsq_lower.push(centre - c0);
        paths.cusumsq_upper.push(centre + c0);
    }
    paths.cusum_stable = inside(&paths.cusum, &paths.cusum_lower, &paths.cusum_upper);
    paths.cusumsq_stable = inside(&paths.cusumsq, &paths.cusumsq_lower, &paths.cusumsq_upper);
    Ok(paths)
}
