//! Date-indexed daily series and the transforms the estimators consume.

use std::io::Write;

use chrono::{Days, NaiveDate};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum number of shared observations [`align`] accepts.
pub const MIN_OVERLAP: usize = 10;

/// A contiguous daily series. Values are immutable after construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    name: String,
    dates: Vec<NaiveDate>,
    values: Vec<f64>,
}

impl TimeSeries {
    /// Builds a series, rejecting unordered dates, duplicates, calendar gaps,
    /// length mismatches and non-finite values.
    pub fn new(name: impl Into<String>, dates: Vec<NaiveDate>, values: Vec<f64>) -> Result<Self> {
        let name = name.into();
        let invalid = |reason: String| Error::InvalidSeries {
            series: name.clone(),
            reason,
        };
        if dates.len() != values.len() {
            return Err(invalid(format!(
                "{} dates but {} values",
                dates.len(),
                values.len()
            )));
        }
        for w in dates.windows(2) {
            if w[1] <= w[0] {
                return Err(invalid(format!("dates not strictly increasing at {}", w[1])));
            }
            if w[0].checked_add_days(Days::new(1)) != Some(w[1]) {
                return Err(invalid(format!("gap between {} and {}", w[0], w[1])));
            }
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(invalid(format!("non-finite value at {}", dates[i])));
        }
        Ok(Self {
            name,
            dates,
            values,
        })
    }

    /// Daily series starting at `start`.
    pub fn from_start(name: impl Into<String>, start: NaiveDate, values: Vec<f64>) -> Result<Self> {
        let dates = start.iter_days().take(values.len()).collect();
        Self::new(name, dates, values)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn start(&self) -> Option<NaiveDate> {
        self.dates.first().copied()
    }

    pub fn end(&self) -> Option<NaiveDate> {
        self.dates.last().copied()
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Element-wise transform, dates unchanged.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(
            self.name.clone(),
            self.dates.clone(),
            self.values.iter().map(|&v| f(v)).collect(),
        )
    }

    /// Restricts the series to `[start, end]` (inclusive).
    pub fn clip(&self, start: NaiveDate, end: NaiveDate) -> Self {
        let lo = self.dates.partition_point(|d| *d < start);
        let hi = self.dates.partition_point(|d| *d <= end);
        let (lo, hi) = (lo.min(hi), hi);
        Self {
            name: self.name.clone(),
            dates: self.dates[lo..hi].to_vec(),
            values: self.values[lo..hi].to_vec(),
        }
    }

    /// Writes `date,value` CSV with ISO-8601 dates and round-trip precision.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["date", "value"])?;
        for (d, v) in self.dates.iter().zip(&self.values) {
            w.write_record([d.format("%Y-%m-%d").to_string(), format!("{v}")])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads the `date,value` layout written by [`TimeSeries::write_csv`].
    pub fn read_csv(name: impl Into<String>, path: &std::path::Path) -> Result<Self> {
        let mut rdr = csv::Reader::from_path(path)?;
        let mut dates = Vec::new();
        let mut values = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let line = i as u64 + 2;
            let d = rec.get(0).unwrap_or("");
            let date = NaiveDate::parse_from_str(d.trim(), "%Y-%m-%d").map_err(|_| {
                Error::UnparseableDate {
                    line,
                    value: d.to_string(),
                }
            })?;
            let v = rec.get(1).unwrap_or("");
            let value = v.trim().parse::<f64>().map_err(|_| Error::UnparseableValue {
                line,
                column: "value".into(),
                value: v.to_string(),
            })?;
            dates.push(date);
            values.push(value);
        }
        if values.is_empty() {
            return Err(Error::EmptyInput(path.display().to_string()));
        }
        Self::new(name, dates, values)
    }
}

/// Natural logarithm of every observation.
pub fn natural_log(s: &TimeSeries) -> Result<TimeSeries> {
    if let Some(i) = s.values.iter().position(|&v| v <= 0.0) {
        return Err(Error::NonPositiveValue {
            series: s.name.clone(),
            date: s.dates[i],
            index: i,
            value: s.values[i],
        });
    }
    s.map(f64::ln)
}

/// `order`-th difference; the first `order` observations are dropped.
pub fn difference(s: &TimeSeries, order: usize) -> Result<TimeSeries> {
    if order == 0 {
        return Err(Error::InvalidArgument("difference order must be positive".into()));
    }
    if s.len() <= order {
        return Err(Error::SeriesTooShort {
            needed: order,
            got: s.len(),
        });
    }
    let mut values = s.values.clone();
    for _ in 0..order {
        values = diff(&values);
    }
    Ok(TimeSeries {
        name: s.name.clone(),
        dates: s.dates[order..].to_vec(),
        values,
    })
}

/// Lag by `k`: the value at date t is the original value at t-k, so the
/// first `k` dates leave the usable sample.
pub fn lag(s: &TimeSeries, k: usize) -> Result<TimeSeries> {
    if s.len() <= k {
        return Err(Error::SeriesTooShort {
            needed: k,
            got: s.len(),
        });
    }
    let n = s.len();
    Ok(TimeSeries {
        name: s.name.clone(),
        dates: s.dates[k..].to_vec(),
        values: s.values[..n - k].to_vec(),
    })
}

/// Clips every series to the intersection of their date spans.
pub fn align(series: &[TimeSeries]) -> Result<Vec<TimeSeries>> {
    let start = series.iter().filter_map(TimeSeries::start).max();
    let end = series.iter().filter_map(TimeSeries::end).min();
    let (start, end) = match (start, end) {
        (Some(s), Some(e)) if s <= e => (s, e),
        _ => {
            return Err(Error::InsufficientOverlap {
                overlap: 0,
                required: MIN_OVERLAP,
            })
        }
    };
    let overlap = (end - start).num_days() as usize + 1;
    if overlap < MIN_OVERLAP || series.iter().any(|s| s.is_empty()) {
        return Err(Error::InsufficientOverlap {
            overlap,
            required: MIN_OVERLAP,
        });
    }
    Ok(series.iter().map(|s| s.clip(start, end)).collect())
}

/// First difference of a plain slice.
pub fn diff(v: &[f64]) -> Vec<f64> {
    v.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Source of a design column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Source {
    Dependent,
    Independent,
}

/// One regressor of a lagged design: `source` lagged `lag` periods, in
/// first differences when `differenced`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagColumn {
    pub source: Source,
    pub lag: usize,
    pub differenced: bool,
}

impl LagColumn {
    pub fn level(source: Source, lag: usize) -> Self {
        Self {
            source,
            lag,
            differenced: false,
        }
    }

    pub fn delta(source: Source, lag: usize) -> Self {
        Self {
            source,
            lag,
            differenced: true,
        }
    }

    /// Observations this column consumes at the front of the sample.
    pub fn reach(&self) -> usize {
        self.lag + usize::from(self.differenced)
    }
}

/// A regression layout over one dependent and one independent series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaggedDesign {
    pub constant: bool,
    pub dependent_differenced: bool,
    pub columns: Vec<LagColumn>,
    /// First usable observation index of the original series.
    pub start: usize,
}

/// Realized regression data: row-major matrix plus response.
#[derive(Debug, Clone)]
pub struct RealizedDesign {
    pub x: crate::linalg::Matrix,
    pub y: Vec<f64>,
    pub start: usize,
}

impl LaggedDesign {
    /// Layout with the smallest start that every column can reach.
    pub fn new(constant: bool, dependent_differenced: bool, columns: Vec<LagColumn>) -> Self {
        let start = Self::min_start(dependent_differenced, &columns);
        Self {
            constant,
            dependent_differenced,
            columns,
            start,
        }
    }

    fn min_start(dependent_differenced: bool, columns: &[LagColumn]) -> usize {
        columns
            .iter()
            .map(LagColumn::reach)
            .chain(std::iter::once(usize::from(dependent_differenced)))
            .max()
            .unwrap_or(0)
    }

    /// Moves the sample start later, e.g. to share a sample across a lag grid.
    pub fn with_start(mut self, start: usize) -> Self {
        self.start = self.start.max(start);
        self
    }

    pub fn n_regressors(&self) -> usize {
        self.columns.len() + usize::from(self.constant)
    }

    /// Effective number of observations for series of length `len`.
    pub fn effective_len(&self, len: usize) -> usize {
        len.saturating_sub(self.start)
    }

    pub fn realize(&self, y: &[f64], x: &[f64]) -> Result<RealizedDesign> {
        if y.len() != x.len() {
            return Err(Error::DimensionMismatch(format!(
                "dependent has {} observations, independent {}",
                y.len(),
                x.len()
            )));
        }
        let n = self.effective_len(y.len());
        let k = self.n_regressors();
        if n <= k {
            return Err(Error::SeriesTooShort {
                needed: self.start + k,
                got: y.len(),
            });
        }
        let value = |src: &[f64], t: usize, col: &LagColumn| {
            let i = t - col.lag;
            if col.differenced {
                src[i] - src[i - 1]
            } else {
                src[i]
            }
        };
        let mut data = Vec::with_capacity(n * k);
        let mut resp = Vec::with_capacity(n);
        for t in self.start..y.len() {
            if self.constant {
                data.push(1.0);
            }
            for col in &self.columns {
                let src = match col.source {
                    Source::Dependent => y,
                    Source::Independent => x,
                };
                data.push(value(src, t, col));
            }
            resp.push(if self.dependent_differenced {
                y[t] - y[t - 1]
            } else {
                y[t]
            });
        }
        Ok(RealizedDesign {
            x: crate::linalg::Matrix::from_row_major(n, k, data),
            y: resp,
            start: self.start,
        })
    }
}
