//! ECDC daily case/death files and daily EPU index files, turned into the
//! ten log series of the study.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{align, natural_log, TimeSeries};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EcdcRecord {
    pub date: NaiveDate,
    pub cases: u64,
    pub deaths: u64,
    /// `countriesAndTerritories`, e.g. `United_Kingdom`.
    pub country: String,
    pub geo_id: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StudyWindow {
    pub start: NaiveDate,
    pub end: NaiveDate,
}

impl StudyWindow {
    pub fn new(start: NaiveDate, end: NaiveDate) -> Result<Self> {
        if start >= end {
            return Err(Error::InvalidConfig(format!(
                "window start {start} must precede end {end}"
            )));
        }
        Ok(Self { start, end })
    }

    /// Inclusive day count.
    pub fn len(&self) -> usize {
        (self.end - self.start).num_days() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl Default for StudyWindow {
    /// 7 March to 24 May 2020. The study period is also quoted as starting
    /// on 8 March; override the start to use that reading.
    fn default() -> Self {
        Self {
            start: NaiveDate::from_ymd_opt(2020, 3, 7).unwrap(),
            end: NaiveDate::from_ymd_opt(2020, 5, 24).unwrap(),
        }
    }
}

impl fmt::Display for StudyWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

impl FromStr for StudyWindow {
    type Err = Error;

    /// `YYYY-MM-DD..YYYY-MM-DD` or `YYYY-MM-DD,YYYY-MM-DD`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once("..")
            .or_else(|| s.split_once(','))
            .ok_or_else(|| Error::InvalidConfig(format!("window `{s}` is not START..END")))?;
        let parse = |v: &str| {
            NaiveDate::parse_from_str(v.trim(), "%Y-%m-%d")
                .map_err(|_| Error::InvalidConfig(format!("bad window date `{v}`")))
        };
        Self::new(parse(a)?, parse(b)?)
    }
}

fn column_index(headers: &csv::StringRecord, name: &str, path: &str) -> Result<usize> {
    headers
        .iter()
        .position(|h| h.trim() == name)
        .ok_or_else(|| Error::MissingColumn {
            path: path.to_string(),
            column: name.to_string(),
        })
}

fn parse_count(raw: &str, line: u64, column: &str) -> Result<u64> {
    let v: i64 = raw.trim().parse().map_err(|_| Error::UnparseableValue {
        line,
        column: column.to_string(),
        value: raw.to_string(),
    })?;
    if v < 0 {
        return Err(Error::NegativeCount {
            line,
            column: column.to_string(),
            value: v,
        });
    }
    Ok(v as u64)
}

/// Reads an ECDC geographic-distribution CSV. Extra columns are ignored;
/// line numbers in errors count the header as line 1.
pub fn read_ecdc(path: &Path) -> Result<Vec<EcdcRecord>> {
    let file = std::fs::File::open(path)?;
    read_ecdc_from(file, &path.display().to_string())
}

pub fn read_ecdc_from<R: Read>(reader: R, label: &str) -> Result<Vec<EcdcRecord>> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let i_date = column_index(&headers, "dateRep", label)?;
    let i_cases = column_index(&headers, "cases", label)?;
    let i_deaths = column_index(&headers, "deaths", label)?;
    let i_country = column_index(&headers, "countriesAndTerritories", label)?;
    let i_geo = column_index(&headers, "geoId", label)?;

    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let line = i as u64 + 2;
        let field = |j: usize| rec.get(j).unwrap_or("");
        let raw_date = field(i_date);
        let date = NaiveDate::parse_from_str(raw_date.trim(), "%d/%m/%Y").map_err(|_| {
            Error::UnparseableDate {
                line,
                value: raw_date.to_string(),
            }
        })?;
        let record = EcdcRecord {
            date,
            cases: parse_count(field(i_cases), line, "cases")?,
            deaths: parse_count(field(i_deaths), line, "deaths")?,
            country: field(i_country).trim().to_string(),
            geo_id: field(i_geo).trim().to_string(),
        };
        if !seen.insert((record.country.clone(), date)) {
            return Err(Error::DuplicateDate { date });
        }
        out.push(record);
    }
    if out.is_empty() {
        return Err(Error::EmptyInput(label.to_string()));
    }
    Ok(out)
}

/// Column names of a daily EPU file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct EpuColumns {
    pub year: String,
    pub month: String,
    pub day: String,
    pub value: String,
}

impl Default for EpuColumns {
    fn default() -> Self {
        Self {
            year: "year".into(),
            month: "month".into(),
            day: "day".into(),
            value: "daily_policy_index".into(),
        }
    }
}

/// Reads a daily EPU file into a series named `EPU_<country>`.
pub fn read_epu(path: &Path, country: &str, columns: &EpuColumns) -> Result<TimeSeries> {
    let file = std::fs::File::open(path)?;
    read_epu_from(file, &path.display().to_string(), country, columns)
}

pub fn read_epu_from<R: Read>(
    reader: R,
    label: &str,
    country: &str,
    columns: &EpuColumns,
) -> Result<TimeSeries> {
    let mut rdr = csv::Reader::from_reader(reader);
    let headers = rdr.headers()?.clone();
    let iy = column_index(&headers, &columns.year, label)?;
    let im = column_index(&headers, &columns.month, label)?;
    let id = column_index(&headers, &columns.day, label)?;
    let iv = column_index(&headers, &columns.value, label)?;

    let mut points = BTreeMap::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let line = i as u64 + 2;
        let field = |j: usize| rec.get(j).unwrap_or("").trim();
        let ymd = (field(iy).parse::<i32>(), field(im).parse::<u32>(), field(id).parse::<u32>());
        let date = match ymd {
            (Ok(y), Ok(m), Ok(d)) => NaiveDate::from_ymd_opt(y, m, d),
            _ => None,
        }
        .ok_or_else(|| Error::UnparseableDate {
            line,
            value: format!("{}-{}-{}", field(iy), field(im), field(id)),
        })?;
        let value: f64 = field(iv).parse().map_err(|_| Error::UnparseableValue {
            line,
            column: columns.value.clone(),
            value: field(iv).to_string(),
        })?;
        if points.insert(date, value).is_some() {
            return Err(Error::DuplicateDate { date });
        }
    }
    if points.is_empty() {
        return Err(Error::EmptyInput(label.to_string()));
    }
    let (dates, values) = points.into_iter().unzip();
    TimeSeries::new(format!("EPU_{country}"), dates, values)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Cases,
    Deaths,
}

impl Measure {
    pub fn name(&self) -> &'static str {
        match self {
            Measure::Cases => "cases",
            Measure::Deaths => "deaths",
        }
    }

    fn of(&self, r: &EcdcRecord) -> u64 {
        match self {
            Measure::Cases => r.cases,
            Measure::Deaths => r.deaths,
        }
    }
}

/// Inside the country, or the rest of the world.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Inside,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    #[default]
    Cumulative,
    Daily,
}

impl FromStr for CountMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cumulative" => Ok(CountMode::Cumulative),
            "daily" => Ok(CountMode::Daily),
            _ => Err(Error::InvalidConfig(format!(
                "count mode must be cumulative or daily, got `{s}`"
            ))),
        }
    }
}

/// Short codes used in series names, with the ECDC country spellings.
const ALIASES: &[(&str, &[&str])] = &[
    ("US", &["United_States_of_America", "United States of America", "USA", "US"]),
    ("UK", &["United_Kingdom", "United Kingdom", "GB", "UK"]),
];

/// ECDC `countriesAndTerritories` spelling and series code for a country.
fn resolve(records: &[EcdcRecord], country: &str) -> Result<(String, String)> {
    let aliases: &[&str] = ALIASES
        .iter()
        .find(|(code, names)| code.eq_ignore_ascii_case(country) || names.contains(&country))
        .map(|(_, names)| *names)
        .unwrap_or(&[]);
    let hit = records.iter().find(|r| {
        r.country == country
            || r.geo_id.eq_ignore_ascii_case(country)
            || aliases.iter().any(|a| r.country == *a || r.geo_id == *a)
    });
    let r = hit.ok_or_else(|| Error::CountryNotFound(country.to_string()))?;
    let code = ALIASES
        .iter()
        .find(|(_, names)| names.contains(&r.country.as_str()))
        .map(|(code, _)| code.to_string())
        .unwrap_or_else(|| r.geo_id.clone());
    Ok((r.country.clone(), code))
}

/// Per-date integer totals for the country and for the whole file, over
/// every day from the earliest to the latest record.
fn daily_totals(
    records: &[EcdcRecord],
    country: &str,
    measure: Measure,
) -> (Vec<NaiveDate>, Vec<u64>, Vec<u64>) {
    let first = records.iter().map(|r| r.date).min().expect("records are non-empty");
    let last = records.iter().map(|r| r.date).max().expect("records are non-empty");
    let len = (last - first).num_days() as usize + 1;
    let mut inside = vec![0u64; len];
    let mut world = vec![0u64; len];
    for r in records {
        let i = (r.date - first).num_days() as usize;
        let v = measure.of(r);
        world[i] += v;
        if r.country == country {
            inside[i] += v;
        }
    }
    let dates = first.iter_days().take(len).collect();
    (dates, inside, world)
}

fn running_sum(v: &mut [u64]) {
    let mut acc = 0u64;
    for x in v.iter_mut() {
        acc += *x;
        *x = acc;
    }
}

/// Country or rest-of-world counts, named e.g. `cases_US` or `deaths_OUK`.
/// Dates without a record for the country count as zero.
pub fn build_series(
    records: &[EcdcRecord],
    country: &str,
    measure: Measure,
    scope: Scope,
    mode: CountMode,
) -> Result<TimeSeries> {
    if records.is_empty() {
        return Err(Error::EmptyInput("ECDC records".into()));
    }
    let (spelling, code) = resolve(records, country)?;
    let (dates, inside, world) = daily_totals(records, &spelling, measure);
    let (mut counts, name) = match scope {
        Scope::Inside => (inside, format!("{}_{code}", measure.name())),
        Scope::Outside => (
            world.iter().zip(&inside).map(|(w, c)| w - c).collect(),
            format!("{}_O{code}", measure.name()),
        ),
    };
    if mode == CountMode::Cumulative {
        running_sum(&mut counts);
    }
    TimeSeries::new(name, dates, counts.into_iter().map(|c| c as f64).collect())
}

/// Input files of the study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataSources {
    pub ecdc: PathBuf,
    pub epu_us: PathBuf,
    pub epu_uk: PathBuf,
    #[serde(default)]
    pub epu_us_columns: EpuColumns,
    #[serde(default)]
    pub epu_uk_columns: EpuColumns,
}

impl DataSources {
    /// The snapshot layout under `dir`.
    pub fn in_dir(dir: &Path) -> Self {
        Self {
            ecdc: dir.join("ecdc_covid19_daily.csv"),
            epu_us: dir.join("epu_us_daily.csv"),
            epu_uk: dir.join("epu_uk_daily.csv"),
            epu_us_columns: EpuColumns::default(),
            epu_uk_columns: EpuColumns::default(),
        }
    }

    pub fn paths(&self) -> [&Path; 3] {
        [&self.ecdc, &self.epu_us, &self.epu_uk]
    }
}

/// Names of the ten study series, in table order.
pub const SERIES_NAMES: [&str; 10] = [
    "lnEPU_US",
    "lnEPU_UK",
    "lncases_US",
    "lndeaths_US",
    "lncases_OUS",
    "lndeaths_OUS",
    "lncases_UK",
    "lndeaths_UK",
    "lncases_OUK",
    "lndeaths_OUK",
];

/// The ten aligned log series over one window.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub window: StudyWindow,
    pub mode: CountMode,
    pub series: Vec<TimeSeries>,
}

impl Dataset {
    pub fn get(&self, name: &str) -> Option<&TimeSeries> {
        self.series.iter().find(|s| s.name() == name)
    }

    pub fn len(&self) -> usize {
        self.series.first().map_or(0, TimeSeries::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Wide CSV `date,lnEPU_US,...,lndeaths_OUK`.
    pub fn write_wide_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["date".to_string()];
        header.extend(self.series.iter().map(|s| s.name().to_string()));
        w.write_record(&header)?;
        let Some(first) = self.series.first() else {
            w.flush()?;
            return Ok(());
        };
        for (i, d) in first.dates().iter().enumerate() {
            let mut row = vec![d.format("%Y-%m-%d").to_string()];
            row.extend(self.series.iter().map(|s| format!("{}", s.values()[i])));
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn windowed_log(s: &TimeSeries, name: &str, window: &StudyWindow) -> Result<TimeSeries> {
    let clipped = s.clip(window.start, window.end).renamed(name);
    if clipped.len() < window.len() {
        return Err(Error::InsufficientOverlap {
            overlap: clipped.len(),
            required: window.len(),
        });
    }
    natural_log(&clipped)
}

/// Reads both sources and builds the ten log series over `window`.
pub fn build_dataset(window: StudyWindow, sources: &DataSources, mode: CountMode) -> Result<Dataset> {
    let records = read_ecdc(&sources.ecdc)?;
    let epu_us = read_epu(&sources.epu_us, "US", &sources.epu_us_columns)?;
    let epu_uk = read_epu(&sources.epu_uk, "UK", &sources.epu_uk_columns)?;
    dataset_from(window, &records, &epu_us, &epu_uk, mode)
}

/// [`build_dataset`] on already-loaded inputs.
pub fn dataset_from(
    window: StudyWindow,
    records: &[EcdcRecord],
    epu_us: &TimeSeries,
    epu_uk: &TimeSeries,
    mode: CountMode,
) -> Result<Dataset> {
    let mut series = vec![
        windowed_log(epu_us, "lnEPU_US", &window)?,
        windowed_log(epu_uk, "lnEPU_UK", &window)?,
    ];
    for country in ["US", "UK"] {
        for scope in [Scope::Inside, Scope::Outside] {
            for measure in [Measure::Cases, Measure::Deaths] {
                let raw = build_series(records, country, measure, scope, mode)?;
                let name = format!("ln{}", raw.name());
                series.push(windowed_log(&raw, &name, &window)?);
            }
        }
    }
    let mut series = align(&series)?;
    series.sort_by_key(|s| {
        SERIES_NAMES
            .iter()
            .position(|n| *n == s.name())
            .expect("built names are fixed")
    });
    Ok(Dataset { window, mode, series })
}
