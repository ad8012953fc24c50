use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use bootardl::ingest::{build_dataset, read_ecdc, CountMode, DataSources, StudyWindow, SERIES_NAMES};
use bootardl::Error;
use chrono::NaiveDate;

const COUNTRIES: [(&str, &str); 4] = [
    ("United_States_of_America", "US"),
    ("United_Kingdom", "UK"),
    ("France", "FR"),
    ("China", "CN"),
];

fn date(m: u32, d: u32) -> NaiveDate {
    NaiveDate::from_ymd_opt(2020, m, d).unwrap()
}

fn counts(country: usize, day: u32) -> (u64, u64) {
    let c = country as u64 + 1;
    let d = day as u64;
    (1 + (d * 7 * c + 3) % 17, 1 + (d * c) % 5)
}

/// ECDC rows for 2020-03-01..=2020-03-20, newest first like the real file,
/// with the UK missing on `skip_uk`.
fn ecdc_csv(skip_uk: Option<u32>) -> String {
    let mut s = String::from("dateRep,day,month,year,cases,deaths,countriesAndTerritories,geoId,countryterritoryCode,popData2018\n");
    for day in (1..=20).rev() {
        for (i, (name, geo)) in COUNTRIES.iter().enumerate() {
            if *geo == "UK" && skip_uk == Some(day) {
                continue;
            }
            let (c, d) = counts(i, day);
            writeln!(s, "{day:02}/03/2020,{day},3,2020,{c},{d},{name},{geo},XXX,1").unwrap();
        }
    }
    s
}

fn epu_csv(offset: f64, days: std::ops::RangeInclusive<u32>) -> String {
    let mut s = String::from("day,month,year,daily_policy_index\n");
    // unsorted on purpose
    let mut v: Vec<u32> = days.collect();
    v.reverse();
    for d in v {
        writeln!(s, "{d},3,2020,{}", offset + d as f64).unwrap();
    }
    s
}

fn write_snapshot(dir: &Path, ecdc: &str, us: &str, uk: &str) -> DataSources {
    std::fs::write(dir.join("ecdc_covid19_daily.csv"), ecdc).unwrap();
    std::fs::write(dir.join("epu_us_daily.csv"), us).unwrap();
    std::fs::write(dir.join("epu_uk_daily.csv"), uk).unwrap();
    DataSources::in_dir(dir)
}

fn window() -> StudyWindow {
    StudyWindow::new(date(3, 5), date(3, 18)).unwrap()
}

/// Expected count for a country code, or for everyone else, on each day.
fn expected(code: &str, outside: bool, deaths: bool, skip_uk: Option<u32>) -> BTreeMap<u32, u64> {
    (1..=20)
        .map(|day| {
            let total: u64 = COUNTRIES
                .iter()
                .enumerate()
                .filter(|(_, (_, g))| !(*g == "UK" && skip_uk == Some(day)))
                .filter(|(_, (_, g))| (*g == code) != outside)
                .map(|(i, _)| if deaths { counts(i, day).1 } else { counts(i, day).0 })
                .sum();
            (day, total)
        })
        .collect()
}

#[test]
fn builds_all_ten_series_over_the_window() {
    let dir = tempfile::tempdir().unwrap();
    let src = write_snapshot(dir.path(), &ecdc_csv(None), &epu_csv(100.0, 1..=25), &epu_csv(50.0, 1..=25));
    let ds = build_dataset(window(), &src, CountMode::Cumulative).unwrap();
    assert_eq!(ds.len(), 14);
    let names: Vec<&str> = ds.series.iter().map(|s| s.name()).collect();
    assert_eq!(names, SERIES_NAMES);
    for s in &ds.series {
        assert_eq!(s.start(), Some(date(3, 5)));
        assert_eq!(s.end(), Some(date(3, 18)));
    }
    let epu = ds.get("lnEPU_US").unwrap();
    assert!((epu.values()[0] - 105f64.ln()).abs() < 1e-12);

    for (name, code, outside, deaths) in [
        ("lncases_US", "US", false, false),
        ("lndeaths_OUS", "US", true, true),
        ("lncases_OUK", "UK", true, false),
        ("lndeaths_UK", "UK", false, true),
    ] {
        let daily = expected(code, outside, deaths, None);
        let s = ds.get(name).unwrap();
        for (i, day) in (5..=18).enumerate() {
            let cum: u64 = daily.range(..=day).map(|(_, v)| v).sum();
            assert!((s.values()[i] - (cum as f64).ln()).abs() < 1e-12, "{name} day {day}");
        }
    }
}

#[test]
fn daily_mode_and_missing_days() {
    let dir = tempfile::tempdir().unwrap();
    let src = write_snapshot(dir.path(), &ecdc_csv(Some(2)), &epu_csv(100.0, 1..=25), &epu_csv(50.0, 1..=25));
    let ds = build_dataset(window(), &src, CountMode::Daily).unwrap();
    let daily = expected("US", true, false, Some(2));
    let s = ds.get("lncases_OUS").unwrap();
    for (i, day) in (5..=18).enumerate() {
        assert!((s.values()[i] - (daily[&day] as f64).ln()).abs() < 1e-12);
    }
    // a missing UK day before the window still counts as zero in the running sum
    let cum = build_dataset(window(), &src, CountMode::Cumulative).unwrap();
    let uk = expected("UK", false, false, Some(2));
    let first: u64 = uk.range(..=5).map(|(_, v)| v).sum();
    assert!((cum.get("lncases_UK").unwrap().values()[0] - (first as f64).ln()).abs() < 1e-12);
}

#[test]
fn short_epu_coverage_is_insufficient_overlap() {
    let dir = tempfile::tempdir().unwrap();
    let src = write_snapshot(dir.path(), &ecdc_csv(None), &epu_csv(100.0, 1..=12), &epu_csv(50.0, 1..=25));
    let err = build_dataset(window(), &src, CountMode::Cumulative).unwrap_err();
    assert!(matches!(err, Error::InsufficientOverlap { overlap: 8, required: 14 }), "{err}");
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn zero_daily_count_names_the_series() {
    let dir = tempfile::tempdir().unwrap();
    let src = write_snapshot(dir.path(), &ecdc_csv(Some(10)), &epu_csv(100.0, 1..=25), &epu_csv(50.0, 1..=25));
    let err = build_dataset(window(), &src, CountMode::Daily).unwrap_err();
    match err {
        Error::NonPositiveValue { series, date: d, .. } => {
            assert_eq!(series, "lncases_UK");
            assert_eq!(d, date(3, 10));
        }
        other => panic!("unexpected {other}"),
    }
}

#[test]
fn malformed_rows_report_their_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.csv");
    let mut lines: Vec<String> = ecdc_csv(None).lines().map(String::from).collect();
    let idx = lines.iter().position(|l| l.starts_with("12/03/2020") && l.contains("France")).unwrap();
    let mut fields: Vec<&str> = lines[idx].split(',').collect();
    fields[4] = "-3";
    lines[idx] = fields.join(",");
    std::fs::write(&path, lines.join("\n")).unwrap();
    let err = read_ecdc(&path).unwrap_err();
    let line = idx as u64 + 1;
    assert!(matches!(err, Error::NegativeCount { line: l, .. } if l == line), "{err}");

    std::fs::write(&path, "dateRep,cases,deaths,geoId\n01/03/2020,1,1,US\n").unwrap();
    assert!(matches!(read_ecdc(&path), Err(Error::MissingColumn { column, .. }) if column == "countriesAndTerritories"));

    let dup = format!("{}{}", ecdc_csv(None), "01/03/2020,1,3,2020,1,1,France,FR,FRA,1\n");
    std::fs::write(&path, dup).unwrap();
    assert!(matches!(read_ecdc(&path), Err(Error::DuplicateDate { .. })));

    std::fs::write(&path, "dateRep,day,month,year,cases,deaths,countriesAndTerritories,geoId\n2020-03-01,1,3,2020,1,1,France,FR\n").unwrap();
    assert!(matches!(read_ecdc(&path), Err(Error::UnparseableDate { line: 2, .. })));
}

#[test]
fn wide_export_round_trips_values() {
    let dir = tempfile::tempdir().unwrap();
    let src = write_snapshot(dir.path(), &ecdc_csv(None), &epu_csv(100.0, 1..=25), &epu_csv(50.0, 1..=25));
    let ds = build_dataset(window(), &src, CountMode::Cumulative).unwrap();
    let mut buf = Vec::new();
    ds.write_wide_csv(&mut buf).unwrap();
    let mut rdr = csv::Reader::from_reader(buf.as_slice());
    assert_eq!(rdr.headers().unwrap().len(), 11);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 14);
    assert_eq!(&rows[0][0], "2020-03-05");
    for (j, s) in ds.series.iter().enumerate() {
        let v: f64 = rows[3][j + 1].parse().unwrap();
        assert_eq!(v, s.values()[3]);
    }
}
