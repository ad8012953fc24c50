//! Writes a synthetic stand-in for the ECDC and daily EPU downloads, in the
//! same file layouts, so the study can run without network access.
//!
//! cargo run -p bootardl --example synth_snapshot -- data 7

use std::error::Error;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use chrono::{Datelike, NaiveDate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};

struct Country {
    name: &'static str,
    geo: &'static str,
    code: &'static str,
    pop: u64,
    peak: (u32, u32),
    height: f64,
    rise: f64,
    decay: f64,
    fatality: f64,
    /// Deterministic first case and first death (month, day).
    first_case: Option<(u32, u32)>,
    first_death: Option<(u32, u32)>,
}

const COUNTRIES: &[Country] = &[
    Country { name: "China", geo: "CN", code: "CHN", pop: 1392730000, peak: (2, 5), height: 3500.0, rise: 0.30, decay: 0.12, fatality: 0.055, first_case: Some((12, 31)), first_death: None },
    Country { name: "South_Korea", geo: "KR", code: "KOR", pop: 51635256, peak: (3, 1), height: 700.0, rise: 0.25, decay: 0.10, fatality: 0.02, first_case: None, first_death: None },
    Country { name: "Italy", geo: "IT", code: "ITA", pop: 60431283, peak: (3, 21), height: 6000.0, rise: 0.22, decay: 0.04, fatality: 0.13, first_case: None, first_death: None },
    Country { name: "Spain", geo: "ES", code: "ESP", pop: 46723749, peak: (3, 26), height: 8000.0, rise: 0.25, decay: 0.04, fatality: 0.10, first_case: None, first_death: None },
    Country { name: "Germany", geo: "DE", code: "DEU", pop: 82927922, peak: (3, 28), height: 6000.0, rise: 0.25, decay: 0.05, fatality: 0.045, first_case: None, first_death: None },
    Country { name: "France", geo: "FR", code: "FRA", pop: 66987244, peak: (4, 1), height: 5000.0, rise: 0.20, decay: 0.04, fatality: 0.15, first_case: None, first_death: None },
    Country { name: "Iran", geo: "IR", code: "IRN", pop: 81800269, peak: (3, 30), height: 3000.0, rise: 0.15, decay: 0.02, fatality: 0.06, first_case: None, first_death: None },
    Country { name: "Russia", geo: "RU", code: "RUS", pop: 144478050, peak: (5, 10), height: 10000.0, rise: 0.12, decay: 0.01, fatality: 0.01, first_case: None, first_death: None },
    Country { name: "Brazil", geo: "BR", code: "BRA", pop: 209469333, peak: (6, 1), height: 25000.0, rise: 0.09, decay: 0.0, fatality: 0.06, first_case: None, first_death: None },
    Country { name: "India", geo: "IN", code: "IND", pop: 1352617328, peak: (7, 1), height: 15000.0, rise: 0.08, decay: 0.0, fatality: 0.03, first_case: None, first_death: None },
    Country { name: "United_Kingdom", geo: "UK", code: "GBR", pop: 66488991, peak: (4, 10), height: 5000.0, rise: 0.20, decay: 0.02, fatality: 0.14, first_case: Some((1, 31)), first_death: Some((3, 5)) },
    Country { name: "United_States_of_America", geo: "US", code: "USA", pop: 327167434, peak: (4, 10), height: 32000.0, rise: 0.20, decay: 0.01, fatality: 0.06, first_case: Some((1, 21)), first_death: Some((2, 29)) },
];

const DEATH_LAG: usize = 8;
const BACKLOG_RATE: f64 = 0.04;

fn date(m: u32, d: u32) -> NaiveDate {
    let y = if m == 12 { 2019 } else { 2020 };
    NaiveDate::from_ymd_opt(y, m, d).unwrap()
}

fn simulate(c: &Country, days: &[NaiveDate], rng: &mut ChaCha8Rng) -> (Vec<u64>, Vec<u64>) {
    let peak = date(c.peak.0, c.peak.1);
    let intensity: Vec<f64> = days
        .iter()
        .map(|d| {
            let s = (*d - peak).num_days() as f64;
            let rate = if s < 0.0 { c.rise * s } else { -c.decay * s };
            c.height * rate.exp()
        })
        .collect();
    // overdispersed reporting with a weekend dip and occasional backlog dumps
    let draw = |lambda: f64, day: NaiveDate, rng: &mut ChaCha8Rng| -> u64 {
        let weekday = day.weekday().num_days_from_monday();
        let dip = if weekday >= 5 { 0.5 } else { 1.0 };
        let backlog = if rng.random::<f64>() < BACKLOG_RATE { 4.0 } else { 1.0 };
        let noisy = dip * backlog * lambda * (0.6 * rng.sample::<f64, _>(StandardNormal)).exp();
        if noisy < 1e-9 {
            0
        } else {
            Poisson::new(noisy).unwrap().sample(rng) as u64
        }
    };
    let mut cases: Vec<u64> = intensity.iter().zip(days).map(|(&l, &d)| draw(l, d, rng)).collect();
    let mut deaths: Vec<u64> = (0..days.len())
        .map(|t| {
            let l = if t >= DEATH_LAG { c.fatality * intensity[t - DEATH_LAG] } else { 0.0 };
            draw(l, days[t], rng)
        })
        .collect();
    let index = |md: (u32, u32)| (date(md.0, md.1) - days[0]).num_days() as usize;
    if let Some(md) = c.first_case {
        cases[index(md)] += 1;
    }
    if let Some(md) = c.first_death {
        deaths[index(md)] += 1;
    }
    (cases, deaths)
}

fn cumulative_log(v: &[u64]) -> Vec<f64> {
    let mut acc = 0u64;
    v.iter()
        .map(|x| {
            acc += x;
            (acc.max(1) as f64).ln()
        })
        .collect()
}

/// Log EPU error-correcting towards `level + slope * driver`.
fn epu(driver: &[f64], level: f64, slope: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut out = vec![level + slope * driver[0]; driver.len()];
    for t in 1..driver.len() {
        let gap = out[t - 1] - level - slope * driver[t - 1];
        let shock: f64 = rng.sample(StandardNormal);
        out[t] = out[t - 1] - 0.8 * gap + 0.12 * shock;
    }
    out.into_iter().map(|v| (v.exp() * 100.0).round() / 100.0).collect()
}

fn main() -> Result<(), Box<dyn Error>> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "data".into()));
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(7);
    std::fs::create_dir_all(&dir)?;

    let first = date(12, 31);
    let days: Vec<NaiveDate> = first.iter_days().take_while(|d| *d <= date(6, 30)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sims: Vec<(Vec<u64>, Vec<u64>)> =
        COUNTRIES.iter().map(|c| simulate(c, &days, &mut rng)).collect();

    let mut w = BufWriter::new(File::create(dir.join("ecdc_covid19_daily.csv"))?);
    writeln!(w, "dateRep,day,month,year,cases,deaths,countriesAndTerritories,geoId,countryterritoryCode,popData2018")?;
    for (c, (cases, deaths)) in COUNTRIES.iter().zip(&sims) {
        for t in (0..days.len()).rev() {
            let d = days[t];
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{}",
                d.format("%d/%m/%Y"),
                d.day(),
                d.month(),
                d.year(),
                cases[t],
                deaths[t],
                c.name,
                c.geo,
                c.code,
                c.pop
            )?;
        }
    }
    w.flush()?;

    let total = |which: usize, skip: &str| -> Vec<u64> {
        (0..days.len())
            .map(|t| {
                COUNTRIES
                    .iter()
                    .zip(&sims)
                    .filter(|(c, _)| c.geo != skip)
                    .map(|(_, s)| if which == 0 { s.0[t] } else { s.1[t] })
                    .sum()
            })
            .collect()
    };
    let country = |geo: &str| COUNTRIES.iter().position(|c| c.geo == geo).unwrap();
    let us = &sims[country("US")];

    // US uncertainty tracks domestic and foreign case counts, UK uncertainty
    // tracks foreign deaths and cases.
    let us_driver: Vec<f64> = cumulative_log(&us.0)
        .iter()
        .zip(cumulative_log(&total(0, "US")))
        .map(|(a, b)| 0.5 * a + 0.5 * b)
        .collect();
    let uk_driver: Vec<f64> = cumulative_log(&total(1, "UK"))
        .iter()
        .zip(cumulative_log(&total(0, "UK")))
        .map(|(a, b)| 0.5 * a + 0.5 * b)
        .collect();
    let epu_start = date(1, 1);
    let offset = (epu_start - first).num_days() as usize;
    for (file, driver, level) in [
        ("epu_us_daily.csv", &us_driver, 4.5),
        ("epu_uk_daily.csv", &uk_driver, 4.2),
    ] {
        let series = epu(&driver[offset..], level, 0.15, &mut rng);
        let mut w = BufWriter::new(File::create(dir.join(file))?);
        writeln!(w, "day,month,year,daily_policy_index")?;
        for (d, v) in days[offset..].iter().zip(series) {
            writeln!(w, "{},{},{},{v:.2}", d.day(), d.month(), d.year())?;
        }
        w.flush()?;
    }
    println!("wrote snapshot to {} (seed {seed})", dir.display());
    Ok(())
}
