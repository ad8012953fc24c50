//! MacKinnon response-surface critical values for the Dickey-Fuller tau
//! statistic with a single series.
//!
//! `cv(T) = b0 + b1/T + b2/T^2 + b3/T^3`, coefficients from MacKinnon (2010),
//! "Critical Values for Cointegration Tests", Queen's Economics Department
//! Working Paper 1227, Table 2 rows for N = 1 (as also shipped by
//! statsmodels `adfvalues.py`).

use serde::{Deserialize, Serialize};

use super::Deterministic;

const TAU_C: [[f64; 4]; 3] = [
    [-3.43035, -6.5393, -16.786, -79.433],
    [-2.86154, -2.8903, -4.234, -40.040],
    [-2.56677, -1.5384, -2.809, 0.0],
];

const TAU_CT: [[f64; 4]; 3] = [
    [-3.95877, -9.0531, -28.428, -134.155],
    [-3.41049, -4.3904, -9.036, -45.374],
    [-3.12705, -2.5856, -3.925, -22.380],
];

/// Left-tail critical values at 1%, 5% and 10%.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalValues {
    pub one: f64,
    pub five: f64,
    pub ten: f64,
}

impl CriticalValues {
    /// Critical value for one of the tabulated levels.
    pub fn at(&self, level: f64) -> Option<f64> {
        match level {
            l if (l - 0.01).abs() < 1e-12 => Some(self.one),
            l if (l - 0.05).abs() < 1e-12 => Some(self.five),
            l if (l - 0.10).abs() < 1e-12 => Some(self.ten),
            _ => None,
        }
    }
}

pub fn mackinnon(det: Deterministic, nobs: usize) -> CriticalValues {
    let table = match det {
        Deterministic::Constant => &TAU_C,
        Deterministic::ConstantTrend => &TAU_CT,
    };
    let inv = 1.0 / nobs as f64;
    let eval = |b: &[f64; 4]| b[0] + b[1] * inv + b[2] * inv * inv + b[3] * inv * inv * inv;
    CriticalValues {
        one: eval(&table[0]),
        five: eval(&table[1]),
        ten: eval(&table[2]),
    }
}
