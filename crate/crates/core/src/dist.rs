//! Upper-tail probabilities for the reference distributions the tests use.

use statrs::distribution::{ChiSquared, ContinuousCDF, FisherSnedecor, StudentsT};

/// P(F(df1, df2) > stat).
pub fn f_sf(stat: f64, df1: f64, df2: f64) -> f64 {
    if !stat.is_finite() {
        return if stat > 0.0 { 0.0 } else { 1.0 };
    }
    if stat <= 0.0 {
        return 1.0;
    }
    FisherSnedecor::new(df1, df2)
        .map(|d| d.sf(stat).clamp(0.0, 1.0))
        .unwrap_or(f64::NAN)
}

/// P(chi2(df) > stat).
pub fn chi2_sf(stat: f64, df: f64) -> f64 {
    if stat <= 0.0 {
        return 1.0;
    }
    ChiSquared::new(df)
        .map(|d| d.sf(stat).clamp(0.0, 1.0))
        .unwrap_or(f64::NAN)
}

/// Two-sided p-value of a t ratio with `df` degrees of freedom.
pub fn t_two_sided(t: f64, df: f64) -> f64 {
    if !t.is_finite() {
        return 0.0;
    }
    StudentsT::new(0.0, 1.0, df)
        .map(|d| (2.0 * d.sf(t.abs())).clamp(0.0, 1.0))
        .unwrap_or(f64::NAN)
}
