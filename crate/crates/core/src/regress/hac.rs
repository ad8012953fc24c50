use crate::error::{Error, Result};

/// Sample autocovariance at lag `j`, mean removed, divisor n.
pub fn autocovariance(u: &[f64], j: usize) -> f64 {
    let n = u.len();
    let mean = u.iter().sum::<f64>() / n as f64;
    (j..n)
        .map(|t| (u[t] - mean) * (u[t - j] - mean))
        .sum::<f64>()
        / n as f64
}

/// Bartlett-kernel long-run variance
/// `g0 + 2 * sum_{j=1..L} (1 - j/(L+1)) g_j`.
pub fn newey_west_lrv(u: &[f64], bandwidth: usize) -> Result<f64> {
    if u.len() <= bandwidth || u.is_empty() {
        return Err(Error::BandwidthTooLarge {
            bandwidth,
            len: u.len(),
        });
    }
    let mut lrv = autocovariance(u, 0);
    for j in 1..=bandwidth {
        let w = 1.0 - j as f64 / (bandwidth as f64 + 1.0);
        lrv += 2.0 * w * autocovariance(u, j);
    }
    Ok(lrv.max(0.0))
}
