use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix, Qr};

/// Standardized one-step-ahead prediction errors from expanding-window OLS,
/// `w_t = (y_t - x_t'b_{t-1}) / sqrt(1 + x_t'(X'X)_{t-1}^{-1} x_t)` for
/// t = k+1..n. Each window is refitted through its own QR.
///
/// Leading windows whose regressors are collinear (a count that has not moved
/// yet, say) are skipped, so the result can be shorter than `n - k`; it always
/// ends at observation n.
pub fn recursive_residuals(x: &Matrix, y: &[f64]) -> Result<Vec<f64>> {
    let (n, k) = (x.nrows(), x.ncols());
    if y.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "design has {n} rows, response {}",
            y.len()
        )));
    }
    if n <= k {
        return Err(Error::TooFewObservations { n, k });
    }
    let mut out = Vec::with_capacity(n - k);
    for t in k..n {
        let qr = match Qr::new(&x.head_rows(t)) {
            Ok(qr) => qr,
            Err(Error::RankDeficient { .. }) if out.is_empty() && t + 1 < n => continue,
            Err(e) => return Err(e),
        };
        let beta = qr.solve(&y[..t]);
        let xt = x.row(t);
        // x'(X'X)^{-1}x = |R^{-T} x|^2
        let z = qr.solve_rt(xt);
        let leverage = dot(&z, &z);
        out.push((y[t] - dot(xt, &beta)) / (1.0 + leverage).sqrt());
    }
    Ok(out)
}
