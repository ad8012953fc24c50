//! C ABI over the `bootardl` library.
//!
//! Every function returns a [`BootardlStatus`]. On failure the message is kept
//! per thread and read with [`bootardl_last_error`]. Fitted models cross the
//! boundary as opaque handles that the caller releases with the matching
//! `_free` function. Arrays are passed as pointer plus length; matrices are
//! row-major.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bootardl::ardl::{ecm_estimates, select_lags, ArdlSpec};
use bootardl::bootstrap::{self, bootstrap_test, BootstrapConfig, BootstrapOutcome, Classification};
use bootardl::linalg::Matrix;
use bootardl::regress::{ols_fit, RegressionFit};
use bootardl::unitroot::{adf_test, pp_test, AdfConfig, Deterministic, PpConfig, UnitRootResult};
use bootardl::{Error, ErrorKind};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BootardlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ConfigError = 3,
    DataError = 4,
    EstimationError = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BootardlDeterministic {
    Constant = 0,
    ConstantTrend = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BootardlClassification {
    Cointegrated = 0,
    DegenerateCase1 = 1,
    DegenerateCase2 = 2,
    NoCointegration = 3,
}

/// Overall F, t-dependent and F-independent values.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BootardlTriple {
    pub overall_f: f64,
    pub t_dep: f64,
    pub f_indep: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BootardlUnitRoot {
    pub statistic: f64,
    /// Augmentation lags (ADF) or bandwidth (PP).
    pub lag: usize,
    pub nobs: usize,
    pub cv_1pct: f64,
    pub cv_5pct: f64,
    pub cv_10pct: f64,
    pub reject_1pct: bool,
    pub reject_5pct: bool,
    pub reject_10pct: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BootardlEstimate {
    pub value: f64,
    pub std_error: f64,
    pub p_value: f64,
}

/// Opaque OLS fit.
pub struct BootardlFit(RegressionFit);

/// Opaque bootstrap cointegration result.
pub struct BootardlCoint(BootstrapOutcome);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> BootardlStatus {
    match e {
        Error::InvalidArgument(_) | Error::InvalidLagCount | Error::DimensionMismatch(_) => {
            BootardlStatus::InvalidArgument
        }
        _ => match e.kind() {
            ErrorKind::Config => BootardlStatus::ConfigError,
            ErrorKind::Data => BootardlStatus::DataError,
            ErrorKind::Estimation => BootardlStatus::EstimationError,
        },
    }
}

enum Failure {
    Null(&'static str),
    Arg(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BootardlStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BootardlStatus::Ok,
        Ok(Err(Failure::Null(name))) => {
            set_error(format!("null pointer: {name}"));
            BootardlStatus::NullPointer
        }
        Ok(Err(Failure::Arg(msg))) => {
            set_error(msg);
            BootardlStatus::InvalidArgument
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            BootardlStatus::Panic
        }
    }
}

unsafe fn slice<'a>(p: *const f64, len: usize, name: &'static str) -> Result<&'a [f64], Failure> {
    if p.is_null() {
        return Err(Failure::Null(name));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn out_ref<'a, T>(p: *mut T, name: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(name))
}

unsafe fn handle<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(name))
}

unsafe fn copy_out(src: &[f64], out: *mut f64, len: usize) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    if len < src.len() {
        return Err(Failure::Arg(format!("buffer of {len} is shorter than {}", src.len())));
    }
    ptr::copy_nonoverlapping(src.as_ptr(), out, src.len());
    Ok(())
}

fn deterministic(d: BootardlDeterministic) -> Deterministic {
    match d {
        BootardlDeterministic::Constant => Deterministic::Constant,
        BootardlDeterministic::ConstantTrend => Deterministic::ConstantTrend,
    }
}

fn unit_root(r: &UnitRootResult) -> BootardlUnitRoot {
    BootardlUnitRoot {
        statistic: r.statistic,
        lag: r.lag,
        nobs: r.nobs,
        cv_1pct: r.critical_values.one,
        cv_5pct: r.critical_values.five,
        cv_10pct: r.critical_values.ten,
        reject_1pct: r.reject.one,
        reject_5pct: r.reject.five,
        reject_10pct: r.reject.ten,
    }
}

fn classification(c: Classification) -> BootardlClassification {
    match c {
        Classification::Cointegrated => BootardlClassification::Cointegrated,
        Classification::DegenerateCase1 => BootardlClassification::DegenerateCase1,
        Classification::DegenerateCase2 => BootardlClassification::DegenerateCase2,
        Classification::NoCointegration => BootardlClassification::NoCointegration,
    }
}

fn triple(t: bootstrap::CriticalTriple) -> BootardlTriple {
    BootardlTriple {
        overall_f: t.overall_f,
        t_dep: t.t_dep,
        f_indep: t.f_indep,
    }
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn bootardl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bootardl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// OLS of `y` (length `nrows`) on the row-major `nrows x ncols` matrix `x`.
///
/// # Safety
/// `x` must point to `nrows * ncols` doubles, `y` to `nrows`, and `out` to
/// writable storage for one handle pointer.
#[no_mangle]
pub unsafe extern "C" fn bootardl_ols(
    x: *const f64,
    nrows: usize,
    ncols: usize,
    y: *const f64,
    out: *mut *mut BootardlFit,
) -> BootardlStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let cells = nrows
            .checked_mul(ncols)
            .ok_or_else(|| Failure::Arg("matrix size overflows".into()))?;
        let xs = slice(x, cells, "x")?;
        let ys = slice(y, nrows, "y")?;
        let fit = ols_fit(&Matrix::from_row_major(nrows, ncols, xs.to_vec()), ys)?;
        *out = Box::into_raw(Box::new(BootardlFit(fit)));
        Ok(())
    })
}

/// Number of coefficients in `fit`, or 0 for a null handle.
///
/// # Safety
/// `fit` must be null or a live handle from [`bootardl_ols`].
#[no_mangle]
pub unsafe extern "C" fn bootardl_fit_ncoef(fit: *const BootardlFit) -> usize {
    fit.as_ref().map_or(0, |f| f.0.coefficients.len())
}

/// Copies the coefficients into `out`, which holds `len` doubles.
///
/// # Safety
/// `fit` must be a live handle and `out` must point to `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn bootardl_fit_coefficients(fit: *const BootardlFit, out: *mut f64, len: usize) -> BootardlStatus {
    guard(|| copy_out(&handle(fit, "fit")?.0.coefficients, out, len))
}

/// Copies the coefficient standard errors into `out`.
///
/// # Safety
/// As for [`bootardl_fit_coefficients`].
#[no_mangle]
pub unsafe extern "C" fn bootardl_fit_std_errors(fit: *const BootardlFit, out: *mut f64, len: usize) -> BootardlStatus {
    guard(|| copy_out(&handle(fit, "fit")?.0.std_errors, out, len))
}

/// Copies the residuals (one per observation) into `out`.
///
/// # Safety
/// As for [`bootardl_fit_coefficients`].
#[no_mangle]
pub unsafe extern "C" fn bootardl_fit_residuals(fit: *const BootardlFit, out: *mut f64, len: usize) -> BootardlStatus {
    guard(|| copy_out(&handle(fit, "fit")?.0.residuals, out, len))
}

/// Residual sum of squares, residual variance and Schwarz criterion.
///
/// # Safety
/// `fit` must be a live handle; each out pointer may be null to skip it.
#[no_mangle]
pub unsafe extern "C" fn bootardl_fit_summary(
    fit: *const BootardlFit,
    rss: *mut f64,
    sigma2: *mut f64,
    sbc: *mut f64,
) -> BootardlStatus {
    guard(|| {
        let f = &handle(fit, "fit")?.0;
        if let Some(r) = rss.as_mut() {
            *r = f.rss;
        }
        if let Some(s) = sigma2.as_mut() {
            *s = f.sigma2;
        }
        if let Some(b) = sbc.as_mut() {
            *b = f.sbc();
        }
        Ok(())
    })
}

/// Releases a fit. Null is ignored.
///
/// # Safety
/// `fit` must be null or a handle not already freed.
#[no_mangle]
pub unsafe extern "C" fn bootardl_fit_free(fit: *mut BootardlFit) {
    if !fit.is_null() {
        drop(Box::from_raw(fit));
    }
}

/// ADF test on levels. A negative `max_lag` uses the Schwert rule.
///
/// # Safety
/// `y` must point to `len` doubles and `out` to one [`BootardlUnitRoot`].
#[no_mangle]
pub unsafe extern "C" fn bootardl_adf(
    y: *const f64,
    len: usize,
    det: BootardlDeterministic,
    max_lag: i64,
    out: *mut BootardlUnitRoot,
) -> BootardlStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let cfg = AdfConfig {
            deterministic: deterministic(det),
            max_lag: usize::try_from(max_lag).ok(),
        };
        *out = unit_root(&adf_test(slice(y, len, "y")?, cfg)?);
        Ok(())
    })
}

/// Phillips-Perron Z-tau. A negative `bandwidth` uses the Newey-West rule.
///
/// # Safety
/// As for [`bootardl_adf`].
#[no_mangle]
pub unsafe extern "C" fn bootardl_pp(
    y: *const f64,
    len: usize,
    det: BootardlDeterministic,
    bandwidth: i64,
    out: *mut BootardlUnitRoot,
) -> BootardlStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let cfg = PpConfig {
            deterministic: deterministic(det),
            bandwidth: usize::try_from(bandwidth).ok(),
        };
        *out = unit_root(&pp_test(slice(y, len, "y")?, cfg)?);
        Ok(())
    })
}

/// SBC choice of `(p, q)` over `1..=p_max` and `0..=q_max`.
///
/// # Safety
/// `y` and `x` must point to `len` doubles; `p` and `q` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bootardl_select_lags(
    y: *const f64,
    x: *const f64,
    len: usize,
    p_max: usize,
    q_max: usize,
    p: *mut usize,
    q: *mut usize,
) -> BootardlStatus {
    guard(|| {
        let (p, q) = (out_ref(p, "p")?, out_ref(q, "q")?);
        let sel = select_lags(slice(y, len, "y")?, slice(x, len, "x")?, ("y", "x"), p_max, q_max)?;
        *p = sel.spec.p;
        *q = sel.spec.q;
        Ok(())
    })
}

/// Fits the UECM with lags `(p, q)` and bootstraps the three statistics under
/// the joint null. The result depends only on the inputs and `seed`.
///
/// # Safety
/// `y` and `x` must point to `len` doubles; `out` must be writable.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn bootardl_coint_test(
    y: *const f64,
    x: *const f64,
    len: usize,
    p: usize,
    q: usize,
    replications: usize,
    level: f64,
    seed: u64,
    out: *mut *mut BootardlCoint,
) -> BootardlStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let (y, x) = (slice(y, len, "y")?, slice(x, len, "x")?);
        let spec = ArdlSpec::new("y", "x", p, q)?;
        let cfg = BootstrapConfig::new(replications, level, seed)?;
        *out = Box::into_raw(Box::new(BootardlCoint(bootstrap_test(y, x, &spec, &cfg)?)));
        Ok(())
    })
}

/// Sample statistics of a cointegration test.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bootardl_coint_statistics(h: *const BootardlCoint, out: *mut BootardlTriple) -> BootardlStatus {
    guard(|| {
        let s = handle(h, "handle")?.0.statistics;
        *out_ref(out, "out")? = BootardlTriple {
            overall_f: s.overall_f,
            t_dep: s.t_dep,
            f_indep: s.f_indep,
        };
        Ok(())
    })
}

/// Bootstrap critical values at `level`, taken from the stored draws.
///
/// # Safety
/// As for [`bootardl_coint_statistics`].
#[no_mangle]
pub unsafe extern "C" fn bootardl_coint_critical(
    h: *const BootardlCoint,
    level: f64,
    out: *mut BootardlTriple,
) -> BootardlStatus {
    guard(|| {
        let h = handle(h, "handle")?;
        let out = out_ref(out, "out")?;
        if !(level > 0.0 && level < 0.5) {
            return Err(Failure::Arg(format!("level must lie in (0, 0.5), got {level}")));
        }
        *out = triple(h.0.bootstrap.at(level));
        Ok(())
    })
}

/// Verdict at the level the test was run with.
///
/// # Safety
/// As for [`bootardl_coint_statistics`].
#[no_mangle]
pub unsafe extern "C" fn bootardl_coint_classification(
    h: *const BootardlCoint,
    out: *mut BootardlClassification,
) -> BootardlStatus {
    guard(|| {
        let c = handle(h, "handle")?.0.verdict.classification;
        *out_ref(out, "out")? = classification(c);
        Ok(())
    })
}

/// Error-correction coefficient and long-run coefficient of x.
///
/// # Safety
/// `h` must be a live handle; `ect` and `long_run` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bootardl_coint_ecm(
    h: *const BootardlCoint,
    ect: *mut BootardlEstimate,
    long_run: *mut BootardlEstimate,
) -> BootardlStatus {
    guard(|| {
        let h = handle(h, "handle")?;
        let (ect, long_run) = (out_ref(ect, "ect")?, out_ref(long_run, "long_run")?);
        let e = ecm_estimates(&h.0.uecm)?;
        let conv = |v: &bootardl::ardl::Estimate| BootardlEstimate {
            value: v.value,
            std_error: v.std_error,
            p_value: v.p_value,
        };
        *ect = conv(&e.ect);
        *long_run = conv(&e.long_run);
        Ok(())
    })
}

/// Releases a cointegration result. Null is ignored.
///
/// # Safety
/// `h` must be null or a handle not already freed.
#[no_mangle]
pub unsafe extern "C" fn bootardl_coint_free(h: *mut BootardlCoint) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Classification of given statistics against given critical values.
#[no_mangle]
pub extern "C" fn bootardl_decide(stats: BootardlTriple, critical: BootardlTriple) -> BootardlClassification {
    let v = bootstrap::decide(
        bootstrap::TestStatistics {
            overall_f: stats.overall_f,
            t_dep: stats.t_dep,
            f_indep: stats.f_indep,
        },
        bootstrap::CriticalTriple {
            overall_f: critical.overall_f,
            t_dep: critical.t_dep,
            f_indep: critical.f_indep,
        },
    );
    classification(v.classification)
}
