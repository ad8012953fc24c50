use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use bootardl::simulate::{error_correcting, random_walk};
use bootardl_ffi::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn last_error() -> String {
    let p = bootardl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn cointegrated_pair(seed: u64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = random_walk(&mut rng, n);
    let e = bootardl::simulate::normals(&mut rng, n);
    (error_correcting(&x, &e, -0.5, 0.8), x)
}

#[test]
fn ols_round_trip_through_handle() {
    let x: Vec<f64> = (0..6).flat_map(|i| [1.0, i as f64, (i * i) as f64]).collect();
    let y: Vec<f64> = (0..6).map(|i| 2.0 - 0.5 * i as f64 + 0.25 * (i * i) as f64 + if i % 2 == 0 { 0.1 } else { -0.1 }).collect();
    let mut fit = ptr::null_mut();
    let s = unsafe { bootardl_ols(x.as_ptr(), 6, 3, y.as_ptr(), &mut fit) };
    assert_eq!(s, BootardlStatus::Ok);
    assert_eq!(unsafe { bootardl_fit_ncoef(fit) }, 3);

    let mut b = [0.0; 3];
    let mut se = [0.0; 3];
    let mut u = [0.0; 6];
    unsafe {
        assert_eq!(bootardl_fit_coefficients(fit, b.as_mut_ptr(), 3), BootardlStatus::Ok);
        assert_eq!(bootardl_fit_std_errors(fit, se.as_mut_ptr(), 3), BootardlStatus::Ok);
        assert_eq!(bootardl_fit_residuals(fit, u.as_mut_ptr(), 6), BootardlStatus::Ok);
    }
    let direct = bootardl::regress::ols_fit(&bootardl::linalg::Matrix::from_row_major(6, 3, x.clone()), &y).unwrap();
    assert_eq!(b.to_vec(), direct.coefficients);
    assert_eq!(se.to_vec(), direct.std_errors);
    let rss_from_u: f64 = u.iter().map(|v| v * v).sum();

    let (mut rss, mut sbc) = (0.0, 0.0);
    unsafe {
        assert_eq!(bootardl_fit_summary(fit, &mut rss, ptr::null_mut(), &mut sbc), BootardlStatus::Ok);
    }
    assert!((rss - rss_from_u).abs() < 1e-12);
    assert_eq!(sbc, direct.sbc());

    let mut short = [0.0; 2];
    let s = unsafe { bootardl_fit_coefficients(fit, short.as_mut_ptr(), 2) };
    assert_eq!(s, BootardlStatus::InvalidArgument);
    assert!(last_error().contains("shorter"));
    unsafe { bootardl_fit_free(fit) };
    unsafe { bootardl_fit_free(ptr::null_mut()) };
}

#[test]
fn rank_deficient_design_reports_estimation_error() {
    let x = [1.0, 2.0, 1.0, 2.0, 1.0, 2.0, 1.0, 2.0];
    let y = [1.0, 2.0, 3.0, 4.0];
    let mut fit = ptr::null_mut();
    let s = unsafe { bootardl_ols(x.as_ptr(), 4, 2, y.as_ptr(), &mut fit) };
    assert_eq!(s, BootardlStatus::EstimationError);
    assert!(fit.is_null());
    assert!(last_error().contains("rank deficient"));
}

#[test]
fn successful_call_clears_last_error() {
    let y = [1.0];
    unsafe { bootardl_ols(y.as_ptr(), 1, 1, ptr::null(), &mut ptr::null_mut()) };
    assert!(!bootardl_last_error().is_null());
    let x = [1.0, 1.0, 1.0];
    let yy = [1.0, 2.0, 3.0];
    let mut fit = ptr::null_mut();
    assert_eq!(unsafe { bootardl_ols(x.as_ptr(), 3, 1, yy.as_ptr(), &mut fit) }, BootardlStatus::Ok);
    assert!(bootardl_last_error().is_null());
    unsafe { bootardl_fit_free(fit) };
}

#[test]
fn unit_root_matches_library() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let y = random_walk(&mut rng, 120);
    let mut out = BootardlUnitRoot::default();
    let s = unsafe { bootardl_adf(y.as_ptr(), y.len(), BootardlDeterministic::Constant, -1, &mut out) };
    assert_eq!(s, BootardlStatus::Ok);
    let lib = bootardl::unitroot::adf_test(&y, Default::default()).unwrap();
    assert_eq!(out.statistic, lib.statistic);
    assert_eq!(out.lag, lib.lag);
    assert_eq!(out.reject_5pct, lib.reject.five);

    let s = unsafe { bootardl_pp(y.as_ptr(), y.len(), BootardlDeterministic::ConstantTrend, 3, &mut out) };
    assert_eq!(s, BootardlStatus::Ok);
    assert_eq!(out.lag, 3);
    assert!(out.cv_1pct < out.cv_5pct && out.cv_5pct < out.cv_10pct);

    let s = unsafe { bootardl_adf(y.as_ptr(), 3, BootardlDeterministic::Constant, -1, &mut out) };
    assert_ne!(s, BootardlStatus::Ok);
}

#[test]
fn coint_handle_is_seed_deterministic() {
    let (y, x) = cointegrated_pair(11, 100);
    let (mut p, mut q) = (0, 0);
    let s = unsafe { bootardl_select_lags(y.as_ptr(), x.as_ptr(), y.len(), 3, 3, &mut p, &mut q) };
    assert_eq!(s, BootardlStatus::Ok);
    assert!(p >= 1);

    let run = || {
        let mut h = ptr::null_mut();
        let s = unsafe { bootardl_coint_test(y.as_ptr(), x.as_ptr(), y.len(), p, q, 200, 0.05, 99, &mut h) };
        assert_eq!(s, BootardlStatus::Ok, "{}", last_error());
        let mut stats = BootardlTriple::default();
        let mut cv = BootardlTriple::default();
        let mut class = BootardlClassification::NoCointegration;
        unsafe {
            assert_eq!(bootardl_coint_statistics(h, &mut stats), BootardlStatus::Ok);
            assert_eq!(bootardl_coint_critical(h, 0.05, &mut cv), BootardlStatus::Ok);
            assert_eq!(bootardl_coint_classification(h, &mut class), BootardlStatus::Ok);
        }
        (h, stats, cv, class)
    };
    let (h1, s1, c1, k1) = run();
    let (h2, s2, c2, k2) = run();
    assert_eq!((s1, c1, k1), (s2, c2, k2));
    assert_eq!(k1, bootardl_decide(s1, c1));
    assert_eq!(k1, BootardlClassification::Cointegrated);

    let (mut ect, mut lr) = (BootardlEstimate::default(), BootardlEstimate::default());
    assert_eq!(unsafe { bootardl_coint_ecm(h1, &mut ect, &mut lr) }, BootardlStatus::Ok);
    assert!(ect.value < 0.0);
    assert!((lr.value - 0.8).abs() < 0.2, "long run {}", lr.value);

    let mut cv = BootardlTriple::default();
    assert_eq!(unsafe { bootardl_coint_critical(h1, 0.7, &mut cv) }, BootardlStatus::InvalidArgument);
    unsafe {
        bootardl_coint_free(h1);
        bootardl_coint_free(h2);
    }
}

#[test]
fn coint_config_errors() {
    let (y, x) = cointegrated_pair(2, 60);
    let mut h = ptr::null_mut();
    let s = unsafe { bootardl_coint_test(y.as_ptr(), x.as_ptr(), y.len(), 1, 1, 10, 0.05, 1, &mut h) };
    assert_eq!(s, BootardlStatus::ConfigError);
    assert!(last_error().contains("replications"));
    let s = unsafe { bootardl_coint_test(y.as_ptr(), x.as_ptr(), y.len(), 0, 1, 200, 0.05, 1, &mut h) };
    assert_eq!(s, BootardlStatus::InvalidArgument);
    assert!(h.is_null());
}

#[test]
fn decide_covers_all_classes() {
    let cv = BootardlTriple { overall_f: 5.0, t_dep: -3.0, f_indep: 6.0 };
    let t = |f, t, fi| BootardlTriple { overall_f: f, t_dep: t, f_indep: fi };
    assert_eq!(bootardl_decide(t(6.0, -4.0, 7.0), cv), BootardlClassification::Cointegrated);
    assert_eq!(bootardl_decide(t(6.0, -4.0, 5.0), cv), BootardlClassification::DegenerateCase1);
    assert_eq!(bootardl_decide(t(6.0, -2.0, 7.0), cv), BootardlClassification::DegenerateCase2);
    assert_eq!(bootardl_decide(t(4.0, -4.0, 7.0), cv), BootardlClassification::NoCointegration);
}

/// Compiles the C smoke program against the generated header and the static
/// library built alongside this test.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("bootardl.h").is_file());
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libbootardl_ffi.a");
    assert!(lib.is_file(), "missing {}", lib.display());
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("bootardl_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}: {}", out.status, String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
