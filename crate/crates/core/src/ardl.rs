//! Bivariate ARDL specification, Schwarz lag selection and the unrestricted
//! error correction model
//!
//! ```text
//! dy_t = b0 + sum_{i=1}^{p-1} a1_i dy_{t-i} + sum_{j=0}^{q-1} a2_j dx_{t-j}
//!        + mu1 y_{t-1} + mu2 x_{t-1} + u_t
//! ```
//!
//! An `ArdlSpec` with lags `(p, q)` is the levels ARDL(p, q) notation: the
//! UECM carries `p - 1` lagged differences of y and `q` differences of x
//! starting at the contemporaneous one.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::regress::{ols_fit, RegressionFit};
use crate::series::{LagColumn, LaggedDesign, RealizedDesign, Source};

/// Relative slack under which two Schwarz values count as tied.
const SBC_TIE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArdlSpec {
    pub dependent: String,
    pub independent: String,
    pub p: usize,
    pub q: usize,
    pub constant: bool,
}

impl ArdlSpec {
    pub fn new(dependent: impl Into<String>, independent: impl Into<String>, p: usize, q: usize) -> Result<Self> {
        if p < 1 {
            return Err(Error::InvalidArgument("ARDL dependent lag order must be at least 1".into()));
        }
        Ok(Self {
            dependent: dependent.into(),
            independent: independent.into(),
            p,
            q,
            constant: true,
        })
    }

    /// Unnamed spec, handy for simulations.
    pub fn lags(p: usize, q: usize) -> Self {
        Self::new("y", "x", p, q).expect("p >= 1")
    }

    pub fn label(&self) -> String {
        format!("{},{}", self.p, self.q)
    }

    /// First observation the UECM can use.
    pub fn min_start(&self) -> usize {
        self.p.max(self.q).max(1)
    }

    pub fn design(&self) -> LaggedDesign {
        let mut cols = Vec::new();
        for i in 1..self.p {
            cols.push(LagColumn::delta(Source::Dependent, i));
        }
        for j in 0..self.q {
            cols.push(LagColumn::delta(Source::Independent, j));
        }
        cols.push(LagColumn::level(Source::Dependent, 1));
        cols.push(LagColumn::level(Source::Independent, 1));
        LaggedDesign::new(self.constant, true, cols)
    }

    /// Coefficient positions inside the UECM regression.
    pub fn layout(&self) -> UecmLayout {
        let c = usize::from(self.constant);
        let dy_start = c;
        let dx_start = dy_start + self.p - 1;
        let level_y = dx_start + self.q;
        UecmLayout {
            constant: self.constant.then_some(0),
            dy_lags: (dy_start..dx_start).collect(),
            dx_lags: (dx_start..level_y).collect(),
            level_y,
            level_x: level_y + 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UecmLayout {
    pub constant: Option<usize>,
    /// dy_{t-1}, ..., dy_{t-p+1}
    pub dy_lags: Vec<usize>,
    /// dx_t, ..., dx_{t-q+1}
    pub dx_lags: Vec<usize>,
    pub level_y: usize,
    pub level_x: usize,
}

impl UecmLayout {
    pub fn len(&self) -> usize {
        self.level_x + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UecmFit {
    pub spec: ArdlSpec,
    pub layout: UecmLayout,
    pub fit: RegressionFit,
    /// First observation of the estimation sample in the input series.
    pub start: usize,
    pub design: Matrix,
    pub response: Vec<f64>,
}

impl UecmFit {
    /// Coefficient on `y_{t-1}`.
    pub fn mu1(&self) -> f64 {
        self.fit.coefficients[self.layout.level_y]
    }

    /// Coefficient on `x_{t-1}`.
    pub fn mu2(&self) -> f64 {
        self.fit.coefficients[self.layout.level_x]
    }

    pub fn constant(&self) -> Option<f64> {
        self.layout.constant.map(|i| self.fit.coefficients[i])
    }

    pub fn dy_coefficients(&self) -> Vec<f64> {
        self.layout.dy_lags.iter().map(|&i| self.fit.coefficients[i]).collect()
    }

    pub fn dx_coefficients(&self) -> Vec<f64> {
        self.layout.dx_lags.iter().map(|&i| self.fit.coefficients[i]).collect()
    }
}

/// OLS of the UECM on the sample starting at the lag orders' minimum start.
pub fn fit_uecm(y: &[f64], x: &[f64], spec: &ArdlSpec) -> Result<UecmFit> {
    fit_uecm_from(y, x, spec, 0)
}

/// As [`fit_uecm`] but with the sample starting no earlier than `start`.
pub fn fit_uecm_from(y: &[f64], x: &[f64], spec: &ArdlSpec, start: usize) -> Result<UecmFit> {
    let design = spec.design().with_start(start);
    let RealizedDesign { x: mat, y: resp, start } = design.realize(y, x)?;
    let fit = ols_fit(&mat, &resp)?;
    Ok(UecmFit {
        spec: spec.clone(),
        layout: spec.layout(),
        fit,
        start,
        design: mat,
        response: resp,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LagCandidate {
    pub p: usize,
    pub q: usize,
    pub sbc: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LagSelection {
    pub spec: ArdlSpec,
    pub candidates: Vec<LagCandidate>,
}

/// Grid search over p in 1..=p_max, q in 0..=q_max, every candidate fitted
/// on the sample trimmed to the largest lag of the grid.
pub fn select_lags(
    y: &[f64],
    x: &[f64],
    spec_names: (&str, &str),
    p_max: usize,
    q_max: usize,
) -> Result<LagSelection> {
    if p_max < 1 {
        return Err(Error::InvalidArgument("p_max must be at least 1".into()));
    }
    let need = p_max + q_max + 5;
    if y.len() <= need {
        return Err(Error::SeriesTooShort { needed: need, got: y.len() });
    }
    let common = p_max.max(q_max).max(1);
    let grid: Vec<(usize, usize)> = (1..=p_max)
        .flat_map(|p| (0..=q_max).map(move |q| (p, q)))
        .collect();
    let candidates = grid
        .par_iter()
        .map(|&(p, q)| {
            let spec = ArdlSpec::lags(p, q);
            fit_uecm_from(y, x, &spec, common).map(|f| LagCandidate { p, q, sbc: f.fit.sbc() })
        })
        .collect::<Result<Vec<_>>>()?;
    let best = pick_min_sbc(&candidates);
    let mut spec = ArdlSpec::new(spec_names.0, spec_names.1, best.p, best.q)?;
    spec.constant = true;
    Ok(LagSelection { spec, candidates })
}

/// Smallest Schwarz value; near-ties go to the smaller total lag order,
/// then to the smaller p.
pub fn pick_min_sbc(candidates: &[LagCandidate]) -> &LagCandidate {
    let mut order: Vec<&LagCandidate> = candidates.iter().collect();
    order.sort_by_key(|c| (c.p + c.q, c.p));
    let mut best = order[0];
    for c in order.into_iter().skip(1) {
        let slack = SBC_TIE * best.sbc.abs().max(1.0);
        if c.sbc < best.sbc - slack {
            best = c;
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
    pub p_value: f64,
}

impl Estimate {
    pub fn t_ratio(&self) -> f64 {
        self.value / self.std_error
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EcmEstimates {
    /// `-mu2 / mu1` with a delta-method standard error.
    pub long_run: Estimate,
    /// `-b0 / mu1`, the intercept of the long-run relation.
    pub long_run_constant: Option<Estimate>,
    /// Error-correction coefficient, equal to `mu1`.
    pub ect: Estimate,
    /// Coefficients on dx_t, dx_{t-1}, ...
    pub short_run_dx: Vec<Estimate>,
    /// Coefficients on dy_{t-1}, ...
    pub short_run_dy: Vec<Estimate>,
    pub constant: Option<Estimate>,
    pub df: usize,
}

/// Smallest |mu1| for which the long-run ratio is reported.
pub const MIN_ECT: f64 = 1e-8;

/// Long- and short-run coefficients read off one UECM estimate.
pub fn ecm_estimates(uecm: &UecmFit) -> Result<EcmEstimates> {
    let f = &uecm.fit;
    let lay = &uecm.layout;
    let mu1 = uecm.mu1();
    if mu1.abs() < MIN_ECT {
        return Err(Error::DegenerateLongRun { mu1 });
    }
    let df = f.df_resid();
    let cov = &f.covariance;
    let coef = |i: usize| Estimate {
        value: f.coefficients[i],
        std_error: f.std_errors[i],
        p_value: f.p_value(i),
    };
    let ratio = |num: usize| {
        let value = -f.coefficients[num] / mu1;
        // gradient of -b/mu1 with respect to (mu1, b)
        let g1 = f.coefficients[num] / (mu1 * mu1);
        let g2 = -1.0 / mu1;
        let (i, j) = (lay.level_y, num);
        let var = g1 * g1 * cov[(i, i)] + 2.0 * g1 * g2 * cov[(i, j)] + g2 * g2 * cov[(j, j)];
        let se = var.max(0.0).sqrt();
        Estimate {
            value,
            std_error: se,
            p_value: crate::dist::t_two_sided(value / se, df as f64),
        }
    };
    Ok(EcmEstimates {
        long_run: ratio(lay.level_x),
        long_run_constant: lay.constant.map(ratio),
        ect: coef(lay.level_y),
        short_run_dx: lay.dx_lags.iter().map(|&i| coef(i)).collect(),
        short_run_dy: lay.dy_lags.iter().map(|&i| coef(i)).collect(),
        constant: lay.constant.map(coef),
        df,
    })
}

/// `-mu2 / mu1`.
pub fn long_run_ratio(mu1: f64, mu2: f64) -> Result<f64> {
    if mu1.abs() < MIN_ECT {
        return Err(Error::DegenerateLongRun { mu1 });
    }
    Ok(-mu2 / mu1)
}

/// Levels form of the same model: `y_t` on a constant, `y_{t-1..t-p}` and
/// `x_t..x_{t-q}` (only `x_{t-1}` when q = 0).
pub fn fit_levels_ardl(y: &[f64], x: &[f64], spec: &ArdlSpec, start: usize) -> Result<RegressionFit> {
    let mut cols: Vec<LagColumn> = (1..=spec.p).map(|i| LagColumn::level(Source::Dependent, i)).collect();
    if spec.q == 0 {
        cols.push(LagColumn::level(Source::Independent, 1));
    } else {
        cols.extend((0..=spec.q).map(|j| LagColumn::level(Source::Independent, j)));
    }
    let design = LaggedDesign::new(spec.constant, false, cols).with_start(start);
    let r = design.realize(y, x)?;
    ols_fit(&r.x, &r.y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy(n: usize) -> (Vec<f64>, Vec<f64>) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(n as u64);
        let x = crate::simulate::random_walk(&mut rng, n);
        let e = crate::simulate::normals(&mut rng, n);
        let y = crate::simulate::error_correcting(&x, &e, -0.4, 0.5);
        (y, x)
    }

    #[test]
    fn layout_matches_columns() {
        let spec = ArdlSpec::lags(1, 2);
        let lay = spec.layout();
        assert_eq!(lay.constant, Some(0));
        assert!(lay.dy_lags.is_empty());
        assert_eq!(lay.dx_lags, vec![1, 2]);
        assert_eq!((lay.level_y, lay.level_x), (3, 4));
        let cols = spec.design().columns;
        assert_eq!(cols[0], LagColumn::delta(Source::Independent, 0));
        assert_eq!(cols[1], LagColumn::delta(Source::Independent, 1));

        let lay = ArdlSpec::lags(3, 0).layout();
        assert_eq!(lay.dy_lags, vec![1, 2]);
        assert!(lay.dx_lags.is_empty());
        assert_eq!(lay.len(), 5);
    }

    #[test]
    fn coefficient_roles_exhaust_vector() {
        let (y, x) = toy(60);
        for (p, q) in [(1, 0), (1, 1), (2, 2), (3, 1)] {
            let f = fit_uecm(&y, &x, &ArdlSpec::lags(p, q)).unwrap();
            let lay = &f.layout;
            let mut idx: Vec<usize> = lay.constant.into_iter().collect();
            idx.extend(&lay.dy_lags);
            idx.extend(&lay.dx_lags);
            idx.push(lay.level_y);
            idx.push(lay.level_x);
            idx.sort_unstable();
            assert_eq!(idx, (0..f.fit.coefficients.len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn perfect_equilibrium() {
        use rand::SeedableRng;
        let x: Vec<f64> = (0..40).map(|t| (t as f64 * 0.7).sin() + 0.05 * t as f64).collect();
        // exact y = x makes y(-1) and x(-1) collinear
        assert!(matches!(
            fit_uecm(&x, &x, &ArdlSpec::lags(1, 1)),
            Err(Error::RankDeficient { .. })
        ));
        // y = x + e with e -> 0: dy = dx - (y(-1) - x(-1)) + e
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let e = crate::simulate::normals(&mut rng, 40);
        let y: Vec<f64> = x.iter().zip(&e).map(|(a, b)| a + 1e-7 * b).collect();
        let f = fit_uecm(&y, &x, &ArdlSpec::lags(1, 1)).unwrap();
        let scale: f64 = f.response.iter().map(|v| v * v).sum();
        assert!(f.fit.rss < 1e-12 * scale);
        // only the combination mu1 y(-1) + mu2 x(-1) is pinned down by x
        assert!((f.mu1() + f.mu2()).abs() < 1e-6, "mu1 + mu2 = {}", f.mu1() + f.mu2());
        assert!((long_run_ratio(f.mu1(), f.mu2()).unwrap() - 1.0).abs() < 1e-5);
        assert!((f.dx_coefficients()[0] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn long_run_ratio_cases() {
        assert!((long_run_ratio(-0.865, 0.170405).unwrap() - 0.197).abs() < 1e-6);
        assert_eq!(long_run_ratio(-1.0, 0.0).unwrap(), 0.0);
        assert!(matches!(long_run_ratio(0.0, 1.0), Err(Error::DegenerateLongRun { .. })));
    }

    #[test]
    fn uecm_equals_levels_ardl() {
        let (y, x) = toy(70);
        for (p, q) in [(1, 0), (1, 1), (1, 2), (2, 1), (3, 3)] {
            let spec = ArdlSpec::lags(p, q);
            let u = fit_uecm(&y, &x, &spec).unwrap();
            let l = fit_levels_ardl(&y, &x, &spec, u.start).unwrap();
            assert_eq!(u.fit.nobs, l.nobs);
            assert!((u.fit.rss - l.rss).abs() < 1e-8 * l.rss.max(1.0), "({p},{q})");
            for t in 0..u.fit.nobs {
                let fitted_level = u.fit.fitted[t] + y[u.start + t - 1];
                assert!((fitted_level - l.fitted[t]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn tie_break_prefers_smaller_order() {
        let c = vec![
            LagCandidate { p: 2, q: 1, sbc: -10.0 },
            LagCandidate { p: 1, q: 1, sbc: -10.0 },
            LagCandidate { p: 1, q: 2, sbc: -10.0 },
            LagCandidate { p: 3, q: 0, sbc: -9.0 },
        ];
        let best = pick_min_sbc(&c);
        assert_eq!((best.p, best.q), (1, 1));
    }

    #[test]
    fn two_candidate_grid_matches_enumeration() {
        let (y, x) = toy(50);
        let sel = select_lags(&y, &x, ("y", "x"), 1, 1).unwrap();
        let a = fit_uecm_from(&y, &x, &ArdlSpec::lags(1, 0), 1).unwrap().fit.sbc();
        let b = fit_uecm_from(&y, &x, &ArdlSpec::lags(1, 1), 1).unwrap().fit.sbc();
        let expect = if b < a { 1 } else { 0 };
        assert_eq!(sel.spec.q, expect);
        assert_eq!(sel.spec.p, 1);
    }

    #[test]
    fn selected_spec_minimizes_grid() {
        let (y, x) = toy(80);
        let sel = select_lags(&y, &x, ("y", "x"), 3, 3).unwrap();
        let chosen = sel
            .candidates
            .iter()
            .find(|c| c.p == sel.spec.p && c.q == sel.spec.q)
            .unwrap();
        assert!(sel.candidates.iter().all(|c| chosen.sbc <= c.sbc + 1e-9));
        assert_eq!(sel.candidates.len(), 12);
    }
}
