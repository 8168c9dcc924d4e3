//! Inequality verification harness.
//!
//! Each `check_*` function computes both sides of one functional inequality
//! and reports the ratio together with a pass flag.  The inequalities all
//! have the shape `lhs ≤ C·rhs` for some constant `C` depending only on the
//! exponents, so a check passes when the ratio stays under a frozen
//! per-inequality budget (the worst ratio observed over the shipped catalog
//! at pilot resolution, times a 1.5 safety margin).  A failure therefore
//! means the inequality's constant would have to exceed any value it ever
//! needed before — numerically, a violation.
//!
//! The module also provides least-squares rate fitting in log-log
//! coordinates and the sweep experiments (null sequences, mollification,
//! truncation) whose decay rates the fits quantify.

use crate::constructions::{conformal_null, mollify, superconformal_null, truncation_error};
use crate::error::{Error, Result};
use crate::fields::{
    bump, clamp, gauss, hat, plateau, powtail, rat, sign, Ball, Point, Regime, ScalarField,
    SeminormParams,
};
use crate::quadrature::{ball_lp, gradient_lp, sup_norm, Estimate, Method, QuadratureSpec};
use crate::seminorms::{
    annulus_gagliardo, campanato_seminorm, gagliardo_seminorm, holder_seminorm, lp_norm,
    mean_on_ball, weighted_campanato_integral,
};
use num_traits::ToPrimitive;

/// Outcome of one inequality check: both sides, their ratio, and whether the
/// ratio stays under the inequality's frozen constant budget.
#[derive(Clone, Debug)]
pub struct InequalityReport {
    /// Stable check name (also the CSV `case` tag).
    pub name: &'static str,
    /// Left-hand side of `lhs ≤ C·rhs`.
    pub lhs: Estimate,
    /// Right-hand side.
    pub rhs: Estimate,
    /// `lhs/rhs`; `0` when both sides vanish (the inequality holds trivially).
    pub ratio: f64,
    /// Exponents the check ran at.
    pub params: SeminormParams,
    /// Label of the field under test.
    pub field_label: String,
    /// `lhs ≤ budget·rhs` (with `0 ≤ 0` passing).
    pub pass: bool,
    /// The frozen constant budget the ratio was compared against.
    pub budget: f64,
    /// Quadrature configuration the check ran with (for reproducibility).
    pub spec: QuadratureSpec,
    /// Extra `key=value;…` detail: ball radii, sweep indices, seeds.
    pub extra: String,
}

impl InequalityReport {
    fn new(
        name: &'static str,
        lhs: Estimate,
        rhs: Estimate,
        params: &SeminormParams,
        field_label: &str,
        spec: &QuadratureSpec,
    ) -> Self {
        let budget = budget_for(name);
        let trivial = lhs.value == 0.0 && rhs.value == 0.0;
        let ratio = if trivial { 0.0 } else { lhs.value / rhs.value };
        let pass = trivial || lhs.value <= budget * rhs.value;
        InequalityReport {
            name,
            lhs,
            rhs,
            ratio,
            params: *params,
            field_label: field_label.to_string(),
            pass,
            budget,
            spec: *spec,
            extra: String::new(),
        }
    }

    fn with_extra(mut self, extra: String) -> Self {
        self.extra = extra;
        self
    }

    /// Deterministic ordering key: (name, field, params, extra).
    pub fn sort_key(&self) -> (String, String, String, String) {
        (
            self.name.to_string(),
            self.field_label.clone(),
            self.params.to_string(),
            self.extra.clone(),
        )
    }
}

/// Frozen constant budget for a named inequality.
///
/// Calibrated from the pilot run over the applicable catalog at default
/// resolution, then multiplied by 1.5 and rounded up.  `sharp_1d` is the
/// exception: its constant is exactly 1 (the inequality is sharp), so the
/// budget only absorbs quadrature noise.
pub fn budget_for(name: &str) -> f64 {
    match name {
        "sobolev" => 1.2,
        "morrey_campanato" => 0.9,
        "poincare_wirtinger" => 0.25,
        "pw_flexible" => 0.16,
        "morrey" => 1.4,
        "weighted_integrability" => 5.0,
        "local_pw" => 0.08,
        "sharp_1d" => 1.002,
        _ => panic!("unknown inequality name '{name}'"),
    }
}

/// Sobolev inequality (`sp < n`): `‖u‖_{L^{p*}} ≤ C·[u]_{W^{s,p}}` with
/// `p* = np/(n − sp)`.
///
/// The ratio estimates the reciprocal sharp constant from below; both sides
/// scale with the same power of a dilation, so the ratio is dilation
/// invariant.
pub fn check_sobolev(
    u: &ScalarField,
    params: &SeminormParams,
    spec: &QuadratureSpec,
) -> Result<InequalityReport> {
    if params.regime() != Regime::Subconformal {
        return Err(Error::RegimeMismatch(format!(
            "the Sobolev inequality needs sp < n, got {params}"
        )));
    }
    let pstar = params
        .critical_exponent()?
        .to_f64()
        .expect("rational converts");
    let lhs = lp_norm(u, pstar, spec)?.estimate;
    let rhs = gagliardo_seminorm(u, params, spec)?.estimate;
    Ok(InequalityReport::new("sobolev", lhs, rhs, params, u.label(), spec))
}

/// Campanato embedding: `[u]_{L^{p,sp}} ≤ C·[u]_{W^{s,p}}` for `0 < s < 1`,
/// valid in every regime.
pub fn check_morrey_campanato(
    u: &ScalarField,
    params: &SeminormParams,
    spec: &QuadratureSpec,
) -> Result<InequalityReport> {
    let s = params.s_f64();
    if s >= 1.0 {
        return Err(Error::UnsupportedExponent(
            "the Campanato embedding is stated for 0 < s < 1".into(),
        ));
    }
    let p = params.p_f64();
    let lambda = params.sp().to_f64().expect("rational converts");
    let lhs = campanato_seminorm(u, p, lambda, spec)?.estimate;
    let rhs = gagliardo_seminorm(u, params, spec)?.estimate;
    Ok(InequalityReport::new(
        "morrey_campanato",
        lhs,
        rhs,
        params,
        u.label(),
        spec,
    ))
}

/// Poincaré–Wirtinger inequality on a ball:
/// `∫_{B_R(x0)} |u − ū_{x0,R}|^p ≤ C·R^{sp}·[u]^p` with `C` independent
/// of `R` and `x0`.
pub fn check_poincare_wirtinger(
    u: &ScalarField,
    x0: &Point,
    big_r: f64,
    params: &SeminormParams,
    spec: &QuadratureSpec,
) -> Result<InequalityReport> {
    if params.s_f64() >= 1.0 {
        return Err(Error::UnsupportedExponent(
            "the fractional Poincaré–Wirtinger inequality is stated for 0 < s < 1".into(),
        ));
    }
    let p = params.p_f64();
    let ball = Ball::new(*x0, big_r);
    let mean = mean_on_ball(u, &ball, spec)?;
    let lhs = ball_lp(u, p, &ball, mean, spec)?;
    let semi = gagliardo_seminorm(u, params, spec)?.estimate;
    let rhs = semi.powf(p).scaled(big_r.powf(params.sp().to_f64().unwrap()));
    Ok(
        InequalityReport::new("poincare_wirtinger", lhs, rhs, params, u.label(), spec)
            .with_extra(format!("R={big_r}")),
    )
}

/// Flexible Poincaré–Wirtinger variant: the mean is taken over the smaller
/// ball `B_r(x0)` and the right-hand side carries the factor
/// `(1 + (R/r)^n)·R^{sp}·[u]^p`.
pub fn check_pw_flexible(
    u: &ScalarField,
    x0: &Point,
    r: f64,
    big_r: f64,
    params: &SeminormParams,
    spec: &QuadratureSpec,
) -> Result<InequalityReport> {
    if !(r > 0.0 && r <= big_r) {
        return Err(Error::Config(format!(
            "flexible Poincaré–Wirtinger needs 0 < r ≤ R, got r = {r}, R = {big_r}"
        )));
    }
    if params.s_f64() >= 1.0 {
        return Err(Error::UnsupportedExponent(
            "the fractional Poincaré–Wirtinger inequality is stated for 0 < s < 1".into(),
        ));
    }
    let p = params.p_f64();
    let mean_small = mean_on_ball(u, &Ball::new(*x0, r), spec)?;
    let lhs = ball_lp(u, p, &Ball::new(*x0, big_r), mean_small, spec)?;
    let semi = gagliardo_seminorm(u, params, spec)?.estimate;
    let factor = 1.0 + (big_r / r).powi(i32::from(params.n()));
    let rhs = semi
        .powf(p)
        .scaled(factor * big_r.powf(params.sp().to_f64().unwrap()));
    Ok(
        InequalityReport::new("pw_flexible", lhs, rhs, params, u.label(), spec)
            .with_extra(format!("r={r};R={big_r}")),
    )
}

/// Morrey embedding (`sp > n`): `[u]_{C^{0,α}} ≤ C·[u]_{W^{s,p}}` with
/// `α = s − n/p`.
pub fn check_morrey(
    u: &ScalarField,
    params: &SeminormParams,
    spec: &QuadratureSpec,
) -> Result<InequalityReport> {
    let alpha = params
        .holder_exponent()?
        .to_f64()
        .expect("rational converts");
    let lhs = holder_seminorm(u, alpha, spec)?.estimate;
    let rhs = gagliardo_seminorm(u, params, spec)?.estimate;
    Ok(InequalityReport::new("morrey", lhs, rhs, params, u.label(), spec))
}

/// Weighted global integrability: for `ū_R = mean of u over B_R`,
///
/// `∫ |u − ū_R|^p / (R^n + |y|^n·|log(|y|/R)|^{p+2}) dy ≤ C·[u]^p_{L^{p,n}}`
///
/// with `C` independent of `R` (by scaling).  The mean is subtracted before
/// the weighted integral; the Campanato side is blind to constants.
pub fn check_weighted_integrability(
    u: &ScalarField,
    p: f64,
    big_r: f64,
    spec: &QuadratureSpec,
) -> Result<InequalityReport> {
    let n = u.n();
    let mean = mean_on_ball(u, &Ball::centered(big_r), spec)?;
    let v = u.add_const(-mean);
    let lhs = weighted_campanato_integral(&v, p, big_r, spec)?;
    let rhs = campanato_seminorm(u, p, f64::from(n), spec)?.estimate.powf(p);
    // Record the conformal pairing s = n/p (capped at 1) alongside n and p.
    let p_rat = crate::fields::Rational::approximate_float(p)
        .ok_or_else(|| Error::Config(format!("p = {p} is not representable")))?;
    let n_rat = rat(i64::from(n), 1);
    let s_rat = if n_rat / p_rat <= rat(1, 1) { n_rat / p_rat } else { rat(1, 1) };
    let params = SeminormParams::new(n, s_rat, p_rat)?;
    Ok(
        InequalityReport::new("weighted_integrability", lhs, rhs, &params, u.label(), spec)
            .with_extra(format!("R={big_r}")),
    )
}

/// Local Poincaré–Wirtinger on an annulus:
/// `∫_{B_R∖B_r(x0)} |u − ū_{x0,R}|^p ≤ C·R^{sp}·(annulus double integral)`
/// where the double integral runs over `(B_R∖B_r)×B_R` pairs.
pub fn check_local_pw(
    u: &ScalarField,
    x0: &Point,
    r: f64,
    big_r: f64,
    params: &SeminormParams,
    spec: &QuadratureSpec,
) -> Result<InequalityReport> {
    let p = params.p_f64();
    let ball = Ball::new(*x0, big_r);
    let mean = mean_on_ball(u, &ball, spec)?;
    let outer = ball_lp(u, p, &ball, mean, spec)?;
    let inner = ball_lp(u, p, &Ball::new(*x0, r), mean, spec)?;
    let lhs = Estimate::new(
        (outer.value - inner.value).max(0.0),
        outer.error_indicator + inner.error_indicator,
    );
    let bracket = annulus_gagliardo(u, x0, r, big_r, params, spec)?;
    let rhs = bracket.scaled(big_r.powf(params.sp().to_f64().unwrap()));
    Ok(
        InequalityReport::new("local_pw", lhs, rhs, params, u.label(), spec)
            .with_extra(format!("r={r};R={big_r}")),
    )
}

/// The sharp one-dimensional endpoint inequality
/// `2·‖u‖_{L^∞} ≤ ‖u′‖_{L^1}` for `u ∈ C_0(R)`.
///
/// The constant is exactly 1 in the report's normalization (`lhs = 2·sup`),
/// and the hat function achieves equality.
pub fn check_sharp_1d(u: &ScalarField, spec: &QuadratureSpec) -> Result<InequalityReport> {
    if u.n() != 1 {
        return Err(Error::Config("the sharp endpoint inequality is one-dimensional".into()));
    }
    if !u.has_grad() {
        return Err(Error::MissingGradient(format!(
            "'{}' declares no gradient for the total-variation side",
            u.label()
        )));
    }
    // u must vanish at infinity: zero asymptote and genuinely decaying tail.
    let in_c0 = u.asymptote() == 0.0
        && matches!(u.far_model(), Some((_, amp, rate)) if amp == 0.0 || rate > 0.0);
    if !in_c0 {
        return Err(Error::RegimeMismatch(format!(
            "'{}' does not vanish at infinity, so it falls outside C_0(R)",
            u.label()
        )));
    }
    let lhs = sup_norm(u, spec)?.scaled(2.0);
    let rhs = gradient_lp(u, 1.0, spec)?;
    let params = SeminormParams::new(1, rat(1, 1), rat(1, 1))?;
    Ok(InequalityReport::new("sharp_1d", lhs, rhs, &params, u.label(), spec))
}

/// Least-squares power-law fit in log-log coordinates.
#[derive(Clone, Copy, Debug)]
pub struct RateFit {
    /// Fitted exponent: slope of `log y` against `log x`.
    pub slope: f64,
    /// Fitted offset: `log` of the rate constant.
    pub intercept: f64,
    /// Residual sum of squares in log-log coordinates.
    pub rss: f64,
    /// Number of points fitted.
    pub points: usize,
}

/// Fit `y ≈ e^intercept·x^slope` by least squares on `(log x, log y)`.
///
/// Needs at least 3 strictly positive points with non-identical abscissas.
pub fn fit_rate(xs: &[f64], ys: &[f64]) -> Result<RateFit> {
    if xs.len() != ys.len() {
        return Err(Error::Config(format!(
            "rate fit needs matching lengths, got {} xs and {} ys",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "rate fit needs at least 3 points, got {}",
            xs.len()
        )));
    }
    if xs.iter().chain(ys.iter()).any(|v| !(*v > 0.0)) {
        return Err(Error::DegenerateFit(
            "rate fit needs strictly positive data for the log-log transform".into(),
        ));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let nf = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / nf;
    let my = ly.iter().sum::<f64>() / nf;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx < 1e-24 {
        return Err(Error::DegenerateFit("all abscissas coincide".into()));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    Ok(RateFit { slope, intercept, rss, points: lx.len() })
}

/// One measurement of a sweep experiment.
#[derive(Clone, Copy, Debug)]
pub struct SweepPoint {
    /// Family index the measurement was taken at.
    pub index: f64,
    /// Measured value (a seminorm or truncation error).
    pub value: f64,
    /// Quadrature error indicator for the value.
    pub error: f64,
}

fn seminorm_point(
    u: &ScalarField,
    index: f64,
    params: &SeminormParams,
    spec: &QuadratureSpec,
) -> Result<SweepPoint> {
    let v = gagliardo_seminorm(u, params, spec)?.estimate;
    Ok(SweepPoint { index, value: v.value, error: v.error_indicator })
}

/// Seminorms of the rescaled-plateau family `φ_m = φ(·/m)` (`sp > n`):
/// exactly `m^{n/p−s}·[φ]`, so the log-log slope is `n/p − s < 0`.
pub fn superconformal_sweep(
    params: &SeminormParams,
    indices: &[u32],
    spec: &QuadratureSpec,
) -> Result<Vec<SweepPoint>> {
    if params.regime() != Regime::Superconformal {
        return Err(Error::RegimeMismatch(format!(
            "the rescaled-plateau family is a null sequence only for sp > n, got {params}"
        )));
    }
    let phi = plateau(params.n());
    indices
        .iter()
        .map(|&m| seminorm_point(&superconformal_null(&phi, m), f64::from(m), params, spec))
        .collect()
}

/// Seminorms of the logarithmic family `ψ_m` (`sp = n`): bounded by
/// `C·(1/log m)^{1−s/n}`, so `[ψ_m]·(log m)^{1−s/n}` stays bounded while
/// the values themselves decrease.
pub fn conformal_sweep(
    params: &SeminormParams,
    indices: &[u32],
    spec: &QuadratureSpec,
) -> Result<Vec<SweepPoint>> {
    if !matches!(params.regime(), Regime::Conformal { .. }) {
        return Err(Error::RegimeMismatch(format!(
            "the logarithmic family is a null sequence only for sp = n, got {params}"
        )));
    }
    indices
        .iter()
        .map(|&m| seminorm_point(&conformal_null(params.n(), m), f64::from(m), params, spec))
        .collect()
}

/// Seminorms of the mollification error `[u∗ρ_m − u]_{W^{s,p}}`, which
/// tends to `0` as `m → ∞` for every `u` with finite seminorm.
pub fn mollification_sweep(
    u: &ScalarField,
    params: &SeminormParams,
    indices: &[u32],
    spec: &QuadratureSpec,
) -> Result<Vec<SweepPoint>> {
    indices
        .iter()
        .map(|&m| {
            let diff = mollify(u, m, spec).sub(u);
            seminorm_point(&diff, f64::from(m), params, spec)
        })
        .collect()
}

/// Truncation errors `[(1 − η_j)·u]` over a sweep of cutoff indices.
pub fn truncation_sweep(
    u: &ScalarField,
    params: &SeminormParams,
    indices: &[u32],
    spec: &QuadratureSpec,
) -> Result<Vec<SweepPoint>> {
    indices
        .iter()
        .map(|&j| {
            let e = truncation_error(u, j, params, spec)?;
            Ok(SweepPoint { index: f64::from(j), value: e.value, error: e.error_indicator })
        })
        .collect()
}

/// Configuration for [`full_suite`].
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    /// Base random seed; the Monte Carlo repetitions use `seed`, `seed+1`,
    /// `seed+2`.
    pub seed: u64,
    /// Override for the deterministic mesh resolution.
    pub cells_per_axis: Option<u32>,
    /// Override for the Monte Carlo sample count.
    pub samples: Option<u64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, cells_per_axis: None, samples: None }
    }
}

impl SuiteConfig {
    fn spec_1d(&self) -> QuadratureSpec {
        let mut spec = QuadratureSpec { seed: self.seed, ..QuadratureSpec::default() };
        if let Some(c) = self.cells_per_axis {
            spec.cells_per_axis = c;
        }
        if let Some(s) = self.samples {
            spec.samples = s;
        }
        spec
    }

    fn spec_2d(&self, repetition: u64) -> QuadratureSpec {
        QuadratureSpec {
            method: Method::MonteCarlo,
            seed: self.seed.wrapping_add(repetition),
            ..self.spec_1d()
        }
    }
}

fn pr(n: u8, s: (i64, i64), p: (i64, i64)) -> SeminormParams {
    SeminormParams::new(n, rat(s.0, s.1), rat(p.0, p.1)).expect("valid exponents")
}

/// Run every inequality check on its applicable slice of the catalog:
/// deterministic tensor quadrature for `n = 1`, Monte Carlo with three seeds
/// for `n = 2`.  Reports come back sorted by (name, field, params, extra).
///
/// The applicability table is explicit: a field appears only where the
/// inequality's hypotheses hold and the declared metadata certifies a finite
/// right-hand side.
pub fn full_suite(cfg: &SuiteConfig) -> Result<Vec<InequalityReport>> {
    let spec = cfg.spec_1d();
    let mut reports: Vec<InequalityReport> = Vec::new();

    // n = 1, deterministic. The catalog's decaying quartet.
    let quartet = || vec![hat(1), gauss(1), bump(1), powtail(1, 0.75)];

    // Sobolev, sp < n.
    for params in [pr(1, (1, 4), (2, 1)), pr(1, (1, 2), (1, 1))] {
        for u in quartet() {
            reports.push(check_sobolev(&u, &params, &spec)?);
        }
    }

    // Campanato embedding across regimes, including near-endpoint s.
    for params in [
        pr(1, (1, 10), (2, 1)),
        pr(1, (1, 4), (2, 1)),
        pr(1, (1, 2), (2, 1)),
        pr(1, (9, 10), (2, 1)),
    ] {
        for u in quartet() {
            reports.push(check_morrey_campanato(&u, &params, &spec)?);
        }
    }
    // clamp's rate-0 tail is admissible once sp > 1.
    reports.push(check_morrey_campanato(&clamp(1), &pr(1, (9, 10), (2, 1)), &spec)?);

    // Poincaré–Wirtinger: R-sweep, C is R-independent.
    let conf = pr(1, (1, 2), (2, 1));
    for u in [hat(1), gauss(1)] {
        for big_r in [0.5, 1.0, 2.0, 4.0] {
            reports.push(check_poincare_wirtinger(&u, &[0.0, 0.0], big_r, &conf, &spec)?);
        }
    }

    // Flexible variant, including the r = R degeneration.
    for (r, big_r) in [(0.5, 2.0), (1.0, 2.0), (2.0, 2.0)] {
        reports.push(check_pw_flexible(&hat(1), &[0.0, 0.0], r, big_r, &conf, &spec)?);
    }

    // Morrey, sp > n; clamp is admissible here (rate-0 tail, sp > 1).
    let sup34 = pr(1, (3, 4), (2, 1));
    for u in [hat(1), gauss(1), bump(1), powtail(1, 0.75), clamp(1)] {
        reports.push(check_morrey(&u, &sup34, &spec)?);
    }
    reports.push(check_morrey(&bump(1), &pr(1, (9, 10), (2, 1)), &spec)?);

    // Weighted integrability: R-sweep, C is R-independent.
    for big_r in [1.0, 2.0, 4.0] {
        reports.push(check_weighted_integrability(&sign(1), 1.0, big_r, &spec)?);
        reports.push(check_weighted_integrability(&hat(1), 2.0, big_r, &spec)?);
    }

    // Local Poincaré–Wirtinger on shrinking annuli.
    for r in [0.125, 0.25, 0.5] {
        reports.push(check_local_pw(&hat(1), &[0.0, 0.0], r, 2.0, &conf, &spec)?);
    }
    reports.push(check_local_pw(&gauss(1), &[0.0, 0.0], 0.5, 2.0, &conf, &spec)?);

    // Sharp endpoint inequality.  The budget is tight (the constant is
    // exactly 1), so the slice sticks to fields whose gradient integral
    // carries no heavy-tail bracket: powtail's |u'| ~ |x|^{-1.75} leaves a
    // one-sided truncation gap of a few percent that would defeat the
    // sharpness demonstration without being a violation.
    for u in [hat(1), gauss(1), bump(1)] {
        reports.push(check_sharp_1d(&u, &spec)?);
    }

    // n = 2, Monte Carlo, three repetitions with distinct seeds.
    let quartet2 = || vec![hat(2), gauss(2), bump(2), powtail(2, 1.5)];
    for rep in 0..3u64 {
        let spec2 = cfg.spec_2d(rep);
        let tag = format!("seed={}", spec2.seed);
        let half = pr(2, (1, 2), (2, 1));
        for u in quartet2() {
            reports.push(check_sobolev(&u, &half, &spec2)?.with_extra(tag.clone()));
            reports.push(check_morrey_campanato(&u, &half, &spec2)?.with_extra(tag.clone()));
        }
        let sup2 = pr(2, (9, 10), (4, 1));
        for u in quartet2() {
            reports.push(check_morrey(&u, &sup2, &spec2)?.with_extra(tag.clone()));
        }
        let pw = check_poincare_wirtinger(&hat(2), &[0.0, 0.0], 2.0, &half, &spec2)?;
        reports.push(InequalityReport {
            extra: format!("R=2;{tag}"),
            ..pw
        });
    }

    reports.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(reports)
}
