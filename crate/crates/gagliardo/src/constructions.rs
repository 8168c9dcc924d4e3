//! Explicit field constructions behind the convergence experiments:
//! dilations, the null sequences of the regimes `sp > n` and `sp = n`,
//! Friedrichs mollification, smooth radial cutoff families, and the
//! truncation errors those cutoffs leave behind.
//!
//! Everything here returns ordinary [`ScalarField`]s with honest metadata,
//! so downstream seminorm evaluations stay adaptive and tail-safe.

use std::sync::{Arc, OnceLock};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::fields::{
    bump, bump_profile, norm, smoothstep, smoothstep_deriv, Ball, Decay, Point, Regime,
    ScalarField, SeminormParams,
};
use crate::quadrature::{line_mesh, lp_integral, Estimate, QuadratureSpec};
use crate::seminorms::{gagliardo_seminorm, mean_on_ball};

/// Dilated field `x ↦ u(λx)`.
///
/// All metadata transforms exactly: supports, features and kink distances
/// shrink by `λ`, gradients and Lipschitz constants grow by `λ`, and a power
/// far-field model keeps its rate with the amplitude adjusted via
/// `amp·|λx|^{−rate} = (amp·λ^{−rate})·|x|^{−rate}`.  The symbolic scalar
/// prefactor is preserved, so `scale(c·u, λ) = c·scale(u, λ)` exactly.
pub fn scale(u: &ScalarField, lambda: f64) -> ScalarField {
    assert!(
        lambda > 0.0 && lambda.is_finite(),
        "dilation factor must be positive and finite"
    );
    let (c, core) = u.split_scale();
    let label = format!("scale({},{})", core.label(), lambda);
    let ev = core.clone();
    let mut out = ScalarField::new(core.n(), label, move |x: &Point| {
        ev.eval(&[lambda * x[0], lambda * x[1]])
    });
    if core.has_grad() {
        let g = core.clone();
        out = out.with_grad(move |x: &Point| {
            let v = g
                .grad(&[lambda * x[0], lambda * x[1]])
                .expect("checked has_grad");
            [lambda * v[0], lambda * v[1]]
        });
    }
    if let Some(r) = core.support_radius() {
        out = out.with_support(r / lambda);
    }
    if let Decay::Power { onset, amplitude, rate } = core.decay() {
        out = out.with_decay(Decay::Power {
            onset: onset / lambda,
            amplitude: amplitude * lambda.powf(-rate),
            rate,
        });
    }
    out = out.with_asymptote(core.asymptote());
    out = out.with_features(core.features().iter().map(|f| f / lambda).collect());
    if let Some(l) = core.lipschitz() {
        out = out.with_lipschitz(l * lambda);
    }
    let kd = core.clone();
    out = out.with_kink_distance(move |x: &Point| {
        kd.kink_distance(&[lambda * x[0], lambda * x[1]]) / lambda
    });
    if c == 1.0 {
        out
    } else {
        out.scalar_mul(c)
    }
}

/// The rescaled plateau `φ_m = φ(·/m)`: equal to `1` on `B_m` and supported
/// in `B_{2m}` when `φ` is the catalog plateau.
///
/// Dilation scaling gives `[φ_m]_{W^{s,p}} = m^{n/p−s}·[φ]_{W^{s,p}}`
/// exactly, so for `sp > n` the family tends to the constant `1` pointwise
/// while its seminorms vanish: the space collapses without a zeroth-order
/// anchor in that regime.
pub fn superconformal_null(phi: &ScalarField, m: u32) -> ScalarField {
    assert!(m >= 1, "the family index starts at 1");
    let label = format!("{}_{}", phi.label(), m);
    scale(phi, 1.0 / f64::from(m)).with_label(label)
}

/// The logarithmically truncated family `ψ_m`: `1` on `B_m`,
/// `log(m²/|x|)/log m` on the annulus `m ≤ |x| ≤ m²`, `0` outside `B_{m²}`.
///
/// At `sp = n` its seminorm obeys `[ψ_m] ≤ C·(1/log m)^{1−s/n} → 0` while
/// `ψ_m → 1` locally uniformly, which is why the conformal regime also
/// refuses a pointwise anchor.  The ramp value at `|x| = m^{3/2}` is exactly
/// `1/2`.
pub fn conformal_null(n: u8, m: u32) -> ScalarField {
    assert!(m >= 2, "the logarithmic ramp needs m ≥ 2 so that m² > m");
    let mf = f64::from(m);
    let m2 = mf * mf;
    let lg = mf.ln();
    ScalarField::new(n, format!("psi_{m}"), move |x| {
        let r = norm(x);
        if r <= mf {
            1.0
        } else if r >= m2 {
            0.0
        } else {
            (m2 / r).ln() / lg
        }
    })
    .with_grad(move |x| {
        let r = norm(x);
        if r <= mf || r >= m2 {
            return [0.0, 0.0];
        }
        let d = -1.0 / (r * r * lg);
        [d * x[0], d * x[1]]
    })
    .with_support(m2)
    .with_features(vec![mf, m2])
    .with_lipschitz(1.0 / (mf * lg))
}

static UNIT_MASS: [OnceLock<f64>; 2] = [OnceLock::new(), OnceLock::new()];

/// Normalization `Z_n = ∫_{B_1} exp(−1/(1−|x|²)) dx`, computed once per
/// dimension with the default quadrature.
fn friedrichs_mass(n: u8) -> f64 {
    *UNIT_MASS[usize::from(n - 1)].get_or_init(|| {
        lp_integral(&bump(n), 1.0, &QuadratureSpec::default())
            .expect("smooth compactly supported integrand")
            .value
    })
}

static PROFILE_SLOPE: OnceLock<f64> = OnceLock::new();

/// Upper bound for `|d/dt exp(−1/(1−t²))|` on `[0, 1]`, scanned once.
fn bump_profile_peak_slope() -> f64 {
    *PROFILE_SLOPE.get_or_init(|| {
        let mut best = 0.0f64;
        for i in 1..4096 {
            let t = f64::from(i) / 4096.0;
            let d = 1.0 - t * t;
            best = best.max(bump_profile(t) * 2.0 * t / (d * d));
        }
        best * 1.02
    })
}

/// The Friedrichs kernel `ρ_m(x) = m^n·Z_n^{−1}·exp(−1/(1−|mx|²))`,
/// supported on `B_{1/m}` with unit total integral.
pub fn mollifier(n: u8, m: u32) -> ScalarField {
    assert!(m >= 1, "the kernel index starts at 1");
    let z = friedrichs_mass(n);
    let mf = f64::from(m);
    let front = mf.powi(i32::from(n)) / z;
    let rad = 1.0 / mf;
    ScalarField::new(n, format!("rho_{m}"), move |x| {
        front * bump_profile(mf * norm(x))
    })
    .with_grad(move |x| {
        let r = norm(x);
        let t = mf * r;
        if t >= 1.0 || r == 0.0 {
            return [0.0, 0.0];
        }
        let d = 1.0 - t * t;
        let slope = front * bump_profile(t) * (-2.0 * mf * mf * r / (d * d));
        [slope * x[0] / r, slope * x[1] / r]
    })
    .with_support(rad)
    .with_features(vec![rad])
    .with_lipschitz(front * mf * bump_profile_peak_slope())
}

/// Fixed kernel quadrature for [`mollify`]: Gauss–Legendre nodes over
/// `B_{1/m}` weighted by `ρ_m`, then renormalized so the discrete mass is
/// exactly `1`.  The node set is symmetric under `x ↦ −x`, so constants and
/// affine fields are reproduced exactly.
fn kernel_nodes(n: u8, m: u32, spec: &QuadratureSpec) -> Arc<Vec<(Point, f64)>> {
    let rad = 1.0 / f64::from(m);
    let rho = mollifier(n, m);
    let d = 0.5 / 3.0f64.sqrt();
    let mut raw: Vec<(Point, f64)> = Vec::new();
    if n == 1 {
        let cells = (spec.cells_per_axis as usize / 128).clamp(6, 24);
        for (mid, w) in line_mesh(-rad, rad, &[0.0], 3, cells) {
            for off in [-d, d] {
                raw.push(([mid + off * w, 0.0], 0.5 * w));
            }
        }
    } else {
        let cells = (spec.cells_per_axis as usize / 256).clamp(4, 12);
        let angles = 12usize;
        let dth = std::f64::consts::TAU / angles as f64;
        for (mid, w) in line_mesh(0.0, rad, &[], 2, cells) {
            for off in [-d, d] {
                let r = mid + off * w;
                for k in 0..angles {
                    let th = (k as f64 + 0.5) * dth;
                    raw.push(([r * th.cos(), r * th.sin()], 0.5 * w * r * dth));
                }
            }
        }
    }
    let mut sum = 0.0;
    let mut nodes = Vec::with_capacity(raw.len());
    for (y, w) in raw {
        let k = w * rho.eval(&y);
        if k > 0.0 {
            sum += k;
            nodes.push((y, k));
        }
    }
    // The renormalization below makes the discrete mass exactly one; this
    // guard only catches a kernel evaluated at the wrong scale entirely.
    debug_assert!((sum - 1.0).abs() < 1e-2, "kernel quadrature too coarse: raw mass {sum}");
    for e in &mut nodes {
        e.1 /= sum;
    }
    Arc::new(nodes)
}

/// Convolution `u∗ρ_m`, realized by a fixed kernel quadrature over
/// `B_{1/m}` so the result can be evaluated anywhere.
///
/// The discrete kernel has exact unit mass, hence constants mollify to
/// themselves and (by node symmetry) affine fields are reproduced exactly.
/// Supports widen by `1/m`, a power far-field model keeps its rate with a
/// doubled onset and padded amplitude, and Lipschitz constants survive
/// unchanged — averages of translates cannot steepen a field.
pub fn mollify(u: &ScalarField, m: u32, spec: &QuadratureSpec) -> ScalarField {
    assert!(m >= 1, "the kernel index starts at 1");
    let n = u.n();
    let rad = 1.0 / f64::from(m);
    let (c, core) = u.split_scale();
    let nodes = kernel_nodes(n, m, spec);

    let base = core.clone();
    let nd = nodes.clone();
    let mut out = ScalarField::new(n, format!("{}*rho_{}", core.label(), m), move |x: &Point| {
        nd.iter()
            .map(|(y, w)| w * base.eval(&[x[0] - y[0], x[1] - y[1]]))
            .sum()
    });
    if core.has_grad() {
        let g = core.clone();
        let nd = nodes.clone();
        out = out.with_grad(move |x: &Point| {
            let mut acc = [0.0, 0.0];
            for (y, w) in nd.iter() {
                let v = g
                    .grad(&[x[0] - y[0], x[1] - y[1]])
                    .expect("checked has_grad");
                acc[0] += w * v[0];
                acc[1] += w * v[1];
            }
            acc
        });
    }
    out = out.with_asymptote(core.asymptote());
    if let Some(r) = core.support_radius() {
        out = out.with_support(r + rad);
    } else if let Decay::Power { onset, amplitude, rate } = core.decay() {
        // For |x| ≥ 2(onset + 1/m) every shifted point x − y sits past the
        // onset with |x − y| between |x|/2 and 2|x|, so the padded model
        // amp·2^{|rate|+1} covers decay and growth alike.
        out = out.with_decay(Decay::Power {
            onset: 2.0 * (onset + rad),
            amplitude: amplitude * 2.0f64.powf(rate.abs() + 1.0),
            rate,
        });
    }
    let mut feats = vec![rad];
    for &f in core.features() {
        feats.extend_from_slice(&[(f - rad).abs(), f, f + rad]);
    }
    out = out.with_features(feats);
    if let Some(l) = core.lipschitz() {
        out = out.with_lipschitz(l);
    }
    if c == 1.0 {
        out
    } else {
        out.scalar_mul(c)
    }
}

/// Ramp geometry of a [`CutoffFamily`]: a band of width `j` starting at `j`,
/// or the wide band from `j` to `j²` used in the conformal regime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutoffVariant {
    /// `≡ 1` on `B_j`, vanishing outside `B_{2j}`, `|∇η| ≤ 2/j`.
    Linear,
    /// `≡ 1` on `B_j`, vanishing outside `B_{j²}`, `|∇η| ≤ 4/j²`.
    Logarithmic,
}

/// A smooth radial cutoff `η` together with its construction data.
#[derive(Clone)]
pub struct CutoffFamily {
    pub variant: CutoffVariant,
    pub j: u32,
    pub field: ScalarField,
}

impl CutoffFamily {
    /// Radius of the inner plateau where `η ≡ 1`.
    pub fn inner_radius(&self) -> f64 {
        f64::from(self.j)
    }

    /// Radius beyond which `η ≡ 0`.
    pub fn outer_radius(&self) -> f64 {
        let j = f64::from(self.j);
        match self.variant {
            CutoffVariant::Linear => 2.0 * j,
            CutoffVariant::Logarithmic => j * j,
        }
    }

    /// Declared uniform bound for `|∇η|`.
    ///
    /// The smooth step has slope at most `2`, so the linear ramp of width
    /// `j` gives `2/j`, and the logarithmic ramp of width `j² − j ≥ j²/2`
    /// gives `4/j²` — both of the form `C/j` resp. `C/j²` with a constant
    /// independent of `j`.
    pub fn gradient_bound(&self) -> f64 {
        let j = f64::from(self.j);
        match self.variant {
            CutoffVariant::Linear => 2.0 / j,
            CutoffVariant::Logarithmic => 4.0 / (j * j),
        }
    }
}

/// Smooth radial cutoff equal to `1` on `B_j` and `0` beyond the variant's
/// outer radius, with the uniform gradient bound of
/// [`CutoffFamily::gradient_bound`].
///
/// The ramp is the `C^∞` smooth step; the logarithmic variant keeps the
/// `[j, j²]` band of the conformal construction but trades the `1/(r·log j)`
/// profile slope (which grows like `j/log j` relative to `1/j²` near the
/// inner edge) for a genuinely `j`-uniform `C/j²` bound, which is what the
/// conformal truncation estimate needs.
pub fn cutoff(n: u8, variant: CutoffVariant, j: u32) -> Result<CutoffFamily> {
    if j == 0 {
        return Err(Error::Config("cutoff index j must be at least 1".into()));
    }
    if variant == CutoffVariant::Logarithmic && j < 2 {
        return Err(Error::Config(
            "logarithmic cutoff needs j ≥ 2 so that j² > j".into(),
        ));
    }
    let jf = f64::from(j);
    let (inner, outer) = match variant {
        CutoffVariant::Linear => (jf, 2.0 * jf),
        CutoffVariant::Logarithmic => (jf, jf * jf),
    };
    let len = outer - inner;
    let label = match variant {
        CutoffVariant::Linear => format!("eta_lin_{j}"),
        CutoffVariant::Logarithmic => format!("eta_log_{j}"),
    };
    let field = ScalarField::new(n, label, move |x| smoothstep((outer - norm(x)) / len))
        .with_grad(move |x| {
            let r = norm(x);
            if r <= inner || r >= outer || r == 0.0 {
                return [0.0, 0.0];
            }
            let d = smoothstep_deriv((outer - r) / len) / len;
            [-d * x[0] / r, -d * x[1] / r]
        })
        .with_support(outer)
        .with_features(vec![inner, outer])
        .with_lipschitz(2.0 / len);
    Ok(CutoffFamily { variant, j, field })
}

/// The product `(1 − η)·u`: what truncating `u` at the cutoff `η` leaves
/// behind.  Beyond the cutoff's support the product equals `u`, so `u`'s far
/// model carries over with the onset pushed past the ramp.
fn leftover(u: &ScalarField, eta: &ScalarField) -> ScalarField {
    let uu = u.clone();
    let ee = eta.clone();
    let label = format!("(1-{})*{}", eta.label(), u.label());
    let mut out = ScalarField::new(u.n(), label, move |x: &Point| {
        (1.0 - ee.eval(x)) * uu.eval(x)
    });
    if u.has_grad() && eta.has_grad() {
        let uu = u.clone();
        let ee = eta.clone();
        out = out.with_grad(move |x: &Point| {
            let gu = uu.grad(x).expect("checked has_grad");
            let ge = ee.grad(x).expect("checked has_grad");
            let f = 1.0 - ee.eval(x);
            let v = uu.eval(x);
            [f * gu[0] - v * ge[0], f * gu[1] - v * ge[1]]
        });
    }
    let outer = eta
        .support_radius()
        .expect("cutoffs are compactly supported");
    out = out.with_asymptote(u.asymptote());
    if let Some(r) = u.support_radius() {
        out = out.with_support(r);
    } else if let Some((onset, amp, rate)) = u.far_model() {
        out = out.with_decay(Decay::Power {
            onset: onset.max(outer),
            amplitude: amp,
            rate,
        });
    }
    let mut feats = u.features().to_vec();
    feats.extend_from_slice(eta.features());
    out.with_features(feats)
}

/// Gagliardo seminorm of the part of `u` that survives outside the radius-`j`
/// cutoff — the error committed by truncating `u` to a bounded region.
///
/// With `η_j` the regime-appropriate cutoff and `φ_j = 1 − η_j`, this
/// returns `[φ_j·u]` for `sp ≠ n`, and `[φ_j·(u − ū_{j²})]` at `sp = n`
/// where `ū_{j²}` is the mean of `u` over `B_{j²}`.  Preconditions mirror
/// the three truncation estimates:
///
/// * `sp < n`: `u` needs a finite critical-exponent norm — compact support,
///   or zero asymptote with declared decay `rate·p* > n`;
/// * `sp > n`: `u(0) = 0` and a usable far-field model (the result is only
///   uniformly bounded in `j`, not decaying);
/// * `sp = n`: a bounded far field (declared rate ≥ 0), which makes the
///   relevant Campanato seminorm finite for the locally bounded catalog.
pub fn truncation_error(
    u: &ScalarField,
    j: u32,
    params: &SeminormParams,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if u.n() != params.n() {
        return Err(Error::Config(format!(
            "field dimension {} does not match parameter dimension {}",
            u.n(),
            params.n()
        )));
    }
    if j == 0 {
        return Err(Error::Config("truncation index j must be at least 1".into()));
    }
    match params.regime() {
        Regime::Subconformal => {
            let pstar = params
                .critical_exponent()?
                .to_f64()
                .expect("rational converts");
            let nn = f64::from(params.n());
            let integrable = match u.far_model() {
                Some((_, amp, _)) if amp == 0.0 => u.asymptote() == 0.0,
                Some((_, _, rate)) => u.asymptote() == 0.0 && rate * pstar > nn,
                None => false,
            };
            if !integrable {
                return Err(Error::RegimeMismatch(format!(
                    "truncation at sp < n needs a finite L^{pstar} norm, \
                     but '{}' lacks fast enough declared decay",
                    u.label()
                )));
            }
            let eta = cutoff(params.n(), CutoffVariant::Linear, j)?;
            let v = leftover(u, &eta.field);
            Ok(gagliardo_seminorm(&v, params, spec)?.estimate)
        }
        Regime::Superconformal => {
            let at0 = u.eval(&[0.0, 0.0]);
            if at0.abs() > 1e-9 {
                return Err(Error::RegimeMismatch(format!(
                    "truncation at sp > n needs u(0) = 0, but '{}'(0) = {at0:.6e}",
                    u.label()
                )));
            }
            if u.far_model().is_none() {
                return Err(Error::RegimeMismatch(format!(
                    "truncation at sp > n needs far-field growth data for '{}'",
                    u.label()
                )));
            }
            let eta = cutoff(params.n(), CutoffVariant::Linear, j)?;
            let v = leftover(u, &eta.field);
            Ok(gagliardo_seminorm(&v, params, spec)?.estimate)
        }
        Regime::Conformal { .. } => {
            match u.far_model() {
                Some((_, _, rate)) if rate >= 0.0 => {}
                _ => {
                    return Err(Error::RegimeMismatch(format!(
                        "truncation at sp = n needs a bounded far field for '{}'",
                        u.label()
                    )));
                }
            }
            let eta = cutoff(params.n(), CutoffVariant::Logarithmic, j)?;
            let jf = f64::from(j);
            let mean = mean_on_ball(u, &Ball::centered(jf * jf), spec)?;
            let centered = u.add_const(-mean);
            let v = leftover(&centered, &eta.field);
            Ok(gagliardo_seminorm(&v, params, spec)?.estimate)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{constant, gauss, hat, linear, plateau, powgrow, powtail, rat, sign};
    use crate::quadrature::lp_integral;
    use approx::assert_relative_eq;

    fn params(n: u8, s: (i64, i64), p: (i64, i64)) -> SeminormParams {
        SeminormParams::new(n, rat(s.0, s.1), rat(p.0, p.1)).unwrap()
    }

    #[test]
    fn dilation_substitutes_exactly() {
        let u = hat(1);
        let v = scale(&u, 1.0);
        for x in [-0.9, -0.3, 0.0, 0.4, 0.77, 1.3] {
            assert_eq!(v.eval(&[x, 0.0]), u.eval(&[x, 0.0]));
        }
        let w = scale(&u, 2.0);
        assert_relative_eq!(w.eval(&[0.25, 0.0]), 0.5, max_relative = 1e-15);
        assert_eq!(w.support_radius(), Some(0.5));
        let g = w.grad(&[0.25, 0.0]).unwrap();
        assert_relative_eq!(g[0], -2.0, max_relative = 1e-15);
        // Symbolic prefactors commute with dilation exactly.
        let a = scale(&u.scalar_mul(-3.0), 2.0).eval(&[0.25, 0.0]);
        let b = scale(&u, 2.0).scalar_mul(-3.0).eval(&[0.25, 0.0]);
        assert_eq!(a, b);
    }

    #[test]
    fn dilation_scales_the_seminorm_by_the_exact_exponent() {
        // [u(λ·)] = λ^{s−n/p}·[u]; at (1, 3/4, 2) the exponent is 1/4.
        let pr = params(1, (3, 4), (2, 1));
        let spec = QuadratureSpec::default();
        let base = gagliardo_seminorm(&hat(1), &pr, &spec).unwrap().estimate;
        let dil = gagliardo_seminorm(&scale(&hat(1), 2.0), &pr, &spec)
            .unwrap()
            .estimate;
        let predicted = base.value * 2.0f64.powf(0.25);
        assert_relative_eq!(dil.value, predicted, max_relative = 1e-5);
    }

    #[test]
    fn superconformal_family_rescales_the_plateau() {
        let phi = plateau(1);
        let phi1 = superconformal_null(&phi, 1);
        for x in [0.0, 0.5, 1.4, 2.5] {
            assert_eq!(phi1.eval(&[x, 0.0]), phi.eval(&[x, 0.0]));
        }
        let phi4 = superconformal_null(&phi, 4);
        assert_eq!(phi4.eval(&[4.0, 0.0]), 1.0);
        assert_eq!(phi4.eval(&[3.9, 0.0]), 1.0);
        assert_eq!(phi4.eval(&[8.1, 0.0]), 0.0);
        assert_eq!(phi4.support_radius(), Some(8.0));
    }

    #[test]
    fn superconformal_seminorm_ratio_matches_the_scaling_exponent() {
        // [φ_m] = m^{n/p−s}[φ], so [φ_4]/[φ_2] = 2^{n/p−s} = 2^{−1/4}
        // at (n, s, p) = (1, 3/4, 2).
        let pr = params(1, (3, 4), (2, 1));
        let spec = QuadratureSpec::default();
        let phi = plateau(1);
        let s2 = gagliardo_seminorm(&superconformal_null(&phi, 2), &pr, &spec)
            .unwrap()
            .estimate;
        let s4 = gagliardo_seminorm(&superconformal_null(&phi, 4), &pr, &spec)
            .unwrap()
            .estimate;
        assert_relative_eq!(
            s4.value / s2.value,
            2.0f64.powf(-0.25),
            max_relative = 1e-4
        );
    }

    #[test]
    fn conformal_profile_hits_the_exact_landmarks() {
        let psi = conformal_null(1, 3);
        assert_eq!(psi.eval(&[2.9, 0.0]), 1.0);
        assert_eq!(psi.eval(&[9.1, 0.0]), 0.0);
        let half = psi.eval(&[3.0f64.powf(1.5), 0.0]);
        assert_relative_eq!(half, 0.5, max_relative = 1e-14);
        // ψ_m → 1 locally uniformly: identically 1 on B_2 once m ≥ 3.
        for m in [3u32, 5, 20] {
            let psi = conformal_null(1, m);
            for i in 0..=40 {
                let x = -2.0 + 0.1 * f64::from(i);
                assert_eq!(psi.eval(&[x, 0.0]), 1.0);
            }
        }
        // Gradient matches the ramp formula at an interior point.
        let m = 4.0f64;
        let psi = conformal_null(1, 4);
        let g = psi.grad(&[6.0, 0.0]).unwrap();
        assert_relative_eq!(g[0], -1.0 / (6.0 * m.ln()), max_relative = 1e-14);
    }

    #[test]
    fn mollifier_has_unit_mass_and_the_declared_peak() {
        let spec = QuadratureSpec::default();
        for n in [1u8, 2] {
            for m in [1u32, 4] {
                let mass = lp_integral(&mollifier(n, m), 1.0, &spec).unwrap();
                assert_relative_eq!(mass.value, 1.0, max_relative = 1e-8);
            }
        }
        let z = friedrichs_mass(1);
        let rho = mollifier(1, 1);
        assert_relative_eq!(
            rho.eval(&[0.0, 0.0]),
            (-1.0f64).exp() / z,
            max_relative = 1e-12
        );
        assert_eq!(rho.eval(&[1.0, 0.0]), 0.0);
        assert_eq!(mollifier(1, 8).support_radius(), Some(0.125));
    }

    #[test]
    fn mollify_reproduces_constants_and_affine_fields() {
        let spec = QuadratureSpec::default();
        let c = mollify(&constant(1, 3.5), 4, &spec);
        for x in [-2.0, 0.0, 0.3, 10.0] {
            assert_relative_eq!(c.eval(&[x, 0.0]), 3.5, max_relative = 1e-13);
        }
        let l = mollify(&linear(1), 2, &spec);
        for x in [-1.0, 0.0, 0.7, 3.0] {
            assert_relative_eq!(l.eval(&[x, 0.0]), x, epsilon = 1e-13);
        }
        let c2 = mollify(&constant(2, -2.0), 4, &spec);
        assert_relative_eq!(c2.eval(&[0.4, -0.2]), -2.0, max_relative = 1e-13);
    }

    #[test]
    fn mollify_error_at_a_kink_is_first_order() {
        // At the tip of the hat the smoothing error is proportional to 1/m:
        // doubling m should halve it.
        let spec = QuadratureSpec::default();
        let e4 = (mollify(&hat(1), 4, &spec).eval(&[0.0, 0.0]) - 1.0).abs();
        let e8 = (mollify(&hat(1), 8, &spec).eval(&[0.0, 0.0]) - 1.0).abs();
        assert!(e4 > e8, "smoothing error should shrink with m");
        assert_relative_eq!(e4 / e8, 2.0, max_relative = 0.05);
        // And in L², mollify(hat, m) → hat.
        let d4 = lp_integral(&mollify(&hat(1), 4, &spec).sub(&hat(1)), 2.0, &spec)
            .unwrap()
            .value;
        let d8 = lp_integral(&mollify(&hat(1), 8, &spec).sub(&hat(1)), 2.0, &spec)
            .unwrap()
            .value;
        assert!(d8 < d4 / 2.0, "L² error should drop fast: {d4} vs {d8}");
    }

    #[test]
    fn mollified_gaussian_keeps_its_tail_model_usable() {
        // The padded far model must stay sound: compute a seminorm that
        // leans on it and compare against the unmollified value.
        let pr = params(1, (1, 2), (2, 1));
        let spec = QuadratureSpec::default();
        let sm = mollify(&gauss(1), 8, &spec);
        assert!(sm.support_radius().is_none());
        let a = gagliardo_seminorm(&sm, &pr, &spec).unwrap().estimate;
        let b = gagliardo_seminorm(&gauss(1), &pr, &spec).unwrap().estimate;
        assert_relative_eq!(a.value, b.value, max_relative = 2e-2);
    }

    #[test]
    fn cutoff_plateaus_ramps_and_gradient_bounds() {
        for (variant, j, outer) in [
            (CutoffVariant::Linear, 3u32, 6.0),
            (CutoffVariant::Logarithmic, 3, 9.0),
        ] {
            let fam = cutoff(1, variant, j).unwrap();
            assert_eq!(fam.outer_radius(), outer);
            let eta = &fam.field;
            assert_eq!(eta.eval(&[2.0, 0.0]), 1.0);
            assert_eq!(eta.eval(&[3.0, 0.0]), 1.0);
            assert_eq!(eta.eval(&[outer + 0.1, 0.0]), 0.0);
            let bound = fam.gradient_bound();
            let mut max_grad = 0.0f64;
            for i in 0..=2000 {
                let x = outer * f64::from(i) / 2000.0;
                let v = eta.eval(&[x, 0.0]);
                assert!((0.0..=1.0).contains(&v), "cutoff must stay in [0,1]");
                let g = eta.grad(&[x, 0.0]).unwrap();
                max_grad = max_grad.max(g[0].abs());
            }
            assert!(
                max_grad <= bound * (1.0 + 1e-12),
                "sampled |∇η| = {max_grad} exceeds declared bound {bound}"
            );
        }
        // The bounds are j-uniform multiples of 1/j and 1/j².
        for j in [2u32, 5, 16, 64] {
            let jf = f64::from(j);
            let lin = cutoff(1, CutoffVariant::Linear, j).unwrap();
            assert!(lin.gradient_bound() * jf <= 2.0 + 1e-12);
            let log = cutoff(1, CutoffVariant::Logarithmic, j).unwrap();
            assert!(log.gradient_bound() * jf * jf <= 4.0 + 1e-12);
        }
        assert!(cutoff(1, CutoffVariant::Linear, 0).is_err());
        assert!(cutoff(1, CutoffVariant::Logarithmic, 1).is_err());
    }

    #[test]
    fn truncating_a_compact_field_leaves_nothing() {
        let spec = QuadratureSpec::default();
        // sp < n: the hat sits inside B_2, so the leftover vanishes.
        let sub = truncation_error(&hat(1), 2, &params(1, (1, 4), (2, 1)), &spec).unwrap();
        assert_eq!(sub.value, 0.0);
        // sp > n: a translated hat vanishes at the origin and inside B_5.
        let shifted = hat(1).translate(3.0);
        assert_eq!(shifted.eval(&[0.0, 0.0]), 0.0);
        let sup = truncation_error(&shifted, 5, &params(1, (3, 4), (2, 1)), &spec).unwrap();
        assert_eq!(sup.value, 0.0);
    }

    #[test]
    fn subconformal_truncation_decays_with_j() {
        // powtail(α) with α ∈ (n/p − s, n/p] has finite critical norm but is
        // not in L^p: exactly the class the truncation estimate covers.
        let pr = params(1, (1, 4), (2, 1));
        let spec = QuadratureSpec::default();
        let u = powtail(1, 0.5);
        let mut prev = f64::INFINITY;
        for j in [2u32, 4, 8] {
            let e = truncation_error(&u, j, &pr, &spec).unwrap();
            assert!(e.value > 0.0);
            assert!(
                e.value < prev,
                "truncation error should decrease with j, got {} after {prev}",
                e.value
            );
            prev = e.value;
        }
    }

    #[test]
    fn superconformal_truncation_stays_bounded() {
        // Growth β below the Hölder exponent α = s − n/p keeps u in C^α with
        // u(0) = 0; the truncation errors are bounded, not decaying.
        let pr = params(1, (3, 4), (2, 1));
        let spec = QuadratureSpec::default();
        let u = powgrow(1, 0.125);
        let vals: Vec<f64> = [2u32, 4, 8]
            .iter()
            .map(|&j| truncation_error(&u, j, &pr, &spec).unwrap().value)
            .collect();
        let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().cloned().fold(0.0f64, f64::max);
        assert!(lo > 0.0);
        assert!(
            hi / lo < 3.0,
            "superconformal truncation should stay of one size, got {vals:?}"
        );
    }

    #[test]
    fn conformal_truncation_subtracts_the_mean_and_decays() {
        let pr = params(1, (1, 2), (2, 1));
        let spec = QuadratureSpec::default();
        // For the compact hat the conformal leftover is the tiny constant
        // −mean(B_{j²}) spread over the cutoff ramp.
        let e2 = truncation_error(&hat(1), 2, &pr, &spec).unwrap();
        let e4 = truncation_error(&hat(1), 4, &pr, &spec).unwrap();
        assert!(e2.value > 0.0, "the subtracted mean leaves a residue");
        assert!(e4.value < e2.value);
        // e2 ≈ mean(B_4)·[1−η_2] = 0.125·O(1).
        assert!(e2.value < 0.3);
    }

    #[test]
    fn truncation_rejects_fields_outside_the_estimates() {
        let spec = QuadratureSpec::default();
        // sp < n: powgrow has no critical-exponent integrability.
        let r = truncation_error(&powgrow(1, 0.125), 2, &params(1, (1, 4), (2, 1)), &spec);
        assert!(matches!(r, Err(Error::RegimeMismatch(_))));
        // sp > n: the hat misses u(0) = 0.
        let r = truncation_error(&hat(1), 2, &params(1, (3, 4), (2, 1)), &spec);
        assert!(matches!(r, Err(Error::RegimeMismatch(_))));
        // sp = n: unbounded growth has no bounded far field.
        let r = truncation_error(&powgrow(1, 0.125), 2, &params(1, (1, 2), (2, 1)), &spec);
        assert!(matches!(r, Err(Error::RegimeMismatch(_))));
        // sign is bounded, so the gate admits it; the divergent seminorm of
        // its leftover (two different ray constants at sp = n) is refused by
        // the integrability check instead.
        let r = truncation_error(&sign(1), 2, &params(1, (1, 2), (2, 1)), &spec);
        assert!(matches!(r, Err(Error::NonIntegrableTail(_))));
    }
}
