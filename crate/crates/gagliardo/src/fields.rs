//! Core domain types and the catalog of analytic test fields.
//!
//! A [`ScalarField`] is an analytic function on `R^n` (`n = 1, 2`) bundled
//! with the metadata the integration engines rely on: an optional exact
//! gradient, a support radius, a far-field decay model, kink locations, and a
//! Lipschitz bound.  Fields are immutable after construction and safe to
//! evaluate concurrently.
//!
//! [`SeminormParams`] stores the order `s` and exponent `p` as exact
//! rationals so that the regime trichotomy `sp < n` / `sp = n` / `sp > n` is
//! decided without floating-point ambiguity.

use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Exact rational arithmetic for the order/exponent parameters.
pub type Rational = num_rational::Ratio<i64>;

/// Shorthand constructor for a [`Rational`].
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

/// Parse a rational from `"num/den"`, an integer, or a finite decimal
/// (`"0.75"` becomes exactly `3/4`).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = |why: &str| Error::Config(format!("cannot parse '{text}' as a rational: {why}"));
    if let Some((num, den)) = text.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad("bad numerator"))?;
        let den: i64 = den.trim().parse().map_err(|_| bad("bad denominator"))?;
        if den == 0 {
            return Err(bad("zero denominator"));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let digits = frac.len() as u32;
        if digits == 0 || digits > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("bad decimal part"));
        }
        let sign = if int.trim_start().starts_with('-') { -1 } else { 1 };
        let int: i64 = if int.is_empty() || int == "-" {
            0
        } else {
            int.parse().map_err(|_| bad("bad integer part"))?
        };
        let frac: i64 = frac.parse().map_err(|_| bad("bad decimal part"))?;
        let den = 10i64.pow(digits);
        return Ok(Rational::new(int * den + sign * frac, den));
    }
    let int: i64 = text.parse().map_err(|_| bad("not a number"))?;
    Ok(Rational::from_integer(int))
}

/// A point of `R^n`.  The second coordinate is kept at `0.0` when `n = 1`,
/// which lets radial formulas work verbatim in both dimensions.
pub type Point = [f64; 2];

/// Euclidean norm of a point.
pub fn norm(x: &Point) -> f64 {
    x[0].hypot(x[1])
}

/// Measure of the unit ball: `2` for `n = 1`, `π` for `n = 2`.
pub fn omega_n(n: u8) -> f64 {
    match n {
        1 => 2.0,
        2 => std::f64::consts::PI,
        _ => panic!("only n = 1, 2 are supported"),
    }
}

/// Surface measure of the unit sphere, `n·ω_n`.
pub fn sphere_area(n: u8) -> f64 {
    f64::from(n) * omega_n(n)
}

/// Volume of a ball of radius `r` in `R^n`.
pub fn ball_volume(n: u8, r: f64) -> f64 {
    omega_n(n) * r.powi(i32::from(n))
}

/// The three regimes of the pair `(s, p)` relative to the dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `sp < n`: Sobolev embedding into `L^{p*}`.
    Subconformal,
    /// `sp = n`: BMO-type borderline; `exceptional_1d` flags `s = p = n = 1`,
    /// where the usual borderline picture fails and a sharp `L^∞` inequality
    /// holds instead.
    Conformal { exceptional_1d: bool },
    /// `sp > n`: Hölder continuity via Morrey.
    Superconformal,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Subconformal => write!(f, "subconformal"),
            Regime::Conformal { exceptional_1d: false } => write!(f, "conformal"),
            Regime::Conformal { exceptional_1d: true } => write!(f, "conformal(exceptional-1d)"),
            Regime::Superconformal => write!(f, "superconformal"),
        }
    }
}

/// The parameter triple `(n, s, p)` with `0 < s ≤ 1`, `p ≥ 1`, `n ∈ {1, 2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeminormParams {
    n: u8,
    s: Rational,
    p: Rational,
}

impl SeminormParams {
    pub fn new(n: u8, s: Rational, p: Rational) -> Result<Self> {
        if n != 1 && n != 2 {
            return Err(Error::Config(format!("n must be 1 or 2, got {n}")));
        }
        if s <= rat(0, 1) || s > rat(1, 1) {
            return Err(Error::UnsupportedExponent(format!("s must lie in (0, 1], got {s}")));
        }
        if p < rat(1, 1) {
            return Err(Error::UnsupportedExponent(format!("p must be at least 1, got {p}")));
        }
        Ok(SeminormParams { n, s, p })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn s(&self) -> Rational {
        self.s
    }

    pub fn p(&self) -> Rational {
        self.p
    }

    pub fn s_f64(&self) -> f64 {
        self.s.to_f64().expect("rational in (0,1] converts")
    }

    pub fn p_f64(&self) -> f64 {
        self.p.to_f64().expect("rational p converts")
    }

    /// The product `s·p` as an exact rational.
    pub fn sp(&self) -> Rational {
        self.s * self.p
    }

    /// Exact regime classification by the sign of `s·p − n`.
    pub fn regime(&self) -> Regime {
        let n = Rational::from_integer(i64::from(self.n));
        let one = rat(1, 1);
        match self.sp().cmp(&n) {
            std::cmp::Ordering::Less => Regime::Subconformal,
            std::cmp::Ordering::Equal => Regime::Conformal {
                exceptional_1d: self.n == 1 && self.s == one && self.p == one,
            },
            std::cmp::Ordering::Greater => Regime::Superconformal,
        }
    }

    /// Critical Sobolev exponent `p*_s = n·p/(n − s·p)`, defined only in the
    /// subconformal regime.
    pub fn critical_exponent(&self) -> Result<Rational> {
        let n = Rational::from_integer(i64::from(self.n));
        if self.sp() >= n {
            return Err(Error::RegimeMismatch(format!(
                "critical exponent needs sp < n, got s={} p={} n={}",
                self.s, self.p, self.n
            )));
        }
        Ok(n * self.p / (n - self.sp()))
    }

    /// Hölder exponent `α = s − n/p`, defined only in the superconformal regime.
    pub fn holder_exponent(&self) -> Result<Rational> {
        let n = Rational::from_integer(i64::from(self.n));
        if self.sp() <= n {
            return Err(Error::RegimeMismatch(format!(
                "Hölder exponent needs sp > n, got s={} p={} n={}",
                self.s, self.p, self.n
            )));
        }
        Ok(self.s - n / self.p)
    }
}

impl fmt::Display for SeminormParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={},s={},p={}", self.n, self.s, self.p)
    }
}

/// An open ball `B_radius(center)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Self {
        assert!(radius > 0.0, "ball radius must be positive");
        Ball { center, radius }
    }

    /// Centered ball `B_radius(0)`.
    pub fn centered(radius: f64) -> Self {
        Ball::new([0.0, 0.0], radius)
    }
}

/// Far-field behavior of a field, relative to its [`ScalarField::asymptote`].
///
/// The `Power` model declares, for every `|x| ≥ onset`:
///
/// * `|u(x) − asymptote| ≤ amplitude · |x|^{−rate}`, and
/// * `|∇u(x)| ≤ |rate| · amplitude · |x|^{−rate−1}`
///   (so `rate = 0` promises a locally constant far field).
///
/// `rate` may be negative: the field grows like `|x|^{|rate|}` while its
/// gradient still decays — the class the superconformal truncation lemma
/// works with.  Tail estimates consume exactly this contract.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Decay {
    /// Identically zero outside the declared support radius.
    Compact,
    /// Power-law model as documented above.
    Power { onset: f64, amplitude: f64, rate: f64 },
    /// No usable far-field information; tail-sensitive integrals will refuse.
    Unknown,
}

type EvalFn = Arc<dyn Fn(&Point) -> f64 + Send + Sync>;
type GradFn = Arc<dyn Fn(&Point) -> Point + Send + Sync>;
type DistFn = Arc<dyn Fn(&Point) -> f64 + Send + Sync>;

/// A real-valued function on `R^n` with evaluation metadata.
#[derive(Clone)]
pub struct ScalarField {
    label: String,
    n: u8,
    eval_fn: EvalFn,
    grad_fn: Option<GradFn>,
    support_radius: Option<f64>,
    decay: Decay,
    asymptote: f64,
    /// Radii (n = 2) or mirrored coordinates (n = 1) of kinks and feature
    /// edges; meshes split exactly at these and gradient spot-checks avoid
    /// them.  Always nonnegative; `0.0` marks a kink at the origin.
    features: Vec<f64>,
    /// Distance to the kink set, when it is not the radial default.
    kink_dist: Option<DistFn>,
    lipschitz: Option<f64>,
    /// Scalar prefactor kept symbolic so homogeneous quantities can factor it
    /// out exactly.
    scale_factor: f64,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("label", &self.label)
            .field("n", &self.n)
            .field("support_radius", &self.support_radius)
            .field("decay", &self.decay)
            .field("asymptote", &self.asymptote)
            .field("features", &self.features)
            .field("lipschitz", &self.lipschitz)
            .field("scale_factor", &self.scale_factor)
            .finish()
    }
}

impl ScalarField {
    pub fn new(
        n: u8,
        label: impl Into<String>,
        eval: impl Fn(&Point) -> f64 + Send + Sync + 'static,
    ) -> Self {
        assert!(n == 1 || n == 2, "only n = 1, 2 are supported");
        ScalarField {
            label: label.into(),
            n,
            eval_fn: Arc::new(eval),
            grad_fn: None,
            support_radius: None,
            decay: Decay::Unknown,
            asymptote: 0.0,
            features: Vec::new(),
            kink_dist: None,
            lipschitz: None,
            scale_factor: 1.0,
        }
    }

    pub fn with_grad(mut self, grad: impl Fn(&Point) -> Point + Send + Sync + 'static) -> Self {
        self.grad_fn = Some(Arc::new(grad));
        self
    }

    pub fn with_support(mut self, radius: f64) -> Self {
        assert!(radius > 0.0);
        self.support_radius = Some(radius);
        self.decay = Decay::Compact;
        self
    }

    pub fn with_decay(mut self, decay: Decay) -> Self {
        self.decay = decay;
        self
    }

    pub fn with_asymptote(mut self, a: f64) -> Self {
        self.asymptote = a;
        self
    }

    /// Declare kink/feature radii (sorted, deduplicated internally).
    pub fn with_features(mut self, mut features: Vec<f64>) -> Self {
        features.retain(|r| *r >= 0.0);
        features.sort_by(|a, b| a.partial_cmp(b).unwrap());
        features.dedup();
        self.features = features;
        self
    }

    pub fn with_kink_distance(
        mut self,
        dist: impl Fn(&Point) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.kink_dist = Some(Arc::new(dist));
        self
    }

    pub fn with_lipschitz(mut self, l: f64) -> Self {
        self.lipschitz = Some(l);
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Evaluate the field (scalar prefactor included).
    pub fn eval(&self, x: &Point) -> f64 {
        self.scale_factor * (self.eval_fn)(x)
    }

    /// Exact gradient, if declared (scalar prefactor included).
    pub fn grad(&self, x: &Point) -> Option<Point> {
        self.grad_fn.as_ref().map(|g| {
            let v = g(x);
            [self.scale_factor * v[0], self.scale_factor * v[1]]
        })
    }

    pub fn has_grad(&self) -> bool {
        self.grad_fn.is_some()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn support_radius(&self) -> Option<f64> {
        self.support_radius
    }

    pub fn decay(&self) -> Decay {
        self.decay
    }

    /// Constant far-field offset: the value `u` approaches where its decay
    /// model applies.  Seminorms are blind to it; `L^p` integrals require 0.
    pub fn asymptote(&self) -> f64 {
        self.scale_factor * self.asymptote
    }

    pub fn features(&self) -> &[f64] {
        &self.features
    }

    pub fn lipschitz(&self) -> Option<f64> {
        self.lipschitz.map(|l| l * self.scale_factor.abs())
    }

    /// Distance from `x` to the declared kink set (`∞` when there is none).
    pub fn kink_distance(&self, x: &Point) -> f64 {
        if let Some(d) = &self.kink_dist {
            return d(x);
        }
        let r = norm(x);
        self.features
            .iter()
            .map(|f| (r - f).abs())
            .fold(f64::INFINITY, f64::min)
    }

    /// Length scale on which the field lives: support radius, decay onset or
    /// outermost feature, with 1 as a floor.
    pub fn reach(&self) -> f64 {
        let mut r: f64 = 1.0;
        if let Some(s) = self.support_radius {
            r = r.max(s);
        }
        if let Decay::Power { onset, .. } = self.decay {
            r = r.max(onset);
        }
        if let Some(last) = self.features.last() {
            r = r.max(*last);
        }
        r
    }

    /// Split off the symbolic scalar prefactor: returns `(c, v)` with
    /// `u = c·v` and `v` carrying prefactor `1`.
    pub fn split_scale(&self) -> (f64, ScalarField) {
        let mut inner = self.clone();
        inner.scale_factor = 1.0;
        (self.scale_factor, inner)
    }

    /// Multiply by a real scalar (kept symbolic; see [`Self::split_scale`]).
    pub fn scalar_mul(&self, c: f64) -> ScalarField {
        let mut out = self.clone();
        out.scale_factor *= c;
        out.label = format!("{}*{}", fmt_num(c), self.label);
        out
    }

    /// Add a constant: only the asymptote and evaluator shift; the decay
    /// model (which describes `u − asymptote`) is unchanged.
    pub fn add_const(&self, c: f64) -> ScalarField {
        let base = self.clone();
        let eval = base.eval_fn.clone();
        let sf = base.scale_factor;
        // Fold the prefactor in: (c + sf·raw) with prefactor reset to 1.
        let mut out = base;
        out.eval_fn = Arc::new(move |x: &Point| c + sf * eval(x));
        out.grad_fn = out.grad_fn.map(|g| {
            let g = g.clone();
            Arc::new(move |x: &Point| {
                let v = g(x);
                [sf * v[0], sf * v[1]]
            }) as GradFn
        });
        out.scale_factor = 1.0;
        out.asymptote = sf * out.asymptote + c;
        out.support_radius = None; // u + c no longer vanishes far out
        if out.decay == Decay::Compact {
            // Outside the old support the sum is exactly the constant c.
            out.decay = Decay::Power {
                onset: self.support_radius.unwrap_or(1.0),
                amplitude: 0.0,
                rate: 0.0,
            };
        } else if let Decay::Power { onset, amplitude, rate } = out.decay {
            out.decay = Decay::Power { onset, amplitude: amplitude * sf.abs(), rate };
        }
        out.lipschitz = out.lipschitz.map(|l| l * sf.abs());
        out.label = format!("{}+{}", self.label, fmt_num(c));
        out
    }

    /// Pointwise difference `self − other` with conservatively combined
    /// metadata.
    pub fn sub(&self, other: &ScalarField) -> ScalarField {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let (a, b) = (self.clone(), other.clone());
        let label = format!("{}-{}", a.label, b.label);
        let eval = {
            let (a, b) = (a.clone(), b.clone());
            move |x: &Point| a.eval(x) - b.eval(x)
        };
        let mut out = ScalarField::new(self.n, label, eval);
        if let (Some(_), Some(_)) = (a.grad_fn.as_ref(), b.grad_fn.as_ref()) {
            let (ga, gb) = (a.clone(), b.clone());
            out = out.with_grad(move |x: &Point| {
                let u = ga.grad(x).unwrap();
                let v = gb.grad(x).unwrap();
                [u[0] - v[0], u[1] - v[1]]
            });
        }
        match (a.support_radius, b.support_radius) {
            (Some(ra), Some(rb)) => {
                out = out.with_support(ra.max(rb));
            }
            _ => {
                out.decay = combine_power(a.far_model(), b.far_model());
            }
        }
        out.asymptote = a.asymptote() - b.asymptote();
        let mut features = a.features.clone();
        features.extend_from_slice(&b.features);
        out = out.with_features(features);
        if let (Some(la), Some(lb)) = (a.lipschitz(), b.lipschitz()) {
            out = out.with_lipschitz(la + lb);
        }
        out
    }

    /// Translate by `a` along the first axis (the only translation the 1-D
    /// experiments need): returns `x ↦ u(x − a·e_1)`.
    pub fn translate(&self, a: f64) -> ScalarField {
        let base = self.clone();
        let label = format!("{}(.-{})", self.label, fmt_num(a));
        let eval = {
            let base = base.clone();
            move |x: &Point| base.eval(&[x[0] - a, x[1]])
        };
        let mut out = ScalarField::new(self.n, label, eval);
        if base.grad_fn.is_some() {
            let b = base.clone();
            out = out.with_grad(move |x: &Point| b.grad(&[x[0] - a, x[1]]).unwrap());
        }
        if let Some(r) = base.support_radius {
            out = out.with_support(r + a.abs());
        }
        if let Decay::Power { onset, amplitude, rate } = base.decay {
            // |x| large ⇒ |x - a e_1| ≥ |x| − |a|; keep the model with a
            // shifted onset and an amplitude covering the worst offset.
            let onset2 = 2.0 * (onset + a.abs());
            let adjust = if rate != 0.0 { (2.0f64).powf(rate.abs()) } else { 1.0 };
            out = out.with_decay(Decay::Power {
                onset: onset2,
                amplitude: amplitude * adjust,
                rate,
            });
        }
        out.asymptote = base.asymptote();
        // n = 1 features are mirrored coordinates; translation breaks the
        // mirror symmetry, so record both shifted copies.
        let mut features: Vec<f64> = Vec::new();
        for f in &base.features {
            features.push((f + a).abs());
            features.push((-f + a).abs());
        }
        out = out.with_features(features);
        if let Some(l) = base.lipschitz() {
            out = out.with_lipschitz(l);
        }
        let b2 = base.clone();
        out = out.with_kink_distance(move |x: &Point| b2.kink_distance(&[x[0] - a, x[1]]));
        out
    }

    /// The field's own `Power` model, converting `Compact` into an
    /// exactly-zero far field.
    pub(crate) fn far_model(&self) -> Option<(f64, f64, f64)> {
        match self.decay {
            Decay::Compact => self.support_radius.map(|r| (r, 0.0, 0.0)),
            Decay::Power { onset, amplitude, rate } => {
                Some((onset, amplitude * self.scale_factor.abs(), rate))
            }
            Decay::Unknown => None,
        }
    }
}

/// Combine two far-field models for a sum/difference of fields.
fn combine_power(a: Option<(f64, f64, f64)>, b: Option<(f64, f64, f64)>) -> Decay {
    match (a, b) {
        (Some((oa, aa, ra)), Some((ob, ab, rb))) => {
            // An amplitude-zero side is exactly zero beyond its onset (a
            // compact summand): the other side's model survives alone.
            if aa == 0.0 {
                return Decay::Power { onset: oa.max(ob).max(1.0), amplitude: ab, rate: rb };
            }
            if ab == 0.0 {
                return Decay::Power { onset: oa.max(ob).max(1.0), amplitude: aa, rate: ra };
            }
            let rate = ra.min(rb);
            // Gradient contract: |rate|·A must dominate |ra|·aa + |rb|·ab.
            let grad_needed = ra.abs() * aa + rb.abs() * ab;
            let amp_needed = aa + ab;
            if rate == 0.0 && grad_needed > 0.0 {
                return Decay::Unknown;
            }
            let amplitude = if rate == 0.0 {
                amp_needed
            } else {
                amp_needed.max(grad_needed / rate.abs())
            };
            Decay::Power { onset: oa.max(ob).max(1.0), amplitude, rate }
        }
        _ => Decay::Unknown,
    }
}

fn fmt_num(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

/// The hat function `max(1 − |x|, 0)`.
pub fn hat(n: u8) -> ScalarField {
    ScalarField::new(n, "hat", |x| (1.0 - norm(x)).max(0.0))
        .with_grad(|x| {
            let r = norm(x);
            if r > 0.0 && r < 1.0 {
                [-x[0] / r, -x[1] / r]
            } else {
                [0.0, 0.0]
            }
        })
        .with_support(1.0)
        .with_features(vec![0.0, 1.0])
        .with_lipschitz(1.0)
}

/// Gaussian-type bump `exp(−|x|²)`.
pub fn gauss(n: u8) -> ScalarField {
    ScalarField::new(n, "gauss", |x| (-(x[0] * x[0] + x[1] * x[1])).exp())
        .with_grad(|x| {
            let e = (-(x[0] * x[0] + x[1] * x[1])).exp();
            [-2.0 * x[0] * e, -2.0 * x[1] * e]
        })
        // e^{−r²} ≤ 14·r^{−10} and |∇| = 2r e^{−r²} ≤ 140·r^{−11} for r ≥ 3.
        .with_decay(Decay::Power { onset: 3.0, amplitude: 14.0, rate: 10.0 })
        .with_lipschitz(0.9)
}

/// Smooth compactly supported bump `exp(−1/(1−|x|²))` on `B_1`, `0` outside.
pub fn bump(n: u8) -> ScalarField {
    ScalarField::new(n, "bump", |x| bump_profile(norm(x)))
        .with_grad(|x| {
            let r2 = x[0] * x[0] + x[1] * x[1];
            if r2 >= 1.0 {
                return [0.0, 0.0];
            }
            let d = 1.0 - r2;
            let v = (-1.0 / d).exp();
            let c = -2.0 * v / (d * d);
            [c * x[0], c * x[1]]
        })
        .with_support(1.0)
        .with_features(vec![1.0])
        .with_lipschitz(0.85)
}

pub(crate) fn bump_profile(r: f64) -> f64 {
    if r < 1.0 {
        (-1.0 / (1.0 - r * r)).exp()
    } else {
        0.0
    }
}

/// The slowly decaying radial field `(1 + |x|²)^{−α/2}`.
///
/// For `n/p − s < α ≤ n/p` it has a finite Gagliardo seminorm but is not in
/// `L^p`, which is exactly what the truncation experiments exercise.
pub fn powtail(n: u8, alpha: f64) -> ScalarField {
    assert!(alpha > 0.0);
    ScalarField::new(n, format!("powtail:alpha={}", fmt_num(alpha)), move |x| {
        (1.0 + x[0] * x[0] + x[1] * x[1]).powf(-alpha / 2.0)
    })
    .with_grad(move |x| {
        let c = -alpha * (1.0 + x[0] * x[0] + x[1] * x[1]).powf(-alpha / 2.0 - 1.0);
        [c * x[0], c * x[1]]
    })
    // (1+r²)^{−α/2} ≤ r^{−α} and |∇| = αr(1+r²)^{−α/2−1} ≤ α·r^{−α−1}.
    .with_decay(Decay::Power { onset: 1.0, amplitude: 1.0, rate: alpha })
    .with_lipschitz(0.6 * alpha)
}

/// Bounded growth field `(1 + |x|²)^{β/2} − 1` with `u(0) = 0`.
///
/// Grows like `|x|^β` at infinity; for `β < s − n/p` its Gagliardo seminorm
/// is finite, making it the superconformal truncation witness.
pub fn powgrow(n: u8, beta: f64) -> ScalarField {
    assert!((0.0..1.0).contains(&beta));
    ScalarField::new(n, format!("powgrow:beta={}", fmt_num(beta)), move |x| {
        (1.0 + x[0] * x[0] + x[1] * x[1]).powf(beta / 2.0) - 1.0
    })
    .with_grad(move |x| {
        let c = beta * (1.0 + x[0] * x[0] + x[1] * x[1]).powf(beta / 2.0 - 1.0);
        [c * x[0], c * x[1]]
    })
    // |u| ≤ 2^{β/2}·|x|^{β} and |∇u| ≤ β·|x|^{β−1} for |x| ≥ 1.
    .with_decay(Decay::Power { onset: 1.0, amplitude: (2.0f64).powf(beta / 2.0), rate: -beta })
    .with_lipschitz(beta)
}

/// `sign(x₁)·min(|x₁|, 1)`, i.e. `x₁` clamped to `[−1, 1]` — bounded and
/// non-smooth, constant on each far component of the line.
///
/// Only in one dimension does the far field settle: for `n = 2` the
/// transition slab `|x₁| < 1` reaches every radius, no radial decay model
/// holds, and the Gagliardo seminorm is genuinely infinite (pairs straddling
/// the slab contribute uniformly along the slab).  The metadata says so.
pub fn clamp(n: u8) -> ScalarField {
    let decay = if n == 1 {
        Decay::Power { onset: 1.5, amplitude: 1.0, rate: 0.0 }
    } else {
        Decay::Unknown
    };
    ScalarField::new(n, "clamp", |x| x[0].clamp(-1.0, 1.0))
        .with_grad(|x| if x[0].abs() < 1.0 { [1.0, 0.0] } else { [0.0, 0.0] })
        .with_decay(decay)
        .with_features(vec![1.0])
        .with_kink_distance(|x| (x[0].abs() - 1.0).abs())
        .with_lipschitz(1.0)
}

/// The jump function `sign(x₁)`.  Its jump line reaches every radius when
/// `n = 2`, so a radial decay model exists only on the line.
pub fn sign(n: u8) -> ScalarField {
    let decay = if n == 1 {
        Decay::Power { onset: 1.0, amplitude: 1.0, rate: 0.0 }
    } else {
        Decay::Unknown
    };
    ScalarField::new(n, "sign", |x| {
        if x[0] > 0.0 {
            1.0
        } else if x[0] < 0.0 {
            -1.0
        } else {
            0.0
        }
    })
    .with_decay(decay)
    .with_features(vec![0.0])
    .with_kink_distance(|x| x[0].abs())
}

/// Constant field.
pub fn constant(n: u8, c: f64) -> ScalarField {
    ScalarField::new(n, format!("const:c={}", fmt_num(c)), move |_| c)
        .with_grad(|_| [0.0, 0.0])
        .with_decay(Decay::Power { onset: 1.0, amplitude: 0.0, rate: 0.0 })
        .with_asymptote(c)
        .with_lipschitz(0.0)
}

/// The coordinate function `x₁` (for Campanato/Hölder closed forms).
pub fn linear(n: u8) -> ScalarField {
    ScalarField::new(n, "linear", |x| x[0])
        .with_grad(|_| [1.0, 0.0])
        .with_lipschitz(1.0)
}

/// Smooth plateau bump: `≡ 1` on `B_1`, smooth ramp on `1 ≤ |x| ≤ 2`, `0`
/// outside `B_2`.  This is the profile the superconformal null sequence and
/// the linear cutoff family rescale.
pub fn plateau(n: u8) -> ScalarField {
    ScalarField::new(n, "plateau", |x| smoothstep(2.0 - norm(x)))
        .with_grad(|x| {
            let r = norm(x);
            if r <= 1.0 || r >= 2.0 || r == 0.0 {
                return [0.0, 0.0];
            }
            let d = smoothstep_deriv(2.0 - r);
            [-d * x[0] / r, -d * x[1] / r]
        })
        .with_support(2.0)
        .with_features(vec![1.0, 2.0])
        .with_lipschitz(2.0)
}

/// `C^∞` step: 0 for `t ≤ 0`, 1 for `t ≥ 1`, strictly monotone between.
pub(crate) fn smoothstep(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let f = (-1.0 / t).exp();
        let g = (-1.0 / (1.0 - t)).exp();
        f / (f + g)
    }
}

pub(crate) fn smoothstep_deriv(t: f64) -> f64 {
    if t <= 0.0 || t >= 1.0 {
        return 0.0;
    }
    let f = (-1.0 / t).exp();
    let g = (-1.0 / (1.0 - t)).exp();
    let fp = f / (t * t);
    let gp = -g / ((1.0 - t) * (1.0 - t));
    (fp * (f + g) - f * (fp + gp)) / ((f + g) * (f + g))
}

/// The standard catalog: every experiment draws its fields from here.
pub fn catalog(n: u8) -> Vec<ScalarField> {
    let alpha = if n == 1 { 0.75 } else { 1.5 };
    vec![
        hat(n),
        gauss(n),
        bump(n),
        powtail(n, alpha),
        clamp(n),
        constant(n, 1.0),
    ]
}

/// Look a field up by CLI label, e.g. `"hat"`, `"powtail:alpha=0.75"`,
/// `"const:c=2"`, `"powgrow:beta=0.3"`.
pub fn by_label(n: u8, label: &str) -> Result<ScalarField> {
    let (name, args) = match label.split_once(':') {
        Some((name, args)) => (name, Some(args)),
        None => (label, None),
    };
    let param = |key: &str, default: Option<f64>| -> Result<f64> {
        if let Some(args) = args {
            for pair in args.split(',') {
                if let Some((k, v)) = pair.split_once('=') {
                    if k.trim() == key {
                        return v.trim().parse().map_err(|_| {
                            Error::Config(format!("bad value for {key} in field label '{label}'"))
                        });
                    }
                }
            }
        }
        default.ok_or_else(|| {
            Error::Config(format!("field label '{label}' is missing required parameter {key}"))
        })
    };
    match name {
        "hat" => Ok(hat(n)),
        "gauss" => Ok(gauss(n)),
        "bump" => Ok(bump(n)),
        "plateau" => Ok(plateau(n)),
        "clamp" => Ok(clamp(n)),
        "sign" => Ok(sign(n)),
        "linear" => Ok(linear(n)),
        "powtail" => Ok(powtail(n, param("alpha", Some(if n == 1 { 0.75 } else { 1.5 }))?)),
        "powgrow" => Ok(powgrow(n, param("beta", None)?)),
        "const" => Ok(constant(n, param("c", Some(1.0))?)),
        _ => Err(Error::Config(format!("unknown field label '{label}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn omega_matches_closed_form() {
        // π^{n/2}/Γ(n/2+1) with Γ(3/2) = √π/2 and Γ(2) = 1.
        let pi = std::f64::consts::PI;
        let omega1 = pi.sqrt() / (pi.sqrt() / 2.0);
        let omega2 = pi / 1.0;
        assert_relative_eq!(omega_n(1), omega1, max_relative = 1e-12);
        assert_relative_eq!(omega_n(2), omega2, max_relative = 1e-12);
    }

    #[test]
    fn regime_trichotomy_is_exact() {
        let sub = SeminormParams::new(1, rat(1, 2), rat(1, 1)).unwrap();
        assert_eq!(sub.regime(), Regime::Subconformal);
        let con = SeminormParams::new(1, rat(1, 2), rat(2, 1)).unwrap();
        assert_eq!(con.regime(), Regime::Conformal { exceptional_1d: false });
        let exc = SeminormParams::new(1, rat(1, 1), rat(1, 1)).unwrap();
        assert_eq!(exc.regime(), Regime::Conformal { exceptional_1d: true });
        let sup = SeminormParams::new(2, rat(3, 4), rat(4, 1)).unwrap();
        assert_eq!(sup.regime(), Regime::Superconformal);
        // A near-conformal rational that floating point would misclassify.
        let close = SeminormParams::new(1, rat(333_333_333, 1_000_000_000), rat(3, 1)).unwrap();
        assert_eq!(close.regime(), Regime::Subconformal);
    }

    #[test]
    fn derived_exponents() {
        let a = SeminormParams::new(1, rat(1, 2), rat(1, 1)).unwrap();
        assert_eq!(a.critical_exponent().unwrap(), rat(2, 1));
        let b = SeminormParams::new(2, rat(1, 2), rat(2, 1)).unwrap();
        assert_eq!(b.critical_exponent().unwrap(), rat(4, 1));
        let c = SeminormParams::new(1, rat(3, 4), rat(2, 1)).unwrap();
        assert_eq!(c.holder_exponent().unwrap(), rat(1, 4));
        // α + n/p = s exactly.
        assert_eq!(c.holder_exponent().unwrap() + rat(1, 2), c.s());
        assert!(b.holder_exponent().is_err());
        assert!(c.critical_exponent().is_err());
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("0.75").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("2").unwrap(), rat(2, 1));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn catalog_pointwise_values() {
        let h = hat(1);
        assert_eq!(h.eval(&[0.0, 0.0]), 1.0);
        assert_eq!(h.eval(&[1.0, 0.0]), 0.0);
        assert_eq!(h.eval(&[-1.0, 0.0]), 0.0);
        let p = powtail(1, 1.0);
        assert_eq!(p.eval(&[0.0, 0.0]), 1.0);
        let b = bump(1);
        assert_eq!(b.eval(&[1.0, 0.0]), 0.0);
        assert_eq!(b.support_radius(), Some(1.0));
        let c = clamp(1);
        assert_eq!(c.eval(&[0.25, 0.0]), 0.25);
        assert_eq!(c.eval(&[-7.0, 0.0]), -1.0);
        let pl = plateau(2);
        assert_eq!(pl.eval(&[0.5, 0.5]), 1.0);
        assert_eq!(pl.eval(&[2.0, 1.0]), 0.0);
        assert_relative_eq!(pl.eval(&[1.5, 0.0]), smoothstep(0.5), max_relative = 1e-15);
    }

    #[test]
    fn support_metadata_is_honest() {
        for n in [1u8, 2] {
            for f in catalog(n) {
                if let Some(r) = f.support_radius() {
                    for k in 1..40 {
                        let rr = r * (1.0 + 0.37 * k as f64);
                        let x = if n == 1 { [rr, 0.0] } else { [rr / 2f64.sqrt(), rr / 2f64.sqrt()] };
                        assert_eq!(f.eval(&x), 0.0, "{} not zero at |x|={rr}", f.label());
                    }
                }
            }
        }
    }

    /// Central finite differences must agree with declared gradients away
    /// from kinks (relative error < 1e-4).
    #[test]
    fn gradients_match_finite_differences() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [1u8, 2] {
            let mut fields = catalog(n);
            fields.push(powgrow(n, 0.3));
            fields.push(plateau(n));
            fields.push(linear(n));
            for f in fields {
                if !f.has_grad() {
                    continue;
                }
                let reach = f.reach();
                let mut checked = 0;
                while checked < 25 {
                    let x = [
                        rng.gen_range(-1.2 * reach..1.2 * reach),
                        if n == 2 { rng.gen_range(-1.2 * reach..1.2 * reach) } else { 0.0 },
                    ];
                    if f.kink_distance(&x) < 0.05 * reach {
                        continue;
                    }
                    let g = f.grad(&x).unwrap();
                    let step = 1e-5 * reach.max(1.0);
                    for axis in 0..usize::from(n) {
                        let mut xp = x;
                        let mut xm = x;
                        xp[axis] += step;
                        xm[axis] -= step;
                        let fd = (f.eval(&xp) - f.eval(&xm)) / (2.0 * step);
                        let scale = g[axis].abs().max(1e-6);
                        assert!(
                            (fd - g[axis]).abs() / scale < 1e-4,
                            "{}: grad mismatch at {:?}: fd={fd}, grad={}",
                            f.label(),
                            x,
                            g[axis]
                        );
                    }
                    checked += 1;
                }
            }
        }
    }

    #[test]
    fn lipschitz_bounds_hold_on_samples() {
        for n in [1u8, 2] {
            let mut fields = catalog(n);
            fields.push(plateau(n));
            fields.push(powgrow(n, 0.3));
            for f in fields {
                let (Some(l), true) = (f.lipschitz(), f.has_grad()) else { continue };
                let reach = f.reach();
                for k in 0..400 {
                    let t = -1.5 * reach + 3.0 * reach * (k as f64) / 399.0;
                    let x = if n == 1 { [t, 0.0] } else { [t, 0.3 * t] };
                    let g = f.grad(&x).unwrap();
                    assert!(
                        norm(&g) <= l * 1.0001,
                        "{}: |grad|={} exceeds lipschitz {} at {:?}",
                        f.label(),
                        norm(&g),
                        l,
                        x
                    );
                }
            }
        }
    }

    #[test]
    fn decay_models_hold_on_samples() {
        for n in [1u8, 2] {
            let mut fields = catalog(n);
            fields.push(powgrow(n, 0.3));
            fields.push(sign(n));
            for f in fields {
                let Decay::Power { onset, amplitude, rate } = f.decay() else { continue };
                for k in 0..200 {
                    let r = onset * (1.0 + 0.25 * k as f64);
                    let x = if n == 1 { [r, 0.0] } else { [r * 0.6, r * 0.8] };
                    let bound = amplitude * r.powf(-rate) + 1e-14;
                    assert!(
                        (f.eval(&x) - f.asymptote()).abs() <= bound,
                        "{}: |u - a| at r={r} exceeds model",
                        f.label()
                    );
                    if let Some(g) = f.grad(&x) {
                        let gbound = rate.abs() * amplitude * r.powf(-rate - 1.0) + 1e-14;
                        assert!(
                            norm(&g) <= gbound,
                            "{}: |grad| at r={r} exceeds model",
                            f.label()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn scalar_prefactor_splits_exactly() {
        let u = hat(1).scalar_mul(-5.0);
        let (c, v) = u.split_scale();
        assert_eq!(c, -5.0);
        assert_eq!(v.eval(&[0.3, 0.0]), hat(1).eval(&[0.3, 0.0]));
        assert_eq!(u.eval(&[0.3, 0.0]), -5.0 * hat(1).eval(&[0.3, 0.0]));
    }

    #[test]
    fn add_const_shifts_asymptote_only() {
        let u = gauss(1).add_const(3.0);
        assert_eq!(u.asymptote(), 3.0);
        assert_relative_eq!(u.eval(&[0.0, 0.0]), 4.0, max_relative = 1e-15);
        assert!(matches!(u.decay(), Decay::Power { .. }));
    }

    #[test]
    fn translate_moves_field_and_kinks() {
        let u = hat(1).translate(2.0);
        assert_eq!(u.eval(&[2.0, 0.0]), 1.0);
        assert_eq!(u.eval(&[0.5, 0.0]), 0.0);
        assert_eq!(u.kink_distance(&[2.0, 0.0]), 0.0);
        assert_eq!(u.kink_distance(&[3.0, 0.0]), 0.0);
        assert!(u.support_radius().unwrap() >= 3.0);
    }

    #[test]
    fn by_label_roundtrip() {
        assert!(by_label(1, "hat").is_ok());
        assert!(by_label(2, "powtail:alpha=0.6").is_ok());
        assert_eq!(by_label(1, "const:c=2").unwrap().eval(&[9.0, 0.0]), 2.0);
        assert!(by_label(1, "nope").is_err());
        assert!(by_label(1, "powgrow").is_err()); // beta is required
    }
}
