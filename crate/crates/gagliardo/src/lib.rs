//! Numerical functional analysis on `R^n` (`n = 1, 2`): fractional Sobolev
//! (Gagliardo–Slobodeckiĭ), Campanato, BMO and Hölder seminorms, together with
//! a verification harness for the embedding inequalities that relate them.
//!
//! The crate is organized in layers:
//!
//! * [`fields`] — analytic test functions with the metadata the integration
//!   engines need (support radii, decay models, kink locations).
//! * [`quadrature`] — singular double integrals for the Gagliardo kernel
//!   `|u(x)-u(y)|^p / |x-y|^{n+sp}`, `L^p` integrals, supremum estimation.
//! * [`seminorms`] — the seminorms themselves, with the `s(1-s)`
//!   normalization applied in exactly one place.
//! * [`constructions`] — scalings, null sequences, mollifiers, cutoff
//!   families and truncation experiments.
//! * [`verify`] — inequality checks (Sobolev, Morrey, Poincaré–Wirtinger,
//!   weighted integrability, …), rate fitting, and the full suite.
//! * [`cli`] — deterministic CSV front end used by the `gagliardo` binary.
//!
//! Start with the `examples/` directory for runnable tours of each layer.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod fields;
pub mod quadrature;
pub mod seminorms;
pub mod verify;

pub use constructions::{
    conformal_null, cutoff, mollifier, mollify, scale, superconformal_null, truncation_error,
    CutoffFamily, CutoffVariant,
};
pub use error::{Error, Result};
pub use fields::{Ball, Decay, Point, Rational, Regime, ScalarField, SeminormParams};
pub use quadrature::{
    ball_lp, gagliardo_applicable, gradient_lp, lp_integral, sup_norm, Estimate, Method,
    QuadratureSpec,
};
pub use seminorms::{
    annulus_gagliardo, bmo_seminorm, campanato_seminorm, gagliardo_seminorm, holder_seminorm,
    lp_norm, mean_on_ball, weighted_campanato_integral, SeminormKind, SeminormValue,
};
pub use verify::{
    check_local_pw, check_morrey, check_morrey_campanato, check_poincare_wirtinger,
    check_pw_flexible, check_sharp_1d, check_sobolev, check_weighted_integrability,
    conformal_sweep, fit_rate, full_suite, mollification_sweep, superconformal_sweep,
    truncation_sweep, InequalityReport, RateFit, SuiteConfig, SweepPoint,
};
