//! Error type shared by all modules.

use thiserror::Error;

/// Everything that can go wrong while evaluating seminorms or running checks.
#[derive(Debug, Error)]
pub enum Error {
    /// The integrand does not decay fast enough for the requested integral to
    /// converge (or the field declares no usable decay metadata at all).
    #[error("non-integrable tail: {0}")]
    NonIntegrableTail(String),

    /// An exponent outside the supported range (e.g. `p = ∞` passed to an
    /// `L^p` integral, or `s` outside `(0, 1]`).
    #[error("unsupported exponent: {0}")]
    UnsupportedExponent(String),

    /// An operation that needs an exact gradient was given a field without one.
    #[error("missing gradient: {0}")]
    MissingGradient(String),

    /// The weighted integrability lemma requires zero mean on the reference
    /// ball; the supplied field violates it beyond tolerance.
    #[error("mean over the reference ball is {mean:.3e}, exceeding the zero-mean tolerance {tol:.3e}")]
    NonzeroMean { mean: f64, tol: f64 },

    /// A check was invoked outside the regime it applies to.
    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),

    /// Log-log regression cannot be performed (fewer than 3 points, repeated
    /// abscissae, non-positive data).
    #[error("degenerate rate fit: {0}")]
    DegenerateFit(String),

    /// Refinement stalled above the target error.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// Invalid configuration (bad flag value, inconsistent quadrature spec).
    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
