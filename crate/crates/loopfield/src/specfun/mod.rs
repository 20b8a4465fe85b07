//! Special-function kernel: gamma, Gauss hypergeometric 2F1, and complete
//! elliptic integrals K and E.
//!
//! All elliptic routines use the parameter convention `m = k^2` (the same
//! as `scipy.special.ellipk`/`ellipe`), never the modulus `k` itself.
//! Every function here is a pure function of its arguments and is safe to
//! call concurrently.

mod elliptic;
mod gamma;
mod hyp2f1;

pub use elliptic::{ellip_e, ellip_k};
pub use gamma::gamma;
pub use hyp2f1::gauss_2f1;

/// Errors reported by the special-function kernel.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecFunError {
    #[error("gamma function pole at non-positive integer x = {0}")]
    GammaPole(f64),
    #[error("argument must be finite, got {0}")]
    NonFiniteArgument(f64),
    #[error("2F1 parameter c = {0} is zero or a negative integer")]
    HypParamPole(f64),
    #[error("2F1 argument z = {0} is outside [0, 1)")]
    HypArgumentRange(f64),
    #[error("series did not converge to rel_tol = {rel_tol:e} within {max_terms} terms")]
    NoConvergence { rel_tol: f64, max_terms: usize },
    #[error("elliptic integral parameter m = {m} outside [{lo}, {hi})")]
    EllipticDomain { m: f64, lo: f64, hi: f64 },
    #[error("invalid series control: {0}")]
    BadSeriesControl(&'static str),
}

/// Parameters of the Gauss hypergeometric function 2F1(a, b; c; z).
///
/// The argument is restricted to `z` in `[0, 1)`, which covers every
/// evaluation this crate performs (the loop-field closed forms map
/// `xi` in `[0, 1)` to `z = 2*xi/(1 + xi)` in `[0, 1)`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
}

impl HypParams {
    /// Validates that `c` is not a pole of the series and that `z` lies
    /// in `[0, 1)`.
    pub fn new(a: f64, b: f64, c: f64, z: f64) -> Result<Self, SpecFunError> {
        for v in [a, b, c, z] {
            if !v.is_finite() {
                return Err(SpecFunError::NonFiniteArgument(v));
            }
        }
        if c <= 0.0 && c == c.floor() {
            return Err(SpecFunError::HypParamPole(c));
        }
        if !(0.0..1.0).contains(&z) {
            return Err(SpecFunError::HypArgumentRange(z));
        }
        Ok(HypParams { a, b, c, z })
    }
}

/// Truncation control for series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    /// Relative tolerance on the last summed term.
    pub rel_tol: f64,
    /// Hard cap on the number of series terms.
    pub max_terms: usize,
}

impl SeriesControl {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self, SpecFunError> {
        if rel_tol.is_nan() || rel_tol <= 0.0 {
            return Err(SpecFunError::BadSeriesControl("rel_tol must be positive"));
        }
        if max_terms == 0 {
            return Err(SpecFunError::BadSeriesControl("max_terms must be >= 1"));
        }
        Ok(SeriesControl { rel_tol, max_terms })
    }
}

impl Default for SeriesControl {
    /// `rel_tol = 1e-14`, `max_terms = 10^6`. The series converges
    /// geometrically with ratio `z`, so the cap is generous even for
    /// arguments close to 1.
    fn default() -> Self {
        SeriesControl {
            rel_tol: 1e-14,
            max_terms: 1_000_000,
        }
    }
}
