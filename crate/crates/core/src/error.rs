use thiserror::Error;

/// Failure modes shared by every geometric and analytic routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("point ({u}, {v}) lies outside the patch domain")]
    OutOfDomain { u: f64, v: f64 },

    #[error("parameter t = {t} lies outside the curve domain [{min}, {max}]")]
    OutOfCurveDomain { t: f64, min: f64, max: f64 },

    #[error("degenerate jet: |p_u x p_v| = {cross_norm:e}")]
    DegenerateJet { cross_norm: f64 },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),

    #[error("parametrization is not orthogonal: |F| = {f:e} exceeds {bound:e}")]
    NotOrthogonal { f: f64, bound: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
