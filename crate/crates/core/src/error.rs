use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate metric: |det g| = {det:e} is below tolerance")]
    DegenerateMetric { det: f64 },

    #[error("point is in chart `{found}` but the metric is defined on chart `{expected}`")]
    ChartMismatch { expected: String, found: String },

    #[error("point outside the metric's domain: {0}")]
    OutOfDomain(String),

    #[error("curve left the chart domain at affine parameter {s}")]
    ChartExit { s: f64 },

    #[error("four-velocity is not unit timelike: g(u,u) = {norm}")]
    UnnormalizedVelocity { norm: f64 },

    #[error("jacobian and inverse jacobian disagree by {residual:e}")]
    BadJacobian { residual: f64 },

    #[error("level function has zero gradient on the surface")]
    ZeroGradient,

    #[error("candidate vector is tangent to the surface")]
    NoTransverse,

    #[error(
        "geodesic fan is ill-conditioned (condition estimate {condition:e}); shrink the patch"
    )]
    PatchTooLarge { condition: f64 },

    #[error("shock radius is non-positive at t = {t}")]
    ShockAtOrigin { t: f64 },

    #[error("branch error: {0}")]
    BranchError(String),

    #[error("equation-of-state constant {0} outside the admissible range")]
    BadSigma(f64),

    #[error("shock surface is characteristic (margin {margin:e})")]
    CharacteristicSurface { margin: f64 },

    #[error("areal derivative N(c) = {value:e} vanishes on the surface")]
    AreaDerivativeZero { value: f64 },

    #[error("no sign change of s(sigma) - 1 on the bracket")]
    NoRoot,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
