use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector has norm {norm}, expected 1 within 1e-12")]
    NotUnitLength { norm: f64 },

    #[error("cannot normalize a zero or non-finite vector")]
    ZeroVector,

    #[error("Bloch vector has length {0}, must not exceed 1")]
    NotAState(f64),

    #[error("probability {0} lies outside [0, 1]")]
    ProbabilityDomain(f64),

    #[error("invalid probability vector: {0}")]
    InvalidDistribution(String),

    #[error("axes are (anti)parallel, the plane they span is undefined")]
    DegeneratePlane,

    #[error("sharpness {name} = {value} lies outside [0, 1]")]
    SharpnessRange { name: &'static str, value: f64 },

    #[error("angle {0} lies outside [0, pi]")]
    AngleRange(f64),

    #[error("sharpness pair violates |αa+βb| + |αa−βb| ≤ 2 (got {0})")]
    SharpnessViolation(f64),

    #[error("sharpness pair is not optimal: |αa+βb| + |αa−βb| = {0} < 2")]
    NotOptimal(f64),

    #[error("degenerate scheme: axis probability p = {0} leaves one axis undefined")]
    DegenerateScheme(f64),

    #[error("α² + β² = {0} is too close to 2, overlap formula is singular")]
    OverlapSingular(f64),

    #[error("eigenvector overlap must lie in (0, 1], got {0}")]
    OverlapDomain(f64),

    #[error("η = {eta} lies outside the validity range of this bound")]
    OutOfValidityRange { eta: f64 },

    #[error("bound requires α = β = √(1/(1+|sin η|)), got α = {alpha}, β = {beta}")]
    NotEqualSharpness { alpha: f64, beta: f64 },

    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
