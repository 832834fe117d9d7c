use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no Coulomb-bound leading order: V0 = {0} must be negative")]
    NoCoulombBound(String),
    #[error("mass must be positive, got {0}")]
    NonPositiveMass(String),
    #[error("potential series has no coefficients")]
    EmptyCoefficients,
    #[error("insufficient potential coefficients: order {order} needs {required}, got {available}")]
    InsufficientCoefficients {
        order: usize,
        required: usize,
        available: usize,
    },
    #[error("coefficient count {requested} exceeds cap {cap}")]
    CoefficientCap { requested: usize, cap: usize },
    #[error("invalid potential spec: {0}")]
    InvalidSpec(String),
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(String),
    #[error("potential kind `{0}` has no closed form")]
    NoClosedForm(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid Padé order [{l}/{m}] for series of order {order}")]
    InvalidPadeOrder { l: usize, m: usize, order: usize },
    #[error("singular Padé system for [{l}/{m}]")]
    SingularPade { l: usize, m: usize },
    #[error("invalid radial grid: {0}")]
    InvalidGrid(String),
    #[error("no bound state in bracket for n = {n}, l = {l}")]
    NoBoundStateInBracket { n: u32, l: u32 },
    #[error("grid too coarse: doubling the steps shifted E by {shift:e} (limit {limit:e})")]
    GridTooCoarse { shift: f64, limit: f64 },
    #[error("state dissolved: closed-form energy {0} is not negative")]
    StateDissolved(String),
    #[error("cannot parse rational `{0}`")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
