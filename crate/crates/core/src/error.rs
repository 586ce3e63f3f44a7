use thiserror::Error;

#[derive(Debug, Error)]
pub enum JchError {
    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator does not commute with translations (residual {residual:e})")]
    SymmetryViolation { residual: f64 },

    #[error("plaquette flux undefined at column {column}, legs {lower}-{upper}: zero link")]
    FluxUndefined { column: usize, lower: usize, upper: usize },

    #[error("interference path {path} broken at step {step}: vanishing overlap")]
    PathBroken { path: &'static str, step: usize },

    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    #[error("staggered construction needs an even ring, got N = {0}")]
    OddRing(usize),

    #[error("{what} = {value} outside admissible range {range}")]
    OutOfRange { what: &'static str, value: i64, range: String },

    #[error("state {0} vanishes identically on this ring")]
    VanishingState(String),

    #[error("not an eigenstate: {0}")]
    NotAnEigenstate(String),

    #[error("parity decomposition violated: cross-parity element {magnitude:e}")]
    DecompositionViolated { magnitude: f64 },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("polariton projection captured zero weight")]
    ZeroCapturedWeight,

    #[error("spectra have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, JchError>;
