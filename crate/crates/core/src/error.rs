use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("NotDynkin: {0}")]
    NotDynkin(String),
    #[error("Cyclic: quiver has an oriented cycle through {0}")]
    Cyclic(String),
    #[error("NotInvolution: {0}")]
    NotInvolution(String),
    #[error("NotAutomorphism: involution does not preserve arrow {0}")]
    NotAutomorphism(String),
    #[error("AdjacentOrbit: vertices {0} and {1} form an involution orbit but are adjacent")]
    AdjacentOrbit(String, String),
    #[error("NotASink: vertex {0} is not a sink of the quiver")]
    NotASink(String),
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
    #[error("InconsistentFingerprint: {0}")]
    InconsistentFingerprint(String),
    #[error("DimMismatch: {0}")]
    DimMismatch(String),
    #[error("BudgetExceeded: more than {0} candidates enumerated")]
    BudgetExceeded(u64),
    #[error("StabilizationFailed: {0}")]
    StabilizationFailed(String),
    #[error("NonIntegralCoefficient: {0}")]
    NonIntegralCoefficient(String),
    #[error("KindUnavailable: {0}")]
    KindUnavailable(String),
    #[error("RankDeficient: {0}")]
    RankDeficient(String),
    #[error("NonSolvableResidual: {0}")]
    NonSolvableResidual(String),
    #[error("NonRationalCoefficient: {0}")]
    NonRationalCoefficient(String),
    #[error("QuiverMismatch: {0}")]
    QuiverMismatch(String),
    #[error("CacheRejected: {0}")]
    CacheRejected(String),
    #[error("Parse: {0}")]
    Parse(String),
    #[error("Io: {0}")]
    Io(String),
    #[error("InvalidInput: {0}")]
    InvalidInput(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
