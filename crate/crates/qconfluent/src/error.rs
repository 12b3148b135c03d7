use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rational {text:?}: {reason}")]
    ParseRational { text: String, reason: String },

    #[error("parameter constraints violated: {}", .0.join("; "))]
    Constraint(Vec<String>),

    #[error("missing generator {0} for this family")]
    MissingGenerator(&'static str),

    #[error("degenerate parameters: {0} vanishes")]
    Degenerate(String),

    #[error("basis {0} must be nonzero")]
    ZeroBasisParameter(&'static str),

    #[error("basis element {0} has a zero extreme coefficient")]
    BasisDegenerate(usize),

    #[error("prefactor scale must be nonzero")]
    ZeroPrefactor,

    #[error("{0} does not divide the coefficient")]
    NotDivisible(String),

    #[error("resonant recurrence: leading band coefficient vanishes at index {0}")]
    Resonant(usize),

    #[error("operator/basis pair is not banded: {0}")]
    NotBanded(String),

    #[error("no formal solution in this basis: consistency row {0} is nonzero")]
    Inconsistent(i64),

    #[error("ascending series required; descending bases are handled at the equation level")]
    DirectionMismatch,

    #[error("gauge factor alpha must be nonzero")]
    ZeroAlpha,

    #[error("{0}")]
    NotRealizable(String),

    #[error("unknown {kind} {name:?}")]
    Unknown { kind: &'static str, name: String },

    #[error("entry {0} is a gauge product and has no finite residual check")]
    NotResidualVerifiable(String),

    #[error("resampling budget exhausted: {0}")]
    SamplingExhausted(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn unknown(kind: &'static str, name: impl Into<String>) -> Self {
        Error::Unknown {
            kind,
            name: name.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
