use thiserror::Error;

/// Errors raised by the algebraic pipelines.
///
/// Variants that indicate an internal inconsistency (an identity that must
/// hold by construction) are kept distinct from input-validation errors so
/// callers can map them to different exit statuses.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomial division is not exact")]
    DivNotExact,
    #[error("unbound variable `{0}` in substitution")]
    UnboundVariable(String),
    #[error("negative coefficient {0} in tropical evaluation")]
    NegativeCoefficient(String),
    #[error("interpolated point count has a non-integer coefficient ({0})")]
    NonIntegerCoefficient(String),
    #[error("variable lists differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("parse error: {0}")]
    Parse(String),

    #[error("index {index} out of range for rank {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("exchange relation did not divide exactly (Laurent phenomenon violated)")]
    NonLaurentResult,
    #[error("expression is not a polynomial: {0}")]
    NotPolynomial(String),
    #[error("expression is not homogeneous for the principal grading: {0}")]
    NotHomogeneous(String),
    #[error("matrix is not skew-symmetrizable by the given symmetrizer")]
    NotSkewSymmetrizable,

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("`{0}` is not an arc of the triangulation")]
    NotAnArc(String),
    #[error("path algebra is infinite dimensional (unforbidden cycle through {0})")]
    NonFinite(String),
    #[error("no two-step path through {k} from {j} to {i}")]
    NoThroughPair { k: String, i: String, j: String },

    #[error("representation violates relations: {0}")]
    RelationViolated(String),
    #[error("representations live over different algebras")]
    AlgebraMismatch,
    #[error("module is not locally free at {0}")]
    NotLocallyFree(String),
    #[error("g-vector undefined: {0}")]
    GVectorUndefined(String),
    #[error("no splitting data exists ({0})")]
    NoSplitting(String),
    #[error("module of dimension {dim} exceeds the enumeration bound {bound}")]
    SizeBound { dim: usize, bound: usize },
    #[error("recurrence result is not a polynomial (address mismatch?)")]
    NonPolynomialResult,
    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("invalid word at position {position}: {reason}")]
    InvalidWord { position: usize, reason: String },
    #[error("case {case} mismatch:\n  mutated: {got}\n  expected: {expected}")]
    CaseMismatch { case: String, got: String, expected: String },
    #[error("unknown case `{0}`")]
    UnknownCase(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
