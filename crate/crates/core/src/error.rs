use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function has a pole at q = {0}")]
    EvaluationPole(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("negative power of non-invertible generator `{0}`")]
    NegativePowerOfNonInvertible(String),
    #[error("algebra parameters m and n must be nonzero")]
    ZeroParameter,
    #[error("inadmissible generator order: {0}")]
    InadmissibleOrder(String),
    #[error("invalid structural matrix: {0}")]
    InvalidStructuralMatrix(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("algebra parameters do not match: {0}")]
    MismatchedParams(String),
    #[error("element belongs to `{found}`, expected `{expected}`")]
    WrongOrder { expected: String, found: String },
    #[error("shift to layer {layer} leaves the truncation window |t| <= {window}")]
    TruncationOverflow { layer: i64, window: i64 },
    #[error("zero vector")]
    ZeroVector,
    #[error("degree bound {bound} is smaller than required degree {required}")]
    DegreeTooSmall { bound: u32, required: u32 },
    #[error("degree bounds differ: {0} vs {1}")]
    BoundMismatch(u32, u32),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
