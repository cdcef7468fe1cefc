use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter `{0}` is not declared invertible")]
    NotInvertible(String),
    #[error("`{0}` is not a unit of the coefficient ring")]
    NotAUnit(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division of `{num}` by `{den}`")]
    InexactDivision { num: String, den: String },
    #[error("unknown parameter `{0}`")]
    UnknownParam(String),
    #[error("parameter `{0}` declared twice")]
    DuplicateParam(String),

    #[error("series quotient: {0}")]
    Series(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("algebra context mismatch: {0}")]
    ContextMismatch(String),
    #[error("invalid algebra context: {0}")]
    InvalidContext(String),
    #[error("the central element has no associative product")]
    CentralOperand,
    #[error("{0}")]
    Unsupported(String),

    #[error("module family mismatch: {0}")]
    WrongFamily(String),
    #[error("rank mismatch: operator has rank {op}, module has rank {module}")]
    RankMismatch { op: usize, module: usize },
    #[error("invalid module parameters: {0}")]
    InvalidSpec(String),

    #[error("phi(0) must vanish, got {0}")]
    PhiAtZero(String),
    #[error("result level {level} exceeds the level bound {bound}")]
    LevelOverflow { level: u32, bound: u32 },

    #[error("{0} must be nonzero")]
    ZeroInput(&'static str),
    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
