use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at column {col}: {msg}")]
    Syntax { col: usize, msg: String },

    #[error("line {line}, column {col}: {msg}")]
    File { line: usize, col: usize, msg: String },

    #[error("unknown slot `{0}`")]
    UnknownSlot(String),

    #[error("slot `{0}` already present in context")]
    SlotCollision(String),

    #[error("polynomial contexts differ: [{left}] vs [{right}]")]
    ContextMismatch { left: String, right: String },

    #[error("module mismatch: {0}")]
    ModuleMismatch(String),

    #[error("map is not invertible over Q[d]: {0}")]
    NotInvertible(String),

    #[error("twisting map is not regular")]
    NotRegular,

    #[error("parity mismatch: {0}")]
    Parity(String),

    #[error("map does not commute with alpha")]
    AlphaCommutationFailure,

    #[error("element is not fixed by alpha")]
    NotAlphaFixed,

    #[error("class `{0}` needs companion maps")]
    MissingCompanions(String),

    #[error("bases were computed at different bounds or powers: {0}")]
    BoundMismatch(String),

    #[error("invalid cochain: {0}")]
    InvalidCochain(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
