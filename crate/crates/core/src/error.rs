use thiserror::Error;

/// Errors produced by the language, code and two-dimensional routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),

    #[error("invalid subshift description: {0}")]
    InvalidSpec(String),

    #[error("substitution is not primitive")]
    NonPrimitiveSubstitution,

    #[error("forbidden words leave no bi-infinite points")]
    EmptyLanguage,

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("complexity table is decreasing at n = {0}")]
    MalformedTable(usize),

    #[error("complexity table has {len} entries, need at least {min}")]
    TableTooShort { len: usize, min: usize },

    #[error("word of length {len} is shorter than the code window {window}")]
    WordTooShort { len: usize, window: usize },

    #[error("window {0:?} is not in the language")]
    InadmissibleWindow(String),

    #[error("codes are bound to different subshifts")]
    SpecMismatch,

    #[error("requested range {requested} is below the code range {range}")]
    RangeShrink { requested: usize, range: usize },

    #[error("verification depth {depth} is below the window length {window}")]
    DepthTooSmall { depth: usize, window: usize },

    #[error("seed has length {got}, expected {expected}")]
    SeedLengthMismatch { expected: usize, got: usize },

    #[error("window and its translate do not overlap")]
    NoOverlap,

    #[error("malformed code: {0}")]
    MalformedCode(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o failure: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
