use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parameter outside the table domain: {0}")]
    DomainGate(String),
    #[error("undecidable configuration: {0}")]
    Undecidable(String),
    #[error("prerequisite failed: {0}")]
    PrerequisiteFailed(String),
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("refused: {0}")]
    Refused(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
