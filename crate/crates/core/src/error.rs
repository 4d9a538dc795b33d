use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable-table mismatch")]
    TableMismatch,
    #[error("range error: {0}")]
    Range(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not symmetric")]
    NotSymmetric,
    #[error("not in Q-span")]
    NotInQSpan,
    #[error("element outside stable span")]
    OutsideStableSpan,
    #[error("weight exceeds stable range")]
    Unstable,
    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
