use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown lattice kind `{0}`")]
    UnknownLattice(String),
    #[error("class function is not a character: {0}")]
    NotACharacter(String),
    #[error("construction self-check failed: {0}")]
    Construction(String),
    #[error("certificate failed: {0}")]
    Certificate(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
