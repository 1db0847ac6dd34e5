use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// The CLI maps these onto exit codes: `Input` and `Parse` give 2,
/// `Resource` gives 3. `Inconclusive` means a search stopped at a cap
/// without deciding anything and is also reported as 3.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
