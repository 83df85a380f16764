use thiserror::Error;

/// Errors raised by every operation in the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition of the operation was violated by the caller.
    #[error("contract violation: {0}")]
    Contract(String),
    /// An enumeration would exceed its configured bound.
    #[error("resource bound exceeded: {what} has size {size}, bound is {bound}")]
    Resource { what: &'static str, size: usize, bound: usize },
    #[error("division by zero")]
    ZeroDivision,
    /// A floating-point operation left the finite reals.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}

pub(crate) fn check_bound(what: &'static str, size: usize, bound: usize) -> Result<()> {
    if size > bound {
        Err(Error::Resource { what, size, bound })
    } else {
        Ok(())
    }
}
