use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("root order must be an odd integer >= 3, got {0}")]
    InvalidRootOrder(i64),

    /// The request is outside the size an exhaustive backend is allowed to handle.
    #[error("{what} = {value} exceeds the cap of {cap}")]
    ResourceLimit {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    /// Spectral evaluation could not certify integer rounding.
    #[error("rounding not certified: error bound {bound:e} is not below 0.5 at {bits} bits")]
    Precision { bound: f64, bits: u32 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
