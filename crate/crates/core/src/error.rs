use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("expansion order {requested} not supported (maximum {max})")]
    UnsupportedOrder { requested: usize, max: usize },

    #[error("parameter polynomial degree {0} exceeds the bound of 2")]
    DegreeOverflow(u32),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("insufficient precision: {0}")]
    Precision(String),

    #[error("no optimum: {0}")]
    NoOptimum(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("missing certificate: {0}")]
    MissingCertificate(String),

    #[error("cannot parse `{0}` as an exact rational")]
    Parse(String),
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
