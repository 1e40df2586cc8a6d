use thiserror::Error;

pub type Result<T> = std::result::Result<T, CatalogError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown form {0:?}")]
    UnknownForm(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("unknown case {0:?}")]
    UnknownCase(String),
    #[error("no dimension row for group {0}")]
    UnknownGroup(String),
    #[error("weight {weight} is outside the dimension table of {group}")]
    OutOfTable { group: String, weight: String },
    #[error("parse error in {context}: {message}")]
    Parse { context: String, message: String },
    #[error("weight mismatch in {context}: {message}")]
    Weight { context: String, message: String },
    #[error("{0} involves the quasi-modular E2 and cannot be used as a modular form")]
    QuasiModular(String),
    #[error("relations of case {0} are not known")]
    RelationsUnknown(String),
    #[error("precision {given} is below the safe minimum {needed}")]
    PrecisionTooLow { given: usize, needed: usize },
    #[error("invalid catalog data: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] modring_core::Error),
}

impl CatalogError {
    pub(crate) fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        CatalogError::Parse { context: context.into(), message: message.into() }
    }
}
