use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter r must be nonzero")]
    ZeroR,

    #[error("parameter theta must be nonzero")]
    ZeroTheta,

    #[error("{name} = {value} is outside the valid range {range}")]
    OutOfRange {
        name: &'static str,
        value: String,
        range: String,
    },

    #[error("series truncation orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },

    #[error("series constant term must be {expected}, found {found}")]
    ConstantTerm { expected: &'static str, found: String },

    #[error("argument {0} is outside the domain")]
    Domain(String),

    #[error("formula is singular: {0}")]
    Singular(String),
}

impl Error {
    pub(crate) fn out_of_range(
        name: &'static str,
        value: impl ToString,
        range: impl Into<String>,
    ) -> Self {
        Error::OutOfRange {
            name,
            value: value.to_string(),
            range: range.into(),
        }
    }
}
