use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(&'static str),

    #[error("invalid {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("function is negative at t = {at} (value {value})")]
    Negative { at: f64, value: f64 },

    #[error("the circle (n = 1) needs an explicit normalization convention")]
    CircleConventionRequired,
}

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64) -> Self {
        Error::InvalidParameter { name, value }
    }
}
