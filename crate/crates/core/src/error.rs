use thiserror::Error;

/// Errors raised by geometry, measure, process and experiment operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid body spec `{spec}`: {reason}")]
    BodySpec { spec: String, reason: String },

    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: String, reason: String },

    #[error("degenerate polygon: {0}")]
    Degenerate(String),

    #[error("point ({x}, {y}) lies outside the body")]
    OutsideBody { x: f64, y: f64 },

    #[error("caps belong to different bodies")]
    BodyMismatch,

    #[error("matrix is not unimodular (det = {det})")]
    NotUnimodular { det: f64 },

    #[error("{0}")]
    Domain(String),

    #[error("zero variance sample")]
    ZeroVariance,

    #[error("unknown {registry} `{name}`")]
    Unknown { registry: &'static str, name: String },
}

impl Error {
    pub fn param(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Self::Parameter {
            name: name.into(),
            reason: reason.into(),
        }
    }

    pub fn domain(reason: impl Into<String>) -> Self {
        Self::Domain(reason.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
