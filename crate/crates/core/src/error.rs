use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid Gaussian state: (n + 1/2)^2 - |m|^2 = {invariant} is below 1/4")]
    InvalidState { invariant: f64 },

    #[error("state parameters must be finite and n must be non-negative")]
    MalformedState,

    #[error("coupling matrix violates the symplectic constraints (max residual {residual:e})")]
    InvalidCoupling { residual: f64 },

    #[error("environment state must have zero displacement, got |d| = {0}")]
    DisplacedEnvironment(f64),

    #[error("{name} = {value} is outside the admissible range {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error(
        "q = {q} lies at a degenerate point (q = 0 or q = 1) where an equivalent \
         beam-splitter/amplifier representation does not always exist"
    )]
    Unsupported { q: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
