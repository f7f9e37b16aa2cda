use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter '{name}' = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("energy {energy} lies inside or on the spectral support [{lower}, {upper}]")]
    InsideSupport { energy: f64, lower: f64, upper: f64 },

    #[error(
        "amplitude solver did not converge after {refinements} refinements (last sup-norm change {error_estimate:e})"
    )]
    NonConvergence { refinements: usize, error_estimate: f64 },

    #[error("unphysical {quantity}: {value}")]
    Unphysical { quantity: &'static str, value: f64 },

    #[error("no sign change of y(E) - E found {side} the spectral support within 1e6 frequency units")]
    NoRootFound { side: &'static str },

    #[error("eigendecomposition failed: {0}")]
    Eigen(String),
}

pub type Result<T> = std::result::Result<T, Error>;
