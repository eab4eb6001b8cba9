use thiserror::Error;

/// Errors surfaced by the numeric layers.
#[derive(Error, Debug)]
pub enum Error {
    /// Argument lies outside the domain of the operation (branch cut, pole,
    /// non-positive Bessel argument, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Working precision below the minimum the experiments are meaningful at.
    #[error("working precision of {digits} decimal digits is too low (minimum {min})")]
    PrecisionTooLow { digits: u32, min: u32 },

    /// A quadrature failed to reach the requested tolerance before the
    /// node-doubling cap.
    #[error("quadrature did not converge: achieved ~{achieved_digits} of {requested_digits} digits")]
    QuadratureNonConvergence {
        achieved_digits: i64,
        requested_digits: u32,
    },

    /// The denominator sum of a nonlinear transformation vanished.
    #[error("vanishing transformation denominator: {0}")]
    VanishingDenominator(String),

    /// The linear system defining a rational approximant is singular.
    #[error("singular linear system: degenerate approximant table entry")]
    SingularSystem,

    /// Malformed or out-of-range parameter.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
