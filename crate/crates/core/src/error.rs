use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at z = {0}")]
    GammaPole(f64),
    #[error("{function}: argument {value} outside the domain")]
    Domain { function: &'static str, value: f64 },
    #[error("{function}: parameter {value} outside the supported range")]
    Unsupported { function: &'static str, value: f64 },
    #[error("Y_{{iτ}} is degenerate at τ = 0, use Y0")]
    DegenerateOrder,
    #[error("{function}: accuracy target not met (estimated error {estimate:e})")]
    AccuracyFailure { function: &'static str, estimate: f64 },
    #[error("integrand returned a non-finite value at {at}")]
    NonFiniteIntegrand { at: f64 },
    #[error("block magnitudes did not decrease over {blocks} tail blocks")]
    DecayNotDetected { blocks: usize },
    #[error("extrapolated estimates did not stabilise within {blocks} blocks")]
    AccelerationDivergence { blocks: usize },
    #[error("{what}: quadrature did not converge (value {value}, error estimate {error:e})")]
    NotConverged { what: &'static str, value: f64, error: f64 },
    #[error("tail bound {bound:e} exceeds tolerance {tolerance:e}")]
    TailBoundExceeded { bound: f64, tolerance: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
}
