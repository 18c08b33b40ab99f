use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("root iteration did not converge after {iterations} iterations (worst residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("consecutive curve samples {index} and {next} coincide")]
    DegenerateSegment { index: usize, next: usize },

    #[error("query point lies on the curve (distance {distance:e} to sample {index})")]
    PointOnCurve { index: usize, distance: f64 },

    #[error("denominator vanishes at z = {re} + {im}i")]
    SingularDenominator { re: f64, im: f64 },

    #[error("evaluation point is within {distance:e} of a kernel pole")]
    PoleProximity { distance: f64 },

    #[error("geometry test inconclusive at the chosen resolution: {0}")]
    InconclusiveAtResolution(String),

    #[error("quadrature did not converge with {nodes} nodes (last change {change:e})")]
    QuadratureNonConvergence { nodes: usize, change: f64 },

    #[error("coefficients sum to zero; cannot normalize to F(1) = 1")]
    NormalizationFailure,

    #[error("denominator sin(pi*{index}/(N+mu)) vanishes for N = {n}, mu = {mu}")]
    SingularParameter { n: usize, mu: f64, index: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
