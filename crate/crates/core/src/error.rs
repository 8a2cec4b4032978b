use thiserror::Error;

use crate::bounds::BoundId;

/// Errors produced by the evaluation, bound and inversion routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the mathematical domain of the operation.
    #[error("{what} = {value} is outside the supported domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// A bound was evaluated outside the interval on which it is proven.
    #[error(
        "bound {id} is only proven on {interval}, got x = {x} (pass force to evaluate anyway)"
    )]
    Validity {
        id: BoundId,
        x: f64,
        interval: String,
    },

    /// No sign change was found on the supplied interval.
    #[error("no sign change of {what} on [{lo}, {hi}]")]
    Bracket { what: String, lo: f64, hi: f64 },

    /// The requested target value is not reached by the bound on its validity interval.
    #[error("bound {id} does not attain {target} on its proven validity interval")]
    Unattainable { id: BoundId, target: f64 },

    /// An iterative method stopped without meeting its tolerance.
    #[error("{method} did not converge after {iterations} iterations")]
    NoConvergence {
        method: &'static str,
        iterations: usize,
    },

    /// A command configuration was rejected before any computation ran.
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
