use thiserror::Error;

/// Errors produced by the simulation and analytics routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    Parameter {
        name: &'static str,
        reason: &'static str,
    },

    #[error("time {t} lies outside the path horizon [0, {horizon}]")]
    Domain { t: f64, horizon: f64 },

    #[error("integration produced a non-finite state at step {step} (t = {t})")]
    IntegrationBlowup { step: usize, t: f64 },

    #[error("degenerate group: no probability mass left before class {index}")]
    Degenerate { index: usize },

    #[error(
        "infeasible targets at class {index}: tail mass must exceed the class probability \
         (denominator {denominator})"
    )]
    Infeasible { index: usize, denominator: f64 },

    #[error("cumulative intensity of indicator {index} decreases at grid step {step}")]
    NonMonotone { index: usize, step: usize },
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn param(name: &'static str, reason: &'static str) -> Error {
    Error::Parameter { name, reason }
}
