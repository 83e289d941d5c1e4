//! Simulation and analytics for indicator random processes.
//!
//! An indicator process takes only the values 0 and 1. Here the indicators are
//! parities of Poisson counts (single, inhomogeneous, or the product of two
//! independent counts), evaluated lazily from exact event times. On top of that
//! the crate provides:
//!
//! * exact event-driven simulators for the telegraph (Kac) model, diffusion
//!   with delay centers, and two-subspace switching diffusion, plus an
//!   Euler–Maruyama integrator for general switching SDEs ([`models`]);
//! * closed-form characteristic functions and a generic second-order linear
//!   IVP solver, with Monte Carlo estimators to check them ([`analytics`]);
//! * the complete-group construction and the mapping between complete-group
//!   probabilities and independent Poisson indicators ([`indicator`], [`mapping`]).
//!
//! The crate is `no_std` and needs only `alloc`. Parallel execution is plugged
//! in through [`montecarlo::ChunkExecutor`]; reductions always happen in a fixed
//! chunk order so results do not depend on the executor.

#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` is used on purpose so NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analytics;
mod error;
pub mod indicator;
pub mod mapping;
pub mod math;
pub mod models;
pub mod montecarlo;
pub mod poisson;
pub mod rng;
pub mod timefn;
pub mod wiener;

pub use crate::error::{Error, Result};
pub use num_complex::Complex64;
