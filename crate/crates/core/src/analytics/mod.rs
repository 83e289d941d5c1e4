//! Characteristic functions: closed forms, the mixture formula, a generic
//! second-order linear IVP solver with an RK4 cross-check, and Monte Carlo
//! estimation from simulated paths.

mod closed_form;
mod estimate;
mod linear2;
mod mixture;

pub use closed_form::{
    delay_charfn, delay_charfn_from, delay_ivp, kac_charfn, kac_ivp, msd_integral, msd_rate,
    two_subspace_charfn, two_subspace_ivp, OdeVariant, StartPhase,
};
pub use estimate::{estimate_charfn, estimate_functional, CharFnEstimate};
pub use linear2::{
    integrate_linear2_rk4, solve_linear2, ClosedFormSolution, Linear2Ivp, RK4_MAX_STEP,
};
pub use mixture::mixture_charfn;
