//! Coherently driven two-level systems: numerical propagation, adiabatic
//! frame diagnostics and Dykhne-Davis-Pechukas estimates built from the
//! complex zeros of the quasienergy.
//!
//! Everything works in scaled time `tau = t / T`; models return `eps T` and
//! `V T`. See the crate's `examples/` directory for one runnable program per
//! capability.

pub mod adiabatic;
pub mod ddp;
pub mod dynamics;
pub mod error;
pub mod harness;
pub mod models;
mod ode;
pub mod quad;

pub use dynamics::{
    final_transition_probability, propagate, propagate_between, truncation_check,
    IntegratorConfig, StateVector, Trajectory,
};
pub use error::{Error, Result};
pub use models::{
    exact_p_landau_zener, exact_p_rosen_zener, make_landau_zener, make_model, model_from_str,
    pulse_area, resonant_p, ModelId, ModelParams, PulseModel,
};

pub use num_complex::Complex64;
