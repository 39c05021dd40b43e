//! Time evolution: the exact linear propagator, the exact dissipative substep,
//! split stepping and the Duhamel residual.

mod config;
mod steps;
mod trajectory;

pub use config::{Scheme, StepperConfig};
pub use steps::{linear_step, nonlinear_step, nonlinear_step_coupled, strang_step};
pub use trajectory::{duhamel_residual, duhamel_residual_at, evolve, power_nonlinearity, Trajectory};
