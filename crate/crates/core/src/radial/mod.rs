//! The three-dimensional radial reduction: profiles on a staggered radial grid,
//! the averaging kernel `J`, `D` on radial data, the wave-form source `F_p`, the
//! Volterra marching of the wave form and its maximal-function probes.

mod halfwave;
mod kernel;
mod maximal;
mod profile;
mod source;
mod wave;

pub use halfwave::{radial_halfwave_operator, radial_inner, radial_l2_norm, radial_sobolev_norm, DECAY_TOL};
pub use kernel::{dj_dt, j_kernel, JKernel};
pub use maximal::{
    duhamel_maximal_check, even_extension, hardy_time_derivative_check, maximal_bound_check,
    maximal_domination, maximal_function, radial_strauss_ratio, shell_average_sup, HARDY_HORIZON,
};
pub use profile::{RadialProfile, RadialTrajectory, MIN_SAMPLES};
pub use source::{f_p_source, f_p_source_expanded};
pub use wave::{axis_discrepancy, profile_to_field, wave_evolve, WaveConfig};
