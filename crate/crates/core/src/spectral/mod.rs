//! Periodic grids, fields, Fourier multipliers and norms.

mod besov;
pub mod exponents;
mod fft;
mod field;
mod grid;
mod io;
mod multiplier;
mod norms;

pub use exponents::{Exponent, StrichartzExponents};
pub use besov::{besov_norm, bump, cutoff, sobolev_reference, LittlewoodPaley};
pub use fft::{is_parallel, set_parallel};
pub use field::{Field, Representation};
pub use grid::Grid;
pub use io::{load_field, read_field, save_field, write_field};
pub(crate) use io::{fmt_f64, parse_pair};
pub use multiplier::{apply_multiplier, gradient, half_laplacian, partial, second_partial};
pub use norms::{
    bracket, lp_norm, sobolev_norm, space_time_norm, time_norm, BracketWeight, SobolevSpec, SpatialNorm,
    WeightPower, WeightedNorm,
};
