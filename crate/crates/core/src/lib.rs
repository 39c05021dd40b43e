//! Pseudospectral solver for the dissipative semirelativistic equation
//! `i∂_t u - (-Δ)^{1/2} u = -i|u|^{p-1}u`, together with numerical probes of its
//! dissipation identities, a priori bounds and the three-dimensional radial wave
//! reformulation.

pub mod diagnostics;
pub mod error;
pub mod propagator;
pub mod radial;
pub mod spectral;

pub use error::{Error, Result};
