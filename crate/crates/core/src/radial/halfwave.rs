//! `D = (-Δ)^{1/2}` and Sobolev/weighted norms for radial profiles in three dimensions,
//! via the odd extension of `v(r) = r f̃(r)` over the period `2R`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::profile::RadialProfile;
use crate::error::{Error, Result};
use crate::spectral::{BracketWeight, WeightedNorm};

/// Relative size `|f(r_{M-1})| / max|f|` above which the odd extension is not trusted.
pub const DECAY_TOL: f64 = 1e-8;

/// Odd extension of `r f̃` on the `2M` staggered points of `[-R, R)`, stored in
/// periodic order starting at `r_0`.
fn odd_extension(f: &RadialProfile) -> Vec<Complex64> {
    let m = f.len();
    let mut v = Vec::with_capacity(2 * m);
    for k in 0..m {
        v.push(f.values()[k] * f.node(k));
    }
    for k in (0..m).rev() {
        v.push(-f.values()[k] * f.node(k));
    }
    v
}

/// Signed wavenumbers `πj/R` of the length-`2M` periodic grid, FFT order.
fn wavenumbers(f: &RadialProfile) -> Vec<f64> {
    let n = 2 * f.len();
    (0..n)
        .map(|j| {
            let signed = if j < n / 2 { j as f64 } else { j as f64 - n as f64 };
            PI * signed / f.radius()
        })
        .collect()
}

/// Applies a real even symbol `m(|ξ|)` to the odd extension; returns the new odd extension.
fn apply_even_symbol(f: &RadialProfile, m: impl Fn(f64) -> f64) -> Vec<Complex64> {
    let mut v = odd_extension(f);
    let n = v.len();
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_forward(n).process(&mut v);
    for (z, xi) in v.iter_mut().zip(wavenumbers(f)) {
        *z *= m(xi.abs());
    }
    planner.plan_fft_inverse(n).process(&mut v);
    let scale = 1.0 / n as f64;
    v.iter_mut().for_each(|z| *z *= scale);
    v
}

pub(crate) fn check_decay(f: &RadialProfile) -> Result<()> {
    let max = f.max_abs();
    let edge = f.values()[f.len() - 1].norm();
    if edge > DECAY_TOL * max {
        return Err(Error::InvalidProfile(format!(
            "profile does not decay at R: |f(r_(M-1))| = {edge:e} vs max {max:e}"
        )));
    }
    Ok(())
}

/// `D f` on radial data without the decay check.
pub(crate) fn halfwave_unchecked(f: &RadialProfile) -> RadialProfile {
    let v = apply_even_symbol(f, |k| k);
    let values = (0..f.len()).map(|k| v[k] / f.node(k)).collect();
    RadialProfile::from_raw(f.radius(), values)
}

/// `D f` for a radial profile: `(1/r)·|ξ|(r f̃)` on the odd extension.
///
/// The profile must have decayed at `R` to `DECAY_TOL` relative to its maximum.
pub fn radial_halfwave_operator(f: &RadialProfile) -> Result<RadialProfile> {
    check_decay(f)?;
    Ok(halfwave_unchecked(f))
}

/// `∫₀^R f ḡ 4πr² dr` by the midpoint rule on the staggered nodes.
pub fn radial_inner(f: &RadialProfile, g: &RadialProfile) -> Result<Complex64> {
    f.check_same_grid(g)?;
    let h = f.spacing();
    let sum: Complex64 = (0..f.len())
        .map(|k| f.values()[k] * g.values()[k].conj() * f.node(k).powi(2))
        .sum();
    Ok(sum * (4.0 * PI * h))
}

/// `‖f‖_{L²(ℝ³)}` of the radial extension.
pub fn radial_l2_norm(f: &RadialProfile) -> f64 {
    let h = f.spacing();
    let sum: f64 = (0..f.len()).map(|k| f.values()[k].norm_sqr() * f.node(k).powi(2)).sum();
    (4.0 * PI * h * sum).sqrt()
}

/// `‖f‖_{Ḣ^s(ℝ³)}` of the radial extension: `2π` times the one-dimensional
/// `Ḣ^s` norm (squared) of the odd extension of `r f̃`.
pub fn radial_sobolev_norm(f: &RadialProfile, s: f64) -> f64 {
    let mut v = odd_extension(f);
    let n = v.len();
    FftPlanner::<f64>::new().plan_fft_forward(n).process(&mut v);
    let h = f.spacing();
    let period = 2.0 * f.radius();
    let sum: f64 = v
        .iter()
        .zip(wavenumbers(f))
        .map(|(z, xi)| {
            let w = if xi == 0.0 { if s == 0.0 { 1.0 } else { 0.0 } } else { xi.abs().powf(2.0 * s) };
            w * (z * h).norm_sqr()
        })
        .sum();
    (2.0 * PI * sum / period).sqrt()
}

impl WeightedNorm for RadialProfile {
    /// `‖[x]_δ^{±1/q} f‖_{L²(ℝ³)}`; the staggered grid never samples the origin.
    fn weighted_norm(&self, weight: BracketWeight) -> Result<f64> {
        let h = self.spacing();
        let mut sum = 0.0;
        for (k, z) in self.values().iter().enumerate() {
            let r = self.node(k);
            if let Some(w2) = weight.squared(r) {
                sum += w2 * z.norm_sqr() * r * r;
            }
        }
        Ok((4.0 * PI * h * sum).sqrt())
    }
}
