//! Maximal-function domination of the `J` averages and the resulting
//! space-time bounds for radial data.
//!
//! Samples are treated as piecewise constant on cells of width `dx`, so a
//! centered window of radius `(k+1/2)dx` about a cell center covers exactly the
//! cells `c-k ..= c+k` and every average is an exact cell sum.

use num_complex::Complex64;
use rayon::prelude::*;

use super::halfwave::{check_decay, radial_l2_norm, radial_sobolev_norm};
use super::kernel::JKernel;
use super::profile::RadialProfile;
use crate::diagnostics::BoundReport;
use crate::error::{Error, Result};

/// Centered Hardy–Littlewood maximal value of `|f|` at the center of cell
/// `center`, scanning every grid-aligned radius. Samples outside the slice are zero.
pub fn maximal_function(values: &[f64], dx: f64, center: usize) -> Result<f64> {
    if center >= values.len() {
        return Err(Error::InvalidProfile(format!(
            "center cell {center} outside {} samples",
            values.len()
        )));
    }
    if !values.iter().any(|v| *v != 0.0) {
        return Err(Error::InvalidProfile("maximal function of a function with empty support".into()));
    }
    let reach = center.max(values.len() - 1 - center);
    let mut mass = values[center].abs();
    let mut best = mass;
    for k in 1..=reach {
        if center >= k {
            mass += values[center - k].abs();
        }
        if let Some(v) = values.get(center + k) {
            mass += v.abs();
        }
        best = best.max(mass * dx / ((2 * k + 1) as f64 * dx));
    }
    Ok(best)
}

/// `A[f](λ) = f(|λ|)` on the cells `[-M h, M h)`, for `f` given on the cells of `[0, M h)`.
pub fn even_extension(f: &[f64]) -> Vec<f64> {
    f.iter().rev().chain(f.iter()).copied().collect()
}

/// `sup_r (1/2r)∫_{|r-t|}^{r+t} f(λ)dλ` over the radii `r = (a+1/2)h`, with
/// `t = (c+1/2)h` and `f` piecewise constant on the cells of `[0, M h)`.
pub fn shell_average_sup(f: &[f64], h: f64, c: usize) -> f64 {
    let m = f.len();
    let mut prefix = vec![0.0; m + 1];
    for (k, v) in f.iter().enumerate() {
        prefix[k + 1] = prefix[k] + v * h;
    }
    let cells = |edge: usize| prefix[edge.min(m)];
    (0..=c + m)
        .map(|a| {
            let r = (a as f64 + 0.5) * h;
            (cells(a + c + 1) - cells(a.abs_diff(c))) / (2.0 * r)
        })
        .fold(0.0, f64::max)
}

/// The `J`-average sup against `M[A[f]](t)` for `f ≥ 0` on `[0, M h)` and
/// `t = (c+1/2)h`; `lhs` is the sup, `rhs` the maximal value.
pub fn maximal_domination(f: &[f64], h: f64, c: usize) -> Result<BoundReport> {
    if f.iter().any(|v| !(*v >= 0.0)) {
        return Err(Error::InvalidProfile("maximal domination needs nonnegative samples".into()));
    }
    let lhs = shell_average_sup(f, h, c);
    let rhs = maximal_function(&even_extension(f), h, f.len() + c)?;
    Ok(BoundReport::new(lhs, rhs, None))
}

/// Radii at which `J[f](t, ·)` can be nonzero, on the staggered node lattice
/// extended past `R` by the propagation distance `t`.
fn radii(f: &RadialProfile, t: f64) -> impl Iterator<Item = f64> {
    let h = f.spacing();
    let last = ((f.radius() + t) / h).ceil() as usize;
    (0..last).map(move |k| (k as f64 + 0.5) * h)
}

fn time_grid(f: &RadialProfile, t_final: f64) -> Vec<f64> {
    let steps = (t_final / f.spacing()).ceil().max(1.0) as usize;
    (0..=steps).map(|j| t_final * j as f64 / steps as f64).collect()
}

fn l2_in_time(times: &[f64], sup: &[f64]) -> f64 {
    let sq: Vec<f64> = sup.iter().map(|v| v * v).collect();
    crate::diagnostics::trapezoid(times, &sq, 0, times.len() - 1).sqrt()
}

fn ratio(lhs: f64, rhs: f64) -> Option<f64> {
    (rhs > 0.0).then(|| lhs / rhs)
}

/// `‖J[f]‖_{L²(0,T; L^∞)}` against `‖f‖_{L²(ℝ³)}`, with the sup taken over the
/// extended radial nodes and the time integral by the trapezoid rule at step `h`.
pub fn maximal_bound_check(f: &RadialProfile, t_final: f64) -> Result<BoundReport> {
    if !(t_final > 0.0) || !f.is_finite() {
        return Err(Error::InvalidConfig(format!("need finite data and T > 0, got T = {t_final}")));
    }
    let kernel = JKernel::new(f);
    let times = time_grid(f, t_final);
    let sup: Vec<f64> = times
        .par_iter()
        .map(|&t| radii(f, t).map(|r| kernel.j(t, r).norm()).fold(0.0, f64::max))
        .collect();
    let lhs = l2_in_time(&times, &sup);
    let rhs = radial_l2_norm(f);
    Ok(BoundReport::new(lhs, rhs, ratio(lhs, rhs)))
}

/// Duhamel form: `‖∫₀ᵗ J[φ(t')f](t-t') dt'‖_{L²(0,T; L^∞)}` against
/// `‖φ f‖_{L¹(0,T; L²(ℝ³))}`.
pub fn duhamel_maximal_check(
    f: &RadialProfile,
    phi: impl Fn(f64) -> f64,
    t_final: f64,
) -> Result<BoundReport> {
    if !(t_final > 0.0) || !f.is_finite() {
        return Err(Error::InvalidConfig(format!("need finite data and T > 0, got T = {t_final}")));
    }
    let kernel = JKernel::new(f);
    let times = time_grid(f, t_final);
    let dt = times[1] - times[0];
    let weights: Vec<f64> = times.iter().map(|&t| phi(t)).collect();
    if weights.iter().any(|w| !w.is_finite()) {
        return Err(Error::InvalidConfig("time profile is not finite on [0, T]".into()));
    }
    let rs: Vec<f64> = radii(f, t_final).collect();
    // table[i][k] = J[f](t_i, r_k)
    let table: Vec<Vec<Complex64>> = times
        .par_iter()
        .map(|&t| rs.iter().map(|&r| kernel.j(t, r)).collect())
        .collect();
    let sup: Vec<f64> = (0..times.len())
        .into_par_iter()
        .map(|n| {
            (0..rs.len())
                .map(|k| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for j in 0..=n {
                        let w = if j == 0 || j == n { 0.5 * dt } else { dt };
                        acc += table[n - j][k] * (w * weights[j]);
                    }
                    acc.norm()
                })
                .fold(0.0, f64::max)
        })
        .collect();
    let lhs = l2_in_time(&times, &sup);
    let abs_phi: Vec<f64> = weights.iter().map(|w| w.abs()).collect();
    let rhs = crate::diagnostics::trapezoid(&times, &abs_phi, 0, times.len() - 1) * radial_l2_norm(f);
    Ok(BoundReport::new(lhs, rhs, ratio(lhs, rhs)))
}

/// Multiple of `R` at which the time integral of the Hardy check is truncated.
pub const HARDY_HORIZON: f64 = 8.0;

/// `‖∂_tJ[f]‖_{L²(0,∞; L^∞)}` against `‖r f̃'‖_{L²(0,∞)}`.
///
/// `∂_tJ` is evaluated in closed form on the extended node lattice; the time
/// integral runs over `[0, HARDY_HORIZON·R]` at step `h`, where the sup has
/// decayed like `1/t`.
pub fn hardy_time_derivative_check(f: &RadialProfile) -> Result<BoundReport> {
    if !f.is_finite() {
        return Err(Error::InvalidProfile("non-finite samples".into()));
    }
    check_decay(f)?;
    let kernel = JKernel::new(f);
    let times = time_grid(f, HARDY_HORIZON * f.radius());
    let radius = f.radius();
    let sup: Vec<f64> = times
        .par_iter()
        .map(|&t| {
            radii(f, t)
                .filter(|r| r + t <= radius || (r - t).abs() <= radius)
                .map(|r| kernel.dj_dt(t, r).norm())
                .fold(0.0, f64::max)
        })
        .collect();
    let lhs = l2_in_time(&times, &sup);
    let rhs = kernel.weighted_derivative_energy().sqrt();
    Ok(BoundReport::new(lhs, rhs, ratio(lhs, rhs)))
}

/// `sup_k r_k^{3/2-s}|f(r_k)| / ‖f‖_{Ḣ^s(ℝ³)}` for `1/2 < s < 3/2`; zero input gives 0.
pub fn radial_strauss_ratio(f: &RadialProfile, s: f64) -> Result<f64> {
    if !(s > 0.5 && s < 1.5) {
        return Err(Error::Hypothesis(format!(
            "check `strauss` requires n >= 2 and 1/2 < s < n/2, got n = 3, s = {s}"
        )));
    }
    let sup = (0..f.len())
        .map(|k| f.node(k).powf(1.5 - s) * f.values()[k].norm())
        .fold(0.0, f64::max);
    let denom = radial_sobolev_norm(f, s);
    Ok(if sup == 0.0 && denom == 0.0 { 0.0 } else { sup / denom })
}
