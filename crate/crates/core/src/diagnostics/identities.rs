use serde::Serialize;

use super::{relative, trapezoid};
use crate::error::{Error, Result};
use crate::propagator::Trajectory;
use crate::spectral::{lp_norm, partial, sobolev_norm, Field, SobolevSpec};

/// Two sides of a balance law and how far apart they are.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityResidual {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub relative: f64,
    /// Set when the left endpoint is the initial time, which the identities
    /// are only stated for as an extension.
    pub includes_initial_time: bool,
    /// The dissipation integrals that enter the left side.
    pub dissipation: Vec<f64>,
}

impl IdentityResidual {
    pub(crate) fn new(lhs: f64, rhs: f64, includes_initial_time: bool, dissipation: Vec<f64>) -> Self {
        let residual = (lhs - rhs).abs();
        Self {
            lhs,
            rhs,
            residual,
            relative: relative(residual, lhs, rhs),
            includes_initial_time,
            dissipation,
        }
    }
}

pub(crate) fn endpoints(traj: &Trajectory, t1: f64, t2: f64) -> Result<(usize, usize)> {
    let i = traj.index_of(t1)?;
    let j = traj.index_of(t2)?;
    if i >= j {
        return Err(Error::InvalidConfig(format!("need t1 < t2, got t1 = {t1}, t2 = {t2}")));
    }
    Ok((i, j))
}

/// `‖u‖^{p+1}_{L^{p+1}}`.
pub(crate) fn lpp1(u: &Field, p: f64) -> f64 {
    let phys = u.to_physical();
    let dv = u.grid().cell_volume();
    phys.values().iter().map(|z| z.norm().powf(p + 1.0)).sum::<f64>() * dv
}

/// The two integrands of the gradient identity at one time:
/// `‖|u|^{(p-1)/2}∇u‖²` and `‖|u|^{(p-3)/2}∇|u|²‖²`.
///
/// `∇|u|²` is taken as `2Re(ū∇u)`, so the second integrand is `4|u|^{p-1}(Re(ū∇u)/|u|)²`,
/// bounded by four times the first and free of the singular factor for `p < 3`.
pub(crate) fn gradient_dissipation(u: &Field, p: f64) -> (f64, f64) {
    let phys = u.to_physical();
    let grid = u.grid();
    let mut first = 0.0;
    let mut second = 0.0;
    for a in 0..grid.dim() {
        let du = partial(&phys, a);
        for (z, d) in phys.values().iter().zip(du.values()) {
            let m = z.norm();
            if m == 0.0 {
                continue;
            }
            let w = m.powf(p - 1.0);
            let radial = (z.conj() * d).re / m;
            first += w * d.norm_sqr();
            second += 4.0 * w * radial * radial;
        }
    }
    let dv = grid.cell_volume();
    (first * dv, second * dv)
}

/// `‖u(t₂)‖² + 2κ∫‖u‖^{p+1}_{L^{p+1}}` against `‖u(t₁)‖²`, integrals by the
/// trapezoid rule over the snapshots in `[t₁, t₂]`.
pub fn check_l2_identity(traj: &Trajectory, t1: f64, t2: f64) -> Result<IdentityResidual> {
    let (i, j) = endpoints(traj, t1, t2)?;
    let cfg = traj.config();
    let snaps = traj.snapshots();
    let budget: Vec<f64> = snaps[i..=j].iter().map(|u| lpp1(u, cfg.p)).collect();
    let integral = trapezoid(&traj.times()[i..=j], &budget, 0, j - i);
    let dissipation = 2.0 * cfg.coupling * integral;
    let l2_2 = lp_norm(&snaps[j], 2.0)?.powi(2);
    let l2_1 = lp_norm(&snaps[i], 2.0)?.powi(2);
    Ok(IdentityResidual::new(l2_2 + dissipation, l2_1, i == 0, vec![dissipation]))
}

/// `‖∇u(t₂)‖² + 2κ∫‖|u|^{(p-1)/2}∇u‖² + κ(p-1)/2 ∫‖|u|^{(p-3)/2}∇|u|²‖²` against `‖∇u(t₁)‖²`.
///
/// Derivatives are spectral.
pub fn check_h1_identity(traj: &Trajectory, t1: f64, t2: f64) -> Result<IdentityResidual> {
    let (i, j) = endpoints(traj, t1, t2)?;
    let cfg = traj.config();
    let snaps = traj.snapshots();
    let (first, second): (Vec<f64>, Vec<f64>) = snaps[i..=j].iter().map(|u| gradient_dissipation(u, cfg.p)).unzip();
    let times = &traj.times()[i..=j];
    let d1 = 2.0 * cfg.coupling * trapezoid(times, &first, 0, j - i);
    let d2 = 0.5 * (cfg.p - 1.0) * cfg.coupling * trapezoid(times, &second, 0, j - i);
    let h1 = SobolevSpec::homogeneous(1.0);
    let g2 = sobolev_norm(&snaps[j], h1)?.powi(2);
    let g1 = sobolev_norm(&snaps[i], h1)?.powi(2);
    Ok(IdentityResidual::new(g2 + d1 + d2, g1, i == 0, vec![d1, d2]))
}
