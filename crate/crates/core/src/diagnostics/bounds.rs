use serde::Serialize;

use super::identities::endpoints;
use super::{relative, trapezoid};
use crate::error::{Error, Result};
use crate::propagator::Trajectory;
use crate::spectral::{lp_norm, second_partial, sobolev_norm, SobolevSpec};

/// One side of an inequality `lhs ≤ rhs`; `residual` is the slack `rhs - lhs`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub relative: f64,
    /// Smallest constant for which the inequality holds on the data; `None` when
    /// the term it multiplies vanishes.
    pub empirical_constant: Option<f64>,
}

impl BoundReport {
    pub fn new(lhs: f64, rhs: f64, empirical_constant: Option<f64>) -> Self {
        let residual = rhs - lhs;
        Self {
            lhs,
            rhs,
            residual,
            relative: relative(residual, lhs, rhs),
            empirical_constant,
        }
    }

    /// `lhs ≤ rhs` up to a relative `tol`.
    pub fn holds(&self, tol: f64) -> bool {
        self.residual >= -tol * self.lhs.abs().max(self.rhs.abs())
    }
}

fn hs_hypothesis(n: usize, s: f64, p: f64) -> Result<()> {
    if !(n == 1 || n == 2) {
        return Err(Error::Hypothesis(format!(
            "check `prop23` is stated for n = 1, 2, got n = {n}"
        )));
    }
    let upper = p.min(2.0);
    if !(s > 0.5 * n as f64 && s < upper) {
        return Err(Error::Hypothesis(format!(
            "check `prop23` requires n/2 < s < min(2, p), got n = {n}, s = {s}, p = {p}"
        )));
    }
    Ok(())
}

/// Smallest `C` with `‖u(t_j)‖²_{Ḣ^s} ≤ ‖u(t_i)‖²_{Ḣ^s} + C∫_{t_i}^{t_j}‖u‖^{p-1}_{L^∞}‖u‖²_{Ḣ^s}`
/// over every snapshot pair `i < j` (0 when the norm never grows).
pub fn hs_growth_constant(traj: &Trajectory, s: f64) -> Result<f64> {
    let (hs, weight) = hs_series(traj, s)?;
    Ok(growth_constant(traj.times(), &hs, &weight))
}

fn hs_series(traj: &Trajectory, s: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    hs_hypothesis(traj.grid().dim(), s, traj.config().p)?;
    let p = traj.config().p;
    let spec = SobolevSpec::homogeneous(s);
    let mut hs = Vec::with_capacity(traj.len());
    let mut weight = Vec::with_capacity(traj.len());
    for u in traj.snapshots() {
        let h = sobolev_norm(u, spec)?.powi(2);
        let linf = lp_norm(u, f64::INFINITY)?;
        hs.push(h);
        weight.push(linf.powf(p - 1.0) * h);
    }
    Ok((hs, weight))
}

fn growth_constant(times: &[f64], hs: &[f64], weight: &[f64]) -> f64 {
    let cumulative = super::cumulative_trapezoid(times, weight);
    let scale = hs.iter().copied().fold(0.0, f64::max);
    let mut best = 0.0f64;
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            let growth = hs[j] - hs[i];
            let integral = cumulative[j] - cumulative[i];
            if growth > 1e-12 * scale && integral > 0.0 {
                best = best.max(growth / integral);
            }
        }
    }
    best
}

/// Growth bound for `Ḣ^s` with a supplied constant `c` on the whole trajectory;
/// the empirical constant is the smallest one valid over all snapshot pairs.
pub fn check_hs_growth(traj: &Trajectory, s: f64, c: f64) -> Result<BoundReport> {
    if !(c >= 0.0 && c.is_finite()) {
        return Err(Error::InvalidConfig(format!("constant must be finite and nonnegative, got {c}")));
    }
    let (hs, weight) = hs_series(traj, s)?;
    let times = traj.times();
    let last = hs.len() - 1;
    let integral = trapezoid(times, &weight, 0, last);
    let star = growth_constant(times, &hs, &weight);
    Ok(BoundReport::new(hs[last], hs[0] + c * integral, Some(star)))
}

/// `‖u(t₂)‖²_{Ḣ²} + 2κΣ∫‖u∂_j∂_k u‖² ≤ ‖u(t₁)‖²_{Ḣ²} + 2n²(n+1)κ∫‖u‖^{4-n}_{Ḣ¹}‖u‖ⁿ_{Ḣ²}`
/// for the cubic equation. The empirical constant replaces `2n²(n+1)`.
pub fn check_h2_inequality(traj: &Trajectory, t1: f64, t2: f64) -> Result<BoundReport> {
    let cfg = traj.config();
    if cfg.p != 3.0 {
        return Err(Error::Hypothesis(format!("check `prop24` requires p = 3, got p = {}", cfg.p)));
    }
    let n = traj.grid().dim();
    let (i, j) = endpoints(traj, t1, t2)?;
    let times = &traj.times()[i..=j];
    let h1 = SobolevSpec::homogeneous(1.0);
    let h2 = SobolevSpec::homogeneous(2.0);
    let mut hessian_term = Vec::with_capacity(j - i + 1);
    let mut growth_term = Vec::with_capacity(j - i + 1);
    for u in &traj.snapshots()[i..=j] {
        let mut sum = 0.0;
        for a in 0..n {
            for b in 0..n {
                let d = second_partial(u, a, b);
                sum += u
                    .values()
                    .iter()
                    .zip(d.values())
                    .map(|(x, y)| x.norm_sqr() * y.norm_sqr())
                    .sum::<f64>();
            }
        }
        hessian_term.push(sum * u.grid().cell_volume());
        let a = sobolev_norm(u, h1)?;
        let b = sobolev_norm(u, h2)?;
        growth_term.push(a.powi(4 - n as i32) * b.powi(n as i32));
    }
    let k = (j - i) as usize;
    let dissipation = 2.0 * cfg.coupling * trapezoid(times, &hessian_term, 0, k);
    let growth = cfg.coupling * trapezoid(times, &growth_term, 0, k);
    let end = sobolev_norm(&traj.snapshots()[j], h2)?.powi(2);
    let start = sobolev_norm(&traj.snapshots()[i], h2)?.powi(2);
    let constant = 2.0 * (n * n * (n + 1)) as f64;
    let lhs = end + dissipation;
    let empirical = (growth > 0.0).then(|| ((lhs - start) / growth).max(0.0));
    Ok(BoundReport::new(lhs, start + constant * growth, empirical))
}
