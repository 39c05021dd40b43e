use crate::error::{Error, Result};
use crate::propagator::Trajectory;
use crate::spectral::{lp_norm, sobolev_norm, space_time_norm, BracketWeight, Field, SobolevSpec, SpatialNorm, WeightPower};

/// `‖|x|^{n/2-s} f‖_{L^∞} / ‖f‖_{Ḣ^s}` for a radial field with `n ≥ 2`, `1/2 < s < n/2`.
/// Identically zero input gives 0.
pub fn strauss_ratio(f: &Field, s: f64) -> Result<f64> {
    let grid = f.grid();
    let n = grid.dim();
    if n < 2 || !(s > 0.5 && s < 0.5 * n as f64) {
        return Err(Error::Hypothesis(format!(
            "check `strauss` requires n >= 2 and 1/2 < s < n/2, got n = {n}, s = {s}"
        )));
    }
    let phys = f.to_physical();
    let power = 0.5 * n as f64 - s;
    let mut sup = 0.0f64;
    for (k, z) in phys.values().iter().enumerate() {
        let x = grid.position(k);
        let r = x[..n].iter().map(|c| c * c).sum::<f64>().sqrt();
        sup = sup.max(r.powf(power) * z.norm());
    }
    let denom = sobolev_norm(f, SobolevSpec::homogeneous(s))?;
    Ok(if sup == 0.0 && denom == 0.0 { 0.0 } else { sup / denom })
}

/// `‖[x]_δ^{-1/q₁} U(t)f‖_{L^{q₁}(0,T; L²)} / ‖f‖_{L²}` over a linear trajectory.
pub fn weighted_strichartz_ratio(traj: &Trajectory, delta: f64, q1: f64) -> Result<f64> {
    if traj.config().coupling != 0.0 {
        return Err(Error::Hypothesis(
            "check `weighted_strichartz` needs a linear trajectory (coupling 0)".into(),
        ));
    }
    if !(q1 >= 2.0) {
        return Err(Error::InvalidExponent(format!("time exponent must be >= 2, got {q1}")));
    }
    let weight = BracketWeight::new(delta, q1, WeightPower::Negative)?;
    let num = space_time_norm(traj.times(), traj.snapshots(), q1, SpatialNorm::Weighted(weight))?;
    let den = lp_norm(traj.initial(), 2.0)?;
    Ok(if num == 0.0 && den == 0.0 { 0.0 } else { num / den })
}
