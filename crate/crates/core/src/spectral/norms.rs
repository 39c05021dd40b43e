//! Lebesgue, Sobolev, weighted and space-time norms of grid fields.

use serde::{Deserialize, Serialize};

use super::field::Field;
use crate::error::{Error, Result};

/// Regularity index and flavour of a Sobolev norm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SobolevSpec {
    pub s: f64,
    pub homogeneous: bool,
}

impl SobolevSpec {
    pub fn homogeneous(s: f64) -> Self {
        Self { s, homogeneous: true }
    }

    pub fn inhomogeneous(s: f64) -> Self {
        Self { s, homogeneous: false }
    }

    /// `|ξ|^s` or `(1+|ξ|²)^{s/2}`; the homogeneous symbol is 0 at `ξ = 0` unless `s = 0`.
    pub fn symbol(&self, abs_xi: f64) -> f64 {
        if self.homogeneous {
            if abs_xi == 0.0 {
                if self.s == 0.0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                abs_xi.powf(self.s)
            }
        } else {
            (1.0 + abs_xi * abs_xi).powf(0.5 * self.s)
        }
    }
}

/// Zero-mode tolerance for homogeneous norms of negative order.
const MEAN_TOL: f64 = 1e-12;

pub fn sobolev_norm(f: &Field, spec: SobolevSpec) -> Result<f64> {
    let spec_field = f.to_spectral();
    let grid = f.grid();
    let values = spec_field.values();
    if spec.homogeneous && spec.s < 0.0 {
        let total: f64 = values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let zero = values[0].norm();
        if zero > MEAN_TOL * total {
            return Err(Error::NonzeroMean {
                s: spec.s,
                zero_mode: zero / total,
            });
        }
    }
    let abs_xi = grid.abs_wavenumbers();
    let sum: f64 = values
        .iter()
        .zip(&abs_xi)
        .map(|(z, &k)| {
            let m = spec.symbol(k);
            m * m * z.norm_sqr()
        })
        .sum();
    Ok((sum / grid.period().powi(grid.dim() as i32)).sqrt())
}

/// `(Σ|f|^p dx^n)^{1/p}`, or `max|f|` for `p = ∞`.
pub fn lp_norm(f: &Field, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidExponent(format!("Lebesgue exponent must be >= 1, got {p}")));
    }
    let phys = f.to_physical();
    if p.is_infinite() {
        return Ok(phys.values().iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    let sum: f64 = if p == 2.0 {
        phys.values().iter().map(|z| z.norm_sqr()).sum()
    } else {
        phys.values().iter().map(|z| z.norm().powf(p)).sum()
    };
    Ok((sum * f.grid().cell_volume()).powf(1.0 / p))
}

/// `|x|^{1-δ} + |x|^{1+δ}`.
pub fn bracket(r: f64, delta: f64) -> f64 {
    r.powf(1.0 - delta) + r.powf(1.0 + delta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightPower {
    /// `[x]_δ^{+1/q}`, vanishing at the origin.
    Positive,
    /// `[x]_δ^{-1/q}`, singular at the origin; the `r = 0` sample is dropped.
    Negative,
}

/// The weight `[x]_δ^{±1/q}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketWeight {
    pub delta: f64,
    pub q: f64,
    pub power: WeightPower,
}

impl BracketWeight {
    pub fn new(delta: f64, q: f64, power: WeightPower) -> Result<Self> {
        if !(delta > 0.0) {
            return Err(Error::InvalidExponent(format!("delta must be positive, got {delta}")));
        }
        if !(q >= 1.0) {
            return Err(Error::InvalidExponent(format!("weight exponent q must be >= 1, got {q}")));
        }
        Ok(Self { delta, q, power })
    }

    /// Squared weight at radius `r`; `None` for the dropped singular origin sample.
    pub fn squared(&self, r: f64) -> Option<f64> {
        let b = bracket(r, self.delta);
        match self.power {
            WeightPower::Positive => Some(if r == 0.0 { 0.0 } else { b.powf(2.0 / self.q) }),
            WeightPower::Negative => {
                if r == 0.0 {
                    None
                } else {
                    Some(b.powf(-2.0 / self.q))
                }
            }
        }
    }
}

/// `L²` norm of a function multiplied by `[x]_δ^{±1/q}`.
pub trait WeightedNorm {
    fn weighted_norm(&self, weight: BracketWeight) -> Result<f64>;
}

impl WeightedNorm for Field {
    fn weighted_norm(&self, weight: BracketWeight) -> Result<f64> {
        let phys = self.to_physical();
        let grid = self.grid();
        let dim = grid.dim();
        let mut sum = 0.0;
        for (k, z) in phys.values().iter().enumerate() {
            let x = grid.position(k);
            let r = x[..dim].iter().map(|c| c * c).sum::<f64>().sqrt();
            if let Some(w2) = weight.squared(r) {
                sum += w2 * z.norm_sqr();
            }
        }
        Ok((sum * grid.cell_volume()).sqrt())
    }
}

/// Spatial norm applied to each snapshot of a space-time norm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SpatialNorm {
    Lebesgue(f64),
    Sobolev(SobolevSpec),
    Weighted(BracketWeight),
}

impl SpatialNorm {
    pub fn evaluate(&self, f: &Field) -> Result<f64> {
        match *self {
            SpatialNorm::Lebesgue(p) => lp_norm(f, p),
            SpatialNorm::Sobolev(spec) => sobolev_norm(f, spec),
            SpatialNorm::Weighted(w) => f.weighted_norm(w),
        }
    }
}

/// `(∫ g(t)^q dt)^{1/q}` by the trapezoid rule over the sample times, or `max g` for `q = ∞`.
pub fn time_norm(times: &[f64], values: &[f64], q: f64) -> Result<f64> {
    if values.is_empty() || times.len() != values.len() {
        return Err(Error::TrajectoryTooShort("no snapshots".into()));
    }
    if !(q >= 1.0) {
        return Err(Error::InvalidExponent(format!("time exponent must be >= 1, got {q}")));
    }
    if q.is_infinite() {
        return Ok(values.iter().copied().fold(0.0, f64::max));
    }
    if values.len() < 2 {
        return Err(Error::TrajectoryTooShort(
            "a finite time exponent needs at least two snapshots".into(),
        ));
    }
    let integral: f64 = times
        .windows(2)
        .zip(values.windows(2))
        .map(|(t, v)| 0.5 * (t[1] - t[0]) * (v[0].powf(q) + v[1].powf(q)))
        .sum();
    Ok(integral.powf(1.0 / q))
}

/// `‖u‖_{L^q(t_0, t_end; X)}` over a sequence of snapshots.
pub fn space_time_norm(times: &[f64], fields: &[Field], q: f64, spatial: SpatialNorm) -> Result<f64> {
    if fields.is_empty() {
        return Err(Error::TrajectoryTooShort("empty trajectory".into()));
    }
    let values = fields.iter().map(|f| spatial.evaluate(f)).collect::<Result<Vec<_>>>()?;
    time_norm(times, &values, q)
}
