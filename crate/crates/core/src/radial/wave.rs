//! Time marching of the radial wave form
//! `ũ(t) = ∂_tJ[u₀](t) + J[-iDu₀ - κN(u₀)](t) + ∫₀ᵗ J[F_p(u)(t')](t-t') dt'`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::halfwave::radial_halfwave_operator;
use super::kernel::JKernel;
use super::profile::{RadialProfile, RadialTrajectory};
use super::source::{power, source_chain_rule};
use crate::error::{Error, Result};
use crate::spectral::{Field, Representation};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaveConfig {
    pub p: f64,
    pub dt: f64,
    pub t_final: f64,
    #[serde(default = "one")]
    pub coupling: f64,
    #[serde(default = "one_usize")]
    pub snapshot_stride: usize,
}

fn one() -> f64 {
    1.0
}

fn one_usize() -> usize {
    1
}

impl WaveConfig {
    pub fn new(p: f64, dt: f64, t_final: f64) -> Result<Self> {
        let cfg = Self {
            p,
            dt,
            t_final,
            coupling: 1.0,
            snapshot_stride: 1,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_coupling(mut self, coupling: f64) -> Self {
        self.coupling = coupling;
        self
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.snapshot_stride = stride;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let as_stepper = crate::propagator::StepperConfig {
            p: self.p,
            dt: self.dt,
            t_final: self.t_final,
            scheme: crate::propagator::Scheme::Strang,
            snapshot_stride: self.snapshot_stride,
            coupling: self.coupling,
            dealias: false,
        };
        as_stepper.validate()
    }

    pub fn steps(&self) -> usize {
        if self.t_final == 0.0 {
            return 0;
        }
        let ratio = self.t_final / self.dt;
        let rounded = ratio.round();
        if (ratio - rounded).abs() <= 1e-9 * ratio.max(1.0) {
            rounded as usize
        } else {
            ratio.ceil() as usize
        }
    }

    pub fn effective_dt(&self) -> f64 {
        match self.steps() {
            0 => self.dt,
            n => self.t_final / n as f64,
        }
    }
}

/// Marches the radial wave form with the trapezoid rule in `t'`.
///
/// The endpoint term of the rule is `J[F_p(u(t))](0) = 0`, so every step is explicit.
/// Requires `T < R`: data on `[0, R]` only determines the solution on `r + t ≤ R`.
pub fn wave_evolve(u0: &RadialProfile, cfg: &WaveConfig) -> Result<RadialTrajectory> {
    cfg.validate()?;
    if cfg.t_final >= u0.radius() {
        return Err(Error::InvalidConfig(format!(
            "final time {} must stay below the radial extent {} (domain of dependence)",
            cfg.t_final,
            u0.radius()
        )));
    }
    let p = cfg.p;
    let kappa = cfg.coupling;
    let du0 = radial_halfwave_operator(u0)?;
    let velocity = RadialProfile::from_raw(
        u0.radius(),
        du0
            .values()
            .iter()
            .zip(u0.values())
            .map(|(d, z)| -I * d - kappa * power(*z, p))
            .collect(),
    );
    let data_kernel = JKernel::new(u0);
    let velocity_kernel = JKernel::new(&velocity);
    let steps = cfg.steps();
    let dt = cfg.effective_dt();
    let nodes = u0.nodes();
    let mut sources: Vec<JKernel> = Vec::with_capacity(steps);
    if kappa != 0.0 && steps > 0 {
        sources.push(JKernel::new(&source_chain_rule(u0, p, kappa)));
    }
    let mut times = vec![0.0];
    let mut profiles = vec![u0.clone()];
    for n in 1..=steps {
        let t = n as f64 * dt;
        let values: Vec<Complex64> = nodes
            .par_iter()
            .map(|&r| {
                let mut v = data_kernel.dj_dt(t, r) + velocity_kernel.j(t, r);
                for (j, k) in sources.iter().enumerate() {
                    let w = if j == 0 { 0.5 * dt } else { dt };
                    v += k.j(t - j as f64 * dt, r) * w;
                }
                v
            })
            .collect();
        if values.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite { step: n, time: t });
        }
        let current = RadialProfile::from_raw(u0.radius(), values);
        if kappa != 0.0 && n < steps {
            sources.push(JKernel::new(&source_chain_rule(&current, p, kappa)));
        }
        if n % cfg.snapshot_stride == 0 {
            times.push(t);
            profiles.push(current);
        }
    }
    Ok(RadialTrajectory { times, profiles, dt })
}

/// Samples a radial profile on a three-dimensional grid, `u(x) = f̃(|x|)`.
pub fn profile_to_field(f: &RadialProfile, grid: &crate::spectral::Grid) -> Result<Field> {
    if grid.dim() != 3 {
        return Err(Error::GridMismatch(format!("expected a 3D grid, got n = {}", grid.dim())));
    }
    let k = JKernel::new(f);
    let values = (0..grid.len())
        .map(|i| {
            let x = grid.position(i);
            k.interpolate((x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt())
        })
        .collect();
    Field::new(grid.clone(), values, Representation::Physical)
}

/// Relative `L^∞` distance between a radial profile and a 3D field along the
/// positive `x` axis, over the nodes with `0 ≤ x < min(L/2, R)`.
pub fn axis_discrepancy(f: &RadialProfile, field: &Field) -> Result<f64> {
    let grid = field.grid();
    if grid.dim() != 3 {
        return Err(Error::GridMismatch(format!("expected a 3D field, got n = {}", grid.dim())));
    }
    let phys = field.to_physical();
    let n = grid.points();
    let c = grid.nyquist_index();
    let k = JKernel::new(f);
    let (mut diff, mut scale) = (0.0f64, 0.0f64);
    for i in c..n {
        let x = grid.coordinate(i);
        if x >= f.radius() {
            break;
        }
        let flat = (i * n + c) * n + c;
        let z = phys.values()[flat];
        diff = diff.max((z - k.interpolate(x)).norm());
        scale = scale.max(z.norm());
    }
    Ok(if scale == 0.0 { diff } else { diff / scale })
}
