use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::config::StepperConfig;
use super::steps::{spectral_l2, Stepper};
use crate::error::{Error, Result};
use crate::spectral::{load_field, save_field, Field, Grid, Representation};

/// Snapshots of one run, uniformly spaced by `effective_dt · snapshot_stride`.
#[derive(Clone, Debug)]
pub struct Trajectory {
    config: StepperConfig,
    times: Vec<f64>,
    snapshots: Vec<Field>,
}

#[derive(Serialize, Deserialize)]
struct Meta {
    config: StepperConfig,
    dim: usize,
    points: usize,
    period: f64,
    times: Vec<f64>,
    files: Vec<String>,
}

impl Trajectory {
    /// Assembles a trajectory from precomputed snapshots (physical representation is used internally).
    pub fn new(config: StepperConfig, times: Vec<f64>, snapshots: Vec<Field>) -> Result<Self> {
        if times.is_empty() || times.len() != snapshots.len() {
            return Err(Error::TrajectoryTooShort(format!(
                "{} times for {} snapshots",
                times.len(),
                snapshots.len()
            )));
        }
        if times[0] != 0.0 || times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidConfig("snapshot times must increase from 0".into()));
        }
        let grid = snapshots[0].grid().clone();
        if snapshots.iter().any(|s| !s.grid().same_as(&grid)) {
            return Err(Error::GridMismatch("snapshots live on different grids".into()));
        }
        let snapshots = snapshots.into_iter().map(Field::into_physical).collect();
        Ok(Self {
            config,
            times,
            snapshots,
        })
    }

    pub fn config(&self) -> &StepperConfig {
        &self.config
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn snapshots(&self) -> &[Field] {
        &self.snapshots
    }

    pub fn grid(&self) -> &Grid {
        self.snapshots[0].grid()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn initial(&self) -> &Field {
        &self.snapshots[0]
    }

    pub fn last(&self) -> &Field {
        self.snapshots.last().expect("trajectory is never empty")
    }

    /// Index of the snapshot at time `t`, matched to a relative `1e-9`.
    pub fn index_of(&self, t: f64) -> Result<usize> {
        let scale = self.times.last().copied().unwrap_or(1.0).max(1.0);
        self.times
            .iter()
            .position(|&s| (s - t).abs() <= 1e-9 * scale)
            .ok_or(Error::NotASnapshotTime(t))
    }

    /// Writes `meta.json` and one snapshot file per stored time into `dir`.
    pub fn export(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;
        let mut files = Vec::with_capacity(self.len());
        for (k, snap) in self.snapshots.iter().enumerate() {
            let name = format!("snapshot_{k:05}.txt");
            save_field(snap, dir.join(&name))?;
            files.push(name);
        }
        let grid = self.grid();
        let meta = Meta {
            config: self.config.clone(),
            dim: grid.dim(),
            points: grid.points(),
            period: grid.period(),
            times: self.times.clone(),
            files,
        };
        fs::write(dir.join("meta.json"), serde_json::to_string_pretty(&meta)?)?;
        Ok(())
    }

    pub fn load(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let meta: Meta = serde_json::from_str(&fs::read_to_string(dir.join("meta.json"))?)?;
        let snapshots = meta
            .files
            .iter()
            .map(|name| load_field(dir.join(name)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(meta.config, meta.times, snapshots)
    }
}

/// Runs the splitting scheme from `u0` up to `T`.
///
/// The L² norm is checked after every step; an increase beyond `1e-10‖u₀‖`
/// is reported as [`Error::MonotonicityViolation`].
pub fn evolve(u0: &Field, cfg: &StepperConfig) -> Result<Trajectory> {
    cfg.validate()?;
    if !u0.is_finite() {
        return Err(Error::NonFinite { step: 0, time: 0.0 });
    }
    let steps = cfg.steps();
    let dt = cfg.effective_dt();
    let stepper = Stepper::new(u0.grid(), cfg, dt);
    let mut state = u0.to_spectral();
    let initial_norm = spectral_l2(&state);
    let tol = 1e-10 * initial_norm;
    let mut norm = initial_norm;
    let mut times = vec![0.0];
    let mut snapshots = vec![u0.to_physical()];
    for step in 1..=steps {
        state = stepper.step(state);
        let t = step as f64 * dt;
        if !state.is_finite() {
            return Err(Error::NonFinite { step, time: t });
        }
        let next = spectral_l2(&state);
        if next > norm + tol {
            return Err(Error::MonotonicityViolation {
                step,
                before: norm,
                after: next,
            });
        }
        norm = next;
        if step % cfg.snapshot_stride == 0 {
            times.push(t);
            snapshots.push(state.to_physical());
        }
    }
    Trajectory::new(cfg.clone(), times, snapshots)
}

/// `|u|^{p-1}u` on physical samples.
pub fn power_nonlinearity(u: &Field, p: f64) -> Field {
    u.map_physical(|z| {
        let r2 = z.norm_sqr();
        if r2 == 0.0 {
            z
        } else {
            z * r2.powf(0.5 * (p - 1.0))
        }
    })
}

/// `‖u(t) - U(t)u₀ + κ∫₀ᵗ U(t-t')|u|^{p-1}u(t')dt'‖_{L²}` at the final snapshot,
/// with the time integral done by the trapezoid rule over the stored snapshots.
pub fn duhamel_residual(traj: &Trajectory) -> Result<f64> {
    duhamel_residual_at(traj, traj.len().saturating_sub(1))
}

/// Same as [`duhamel_residual`] at snapshot `index` (which needs at least two earlier snapshots).
pub fn duhamel_residual_at(traj: &Trajectory, index: usize) -> Result<f64> {
    if traj.len() < 3 || index < 2 || index >= traj.len() {
        return Err(Error::TrajectoryTooShort(format!(
            "Duhamel residual needs at least 3 snapshots up to the evaluation time (have {}, index {index})",
            traj.len()
        )));
    }
    let times = traj.times();
    let t = times[index];
    let cfg = traj.config();
    let grid = traj.grid();
    let abs_xi = grid.abs_wavenumbers();
    let propagate = |f: &mut Field, tau: f64| {
        for (z, &k) in f.values_mut().iter_mut().zip(&abs_xi) {
            *z *= Complex64::from_polar(1.0, -tau * k);
        }
    };
    let mut acc = traj.snapshots()[index].to_spectral();
    let mut free = traj.initial().to_spectral();
    propagate(&mut free, t);
    for (a, b) in acc.values_mut().iter_mut().zip(free.values()) {
        *a -= b;
    }
    if cfg.coupling != 0.0 {
        for j in 0..=index {
            let w = if j == 0 {
                0.5 * (times[1] - times[0])
            } else if j == index {
                0.5 * (times[j] - times[j - 1])
            } else {
                0.5 * (times[j + 1] - times[j - 1])
            };
            let mut nl = power_nonlinearity(&traj.snapshots()[j], cfg.p).into_spectral();
            propagate(&mut nl, t - times[j]);
            let factor = cfg.coupling * w;
            for (a, b) in acc.values_mut().iter_mut().zip(nl.values()) {
                *a += factor * b;
            }
        }
    }
    debug_assert_eq!(acc.representation(), Representation::Spectral);
    Ok(spectral_l2(&acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagator::linear_step;

    fn gaussian(g: &Grid, a: f64) -> Field {
        Field::from_fn(g, |x| Complex64::new(a * (-x.iter().map(|v| v * v).sum::<f64>()).exp(), 0.0))
    }

    #[test]
    fn zero_final_time_keeps_only_initial_data() {
        let g = Grid::new(1, 32, 10.0).unwrap();
        let cfg = StepperConfig::new(3.0, 0.1, 0.0).unwrap();
        let traj = evolve(&gaussian(&g, 1.0), &cfg).unwrap();
        assert_eq!(traj.len(), 1);
        assert_eq!(traj.times(), &[0.0]);
    }

    #[test]
    fn zero_data_stays_zero() {
        let g = Grid::new(1, 32, 10.0).unwrap();
        let cfg = StepperConfig::new(3.0, 0.1, 1.0).unwrap();
        let traj = evolve(&Field::zeros(&g), &cfg).unwrap();
        assert_eq!(traj.len(), 11);
        assert!(traj.snapshots().iter().all(|s| s.max_abs() == 0.0));
        assert_eq!(duhamel_residual(&traj).unwrap(), 0.0);
    }

    #[test]
    fn linear_run_matches_propagator() {
        let g = Grid::new(1, 64, 20.0).unwrap();
        let u0 = gaussian(&g, 1.0);
        let cfg = StepperConfig::new(3.0, 0.05, 1.0).unwrap().with_coupling(0.0).with_stride(4);
        let traj = evolve(&u0, &cfg).unwrap();
        assert!(duhamel_residual(&traj).unwrap() < 1e-12);
        let exact = linear_step(&u0, 1.0);
        assert!(traj.last().max_abs_diff(&exact).unwrap() < 1e-12);
    }

    #[test]
    fn blow_up_step_is_reported() {
        let g = Grid::new(1, 16, 10.0).unwrap();
        let mut u0 = gaussian(&g, 1.0);
        u0.values_mut()[3] = Complex64::new(f64::NAN, 0.0);
        let cfg = StepperConfig::new(3.0, 0.1, 1.0).unwrap();
        assert!(matches!(evolve(&u0, &cfg), Err(Error::NonFinite { step: 0, .. })));
    }

    #[test]
    fn too_few_snapshots_for_duhamel() {
        let g = Grid::new(1, 16, 10.0).unwrap();
        let cfg = StepperConfig::new(3.0, 0.5, 1.0).unwrap();
        let traj = evolve(&gaussian(&g, 1.0), &cfg).unwrap();
        assert_eq!(traj.len(), 3);
        assert!(duhamel_residual(&traj).is_ok());
        let cfg = cfg.with_stride(2);
        let traj = evolve(&gaussian(&g, 1.0), &cfg).unwrap();
        assert!(matches!(duhamel_residual(&traj), Err(Error::TrajectoryTooShort(_))));
    }

    #[test]
    fn export_round_trip() {
        let g = Grid::new(1, 16, 10.0).unwrap();
        let cfg = StepperConfig::new(2.5, 0.25, 1.0).unwrap().with_stride(2);
        let traj = evolve(&gaussian(&g, 0.7), &cfg).unwrap();
        let dir = tempfile::tempdir().unwrap();
        traj.export(dir.path()).unwrap();
        assert!(dir.path().join("meta.json").exists());
        let back = Trajectory::load(dir.path()).unwrap();
        assert_eq!(back.times(), traj.times());
        assert_eq!(back.config(), traj.config());
        for (a, b) in back.snapshots().iter().zip(traj.snapshots()) {
            assert_eq!(a.values(), b.values());
        }
    }
}
