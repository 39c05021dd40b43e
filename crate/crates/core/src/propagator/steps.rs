use num_complex::Complex64;

use super::config::{Scheme, StepperConfig};
use crate::spectral::{apply_multiplier, Field, Grid, Representation};

/// `U(τ) = e^{-iτD}`, the multiplier `e^{-iτ|ξ|}`. Output in the input's representation.
pub fn linear_step(f: &Field, tau: f64) -> Field {
    apply_multiplier(
        f,
        |xi| Complex64::from_polar(1.0, -tau * xi.iter().map(|x| x * x).sum::<f64>().sqrt()),
        f.representation(),
    )
    .expect("unimodular symbol is finite")
}

/// Exact flow of `∂_t u = -|u|^{p-1}u` over time `τ ≥ 0`, applied pointwise.
pub fn nonlinear_step(f: &Field, tau: f64, p: f64) -> Field {
    nonlinear_step_coupled(f, tau, p, 1.0)
}

/// Exact flow of `∂_t u = -κ|u|^{p-1}u`: the phase is frozen and the modulus obeys
/// `ρ' = -κρ^p`.
pub fn nonlinear_step_coupled(f: &Field, tau: f64, p: f64, coupling: f64) -> Field {
    let mut out = f.to_physical();
    apply_flow(out.values_mut(), tau, p, coupling);
    out
}

fn apply_flow(values: &mut [Complex64], tau: f64, p: f64, coupling: f64) {
    if coupling == 0.0 || tau == 0.0 {
        return;
    }
    let a = coupling * (p - 1.0) * tau;
    let half = 0.5 * (p - 1.0);
    let expo = -1.0 / (p - 1.0);
    for z in values.iter_mut() {
        let r2 = z.norm_sqr();
        if r2 > 0.0 {
            *z *= (1.0 + a * r2.powf(half)).powf(expo);
        }
    }
}

/// One splitting step with the parameters of `cfg` (`dt` is taken as given).
pub fn strang_step(f: &Field, cfg: &StepperConfig) -> Field {
    let stepper = Stepper::new(f.grid(), cfg, cfg.dt);
    let out = stepper.step(f.to_spectral());
    out.into_representation(f.representation())
}

/// Precomputed symbols for repeated steps on one grid.
pub(crate) struct Stepper {
    p: f64,
    coupling: f64,
    dt: f64,
    scheme: Scheme,
    half: Vec<Complex64>,
    full: Vec<Complex64>,
    keep: Option<Vec<bool>>,
}

impl Stepper {
    pub(crate) fn new(grid: &Grid, cfg: &StepperConfig, dt: f64) -> Self {
        let abs_xi = grid.abs_wavenumbers();
        let half = abs_xi.iter().map(|&k| Complex64::from_polar(1.0, -0.5 * dt * k)).collect();
        let full = abs_xi.iter().map(|&k| Complex64::from_polar(1.0, -dt * k)).collect();
        let keep = cfg.dealias_active().then(|| dealias_mask(grid));
        Self {
            p: cfg.p,
            coupling: cfg.coupling,
            dt,
            scheme: cfg.scheme,
            half,
            full,
            keep,
        }
    }

    /// Advances a spectral field by one step; the result is spectral.
    pub(crate) fn step(&self, mut state: Field) -> Field {
        debug_assert_eq!(state.representation(), Representation::Spectral);
        match self.scheme {
            Scheme::Strang => {
                state.multiply_symbol(&self.half);
                state = self.nonlinear(state);
                state.multiply_symbol(&self.half);
            }
            Scheme::Lie => {
                state.multiply_symbol(&self.full);
                state = self.nonlinear(state);
            }
        }
        state
    }

    fn nonlinear(&self, state: Field) -> Field {
        if self.coupling == 0.0 {
            return state;
        }
        let mut phys = state.into_physical();
        apply_flow(phys.values_mut(), self.dt, self.p, self.coupling);
        let mut spec = phys.into_spectral();
        if let Some(keep) = &self.keep {
            for (z, &k) in spec.values_mut().iter_mut().zip(keep) {
                if !k {
                    *z = Complex64::new(0.0, 0.0);
                }
            }
        }
        spec
    }
}

/// 2/3 rule: keep modes whose signed index satisfies `3|m| ≤ N` on every axis.
fn dealias_mask(grid: &Grid) -> Vec<bool> {
    let n = grid.points() as i64;
    let dim = grid.dim();
    let mut idx = [0usize; 3];
    (0..grid.len())
        .map(|k| {
            grid.unflatten(k, &mut idx[..dim]);
            idx[..dim].iter().all(|&i| {
                let m = if (i as i64) < n / 2 { i as i64 } else { i as i64 - n };
                3 * m.abs() <= n
            })
        })
        .collect()
}

/// `‖f‖_{L²}` from spectral coefficients.
pub(crate) fn spectral_l2(f: &Field) -> f64 {
    debug_assert_eq!(f.representation(), Representation::Spectral);
    let grid = f.grid();
    let sum: f64 = f.values().iter().map(|z| z.norm_sqr()).sum();
    (sum / grid.period().powi(grid.dim() as i32)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_cubic_substep() {
        let g = Grid::new(1, 8, 1.0).unwrap();
        let f = Field::from_fn(&g, |_| c(1.0, 0.0));
        let out = nonlinear_step(&f, 0.5, 3.0);
        for z in out.values() {
            assert!((z.re - 0.7071067811865476).abs() < 1e-15 && z.im == 0.0);
        }
    }

    #[test]
    fn quadratic_substep_keeps_phase() {
        let g = Grid::new(1, 8, 1.0).unwrap();
        let u0 = Complex64::from_polar(0.2, PI / 3.0);
        let f = Field::from_fn(&g, |_| u0);
        let out = nonlinear_step(&f, 1.0, 2.0);
        for z in out.values() {
            assert!((z.norm() - 1.0 / 6.0).abs() < 1e-15);
            assert!((z.arg() - PI / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn mode_two_rotates_by_two_tau() {
        let g = Grid::new(1, 16, 2.0 * PI).unwrap();
        let f = Field::from_fn(&g, |x| Complex64::from_polar(1.0, 2.0 * x[0]));
        let out = linear_step(&f, PI);
        assert!(out.max_abs_diff(&f).unwrap() < 1e-12);
        let out = linear_step(&f, 0.25);
        let expected = f.map_physical(|z| z * Complex64::from_polar(1.0, -0.5));
        assert!(out.max_abs_diff(&expected).unwrap() < 1e-12);
    }

    #[test]
    fn zero_coupling_reduces_to_linear_step() {
        let g = Grid::new(1, 64, 20.0).unwrap();
        let f = Field::from_fn(&g, |x| c((-x[0] * x[0]).exp(), 0.3 * x[0] * (-x[0] * x[0]).exp()));
        let cfg = StepperConfig::new(3.0, 0.1, 1.0).unwrap().with_coupling(0.0);
        let a = strang_step(&f, &cfg);
        let b = linear_step(&f, 0.1);
        assert!(a.max_abs_diff(&b).unwrap() < 1e-14);
    }

    #[test]
    fn zero_field_stays_zero() {
        let g = Grid::new(2, 16, 5.0).unwrap();
        let f = Field::zeros(&g);
        let cfg = StepperConfig::new(3.0, 0.1, 1.0).unwrap();
        assert_eq!(strang_step(&f, &cfg).max_abs(), 0.0);
        assert_eq!(nonlinear_step(&f, 1.0, 2.5).max_abs(), 0.0);
    }

    #[test]
    fn mask_keeps_two_thirds() {
        let g = Grid::new(1, 16, 1.0).unwrap();
        let kept = dealias_mask(&g).iter().filter(|&&k| k).count();
        assert_eq!(kept, 11);
    }
}
