use num_complex::Complex64;
use semirelax_core::propagator::{duhamel_residual, evolve, Scheme, StepperConfig};
use semirelax_core::spectral::{lp_norm, Field, Grid};

fn gaussian_1d(n: usize, l: f64, a: f64) -> Field {
    let g = Grid::new(1, n, l).unwrap();
    Field::from_fn(&g, |x| Complex64::new(a * (-x[0] * x[0]).exp(), 0.0))
}

fn final_state(u0: &Field, dt: f64, scheme: Scheme) -> Field {
    let steps = (1.0 / dt).round() as usize;
    let cfg = StepperConfig::new(3.0, dt, 1.0).unwrap().with_scheme(scheme).with_stride(steps);
    evolve(u0, &cfg).unwrap().last().clone()
}

fn self_convergence_orders(scheme: Scheme) -> Vec<f64> {
    let u0 = gaussian_1d(256, 40.0, 1.0);
    let dts = [0.1, 0.05, 0.025, 0.0125];
    let errors: Vec<f64> = dts
        .iter()
        .map(|&dt| {
            let coarse = final_state(&u0, dt, scheme);
            let fine = final_state(&u0, dt / 2.0, scheme);
            let diff = coarse.axpy(Complex64::new(-1.0, 0.0), &fine).unwrap();
            lp_norm(&diff, 2.0).unwrap()
        })
        .collect();
    errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}

#[test]
fn strang_is_second_order() {
    let orders = self_convergence_orders(Scheme::Strang);
    for q in &orders {
        assert!((q - 2.0).abs() < 0.1, "orders {orders:?}");
    }
}

#[test]
fn lie_is_first_order() {
    let orders = self_convergence_orders(Scheme::Lie);
    for q in &orders {
        assert!((q - 1.0).abs() < 0.15, "orders {orders:?}");
    }
}

#[test]
fn cubic_run_loses_mass() {
    let u0 = gaussian_1d(256, 40.0, 1.0);
    let cfg = StepperConfig::new(3.0, 1e-3, 1.0).unwrap().with_stride(100);
    let traj = evolve(&u0, &cfg).unwrap();
    let m0 = lp_norm(traj.initial(), 2.0).unwrap();
    let m1 = lp_norm(traj.last(), 2.0).unwrap();
    assert!(m1 < m0);
    let norms: Vec<f64> = traj.snapshots().iter().map(|s| lp_norm(s, 2.0).unwrap()).collect();
    assert!(norms.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-10)));
}

#[test]
fn duhamel_residual_quarters_when_step_halves() {
    let u0 = gaussian_1d(256, 40.0, 1.0);
    let run = |dt: f64, stride: usize| {
        let cfg = StepperConfig::new(3.0, dt, 1.0).unwrap().with_stride(stride);
        duhamel_residual(&evolve(&u0, &cfg).unwrap()).unwrap()
    };
    let coarse = run(0.02, 5);
    let fine = run(0.01, 5);
    let ratio = coarse / fine;
    assert!((ratio - 4.0).abs() < 0.8, "ratio {ratio} ({coarse:e} / {fine:e})");
}
