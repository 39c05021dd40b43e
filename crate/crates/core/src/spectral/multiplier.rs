//! Fourier multipliers: generic symbols, the half-Laplacian and spectral derivatives.

use num_complex::Complex64;

use super::field::{Field, Representation};
use crate::error::{Error, Result};

const EVEN_TOL: f64 = 1e-12;

/// Multiplies the spectral coefficients of `f` by `m(ξ)`.
///
/// Nyquist modes (any axis index `N/2`) are zeroed when the symbol is not even
/// in that component, i.e. when `m(ξ)` differs from `m` evaluated with the
/// Nyquist components negated.
pub fn apply_multiplier(
    f: &Field,
    m: impl Fn(&[f64]) -> Complex64,
    out: Representation,
) -> Result<Field> {
    let grid = f.grid().clone();
    let dim = grid.dim();
    let nyq = grid.nyquist_index();
    let mut spec = f.to_spectral();
    let mut idx = [0usize; 3];
    let mut flipped = [0.0f64; 3];
    for (k, z) in spec.values_mut().iter_mut().enumerate() {
        let xi = grid.wavevector(k);
        let xi = &xi[..dim];
        let value = m(xi);
        grid.unflatten(k, &mut idx[..dim]);
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::NonFiniteMultiplier {
                mode: idx[..dim].to_vec(),
                wavenumber: xi.to_vec(),
            });
        }
        let mut value = value;
        if idx[..dim].iter().any(|&i| i == nyq) {
            for a in 0..dim {
                flipped[a] = if idx[a] == nyq { -xi[a] } else { xi[a] };
            }
            let mirror = m(&flipped[..dim]);
            if (value - mirror).norm() > EVEN_TOL * (value.norm() + mirror.norm()) + f64::MIN_POSITIVE {
                value = Complex64::new(0.0, 0.0);
            }
        }
        *z *= value;
    }
    Ok(spec.into_representation(out))
}

fn norm_of(xi: &[f64]) -> f64 {
    xi.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `D = (-Δ)^{1/2}`, the multiplier `|ξ|`. Output in the input's representation.
pub fn half_laplacian(f: &Field) -> Field {
    apply_multiplier(f, |xi| Complex64::new(norm_of(xi), 0.0), f.representation())
        .expect("|ξ| is finite on the grid")
}

/// `∂_axis f` via the multiplier `iξ_axis`, returned in physical representation.
pub fn partial(f: &Field, axis: usize) -> Field {
    apply_multiplier(f, |xi| Complex64::new(0.0, xi[axis]), Representation::Physical)
        .expect("iξ is finite on the grid")
}

/// `∂_a ∂_b f` via the multiplier `-ξ_a ξ_b`, returned in physical representation.
pub fn second_partial(f: &Field, a: usize, b: usize) -> Field {
    apply_multiplier(f, |xi| Complex64::new(-xi[a] * xi[b], 0.0), Representation::Physical)
        .expect("ξξ is finite on the grid")
}

/// Spectral gradient, one physical field per axis.
pub fn gradient(f: &Field) -> Vec<Field> {
    (0..f.grid().dim()).map(|a| partial(f, a)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid;
    use std::f64::consts::PI;

    #[test]
    fn identity_symbol() {
        let g = Grid::new(1, 16, 5.0).unwrap();
        let f = Field::from_fn(&g, |x| Complex64::new((-x[0] * x[0]).exp(), x[0]));
        let out = apply_multiplier(&f, |_| Complex64::new(1.0, 0.0), Representation::Physical).unwrap();
        assert!(out.max_abs_diff(&f).unwrap() < 1e-14);
    }

    #[test]
    fn plane_wave_eigenfunctions() {
        let g = Grid::new(1, 16, 2.0 * PI).unwrap();
        let f = Field::from_fn(&g, |x| Complex64::from_polar(1.0, 2.0 * x[0]));
        let df = half_laplacian(&f);
        assert!(df.max_abs_diff(&f.clone().scale(2.0.into())).unwrap() < 1e-13);

        let g2 = Grid::new(2, 16, 2.0 * PI).unwrap();
        let f = Field::from_fn(&g2, |x| Complex64::from_polar(1.0, 3.0 * x[0] + 4.0 * x[1]));
        let df = half_laplacian(&f);
        assert!(df.max_abs_diff(&f.clone().scale(5.0.into())).unwrap() < 1e-12);
    }

    #[test]
    fn constant_is_annihilated() {
        let g = Grid::new(2, 8, 1.0).unwrap();
        let f = Field::from_fn(&g, |_| Complex64::new(3.0, -1.0));
        assert!(half_laplacian(&f).max_abs() < 1e-13);
    }

    #[test]
    fn non_finite_symbol_names_mode() {
        let g = Grid::new(1, 8, 1.0).unwrap();
        let f = Field::zeros(&g);
        let err = apply_multiplier(&f, |xi| Complex64::new(1.0 / xi[0], 0.0), Representation::Physical)
            .unwrap_err();
        match err {
            Error::NonFiniteMultiplier { mode, wavenumber } => {
                assert_eq!(mode, vec![0]);
                assert_eq!(wavenumber, vec![0.0]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn odd_symbol_drops_nyquist() {
        let g = Grid::new(1, 8, 2.0 * PI).unwrap();
        // e^{-i4x} sits on the Nyquist mode; its derivative is not representable.
        let f = Field::from_fn(&g, |x| Complex64::from_polar(1.0, -4.0 * x[0]));
        assert!(partial(&f, 0).max_abs() < 1e-14);
        assert!((half_laplacian(&f).max_abs() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn gaussian_gradient_matches_closed_form() {
        let g = Grid::new(1, 256, 40.0).unwrap();
        let a = 0.7;
        let density = Field::from_fn(&g, |x| Complex64::new(a * a * (-2.0 * x[0] * x[0]).exp(), 0.0));
        let grad = partial(&density, 0);
        let exact = Field::from_fn(&g, |x| Complex64::new(-4.0 * x[0] * a * a * (-2.0 * x[0] * x[0]).exp(), 0.0));
        assert!(grad.max_abs_diff(&exact).unwrap() < 1e-8);
    }
}
