//! Dyadic Littlewood–Paley blocks and the `B^s_{r,2}` norm.
//!
//! The cutoff `θ` is smooth, equal to 1 on `[0, 3/2]` and 0 on `[2, ∞)`. Blocks are
//! the low-frequency cap `θ(2|ξ|)` and the bumps `φ(|ξ|/2^j)`, `j ≥ 0`, with
//! `φ(ρ) = θ(ρ) - θ(2ρ)`: each bump lives in `[3/4, 2]·2^j` and equals one on
//! `[1, 3/2]·2^j`. The sum telescopes to one.

use super::field::{Field, Representation};
use super::norms::{lp_norm, sobolev_norm, SobolevSpec};
use crate::error::{Error, Result};

const PLATEAU: f64 = 1.5;
const EDGE: f64 = 2.0;

fn smooth_step(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (-1.0 / x).exp()
    }
}

/// Smooth cutoff: 1 on `[0, 3/2]`, 0 on `[2, ∞)`.
pub fn cutoff(rho: f64) -> f64 {
    if rho <= PLATEAU {
        1.0
    } else if rho >= EDGE {
        0.0
    } else {
        let a = smooth_step(EDGE - rho);
        let b = smooth_step(rho - PLATEAU);
        a / (a + b)
    }
}

/// Dyadic bump `φ(ρ) = θ(ρ) - θ(2ρ)`.
pub fn bump(rho: f64) -> f64 {
    cutoff(rho) - cutoff(2.0 * rho)
}

/// Partition of the grid's frequency range into dyadic blocks.
#[derive(Clone, Debug)]
pub struct LittlewoodPaley {
    /// Number of bumps `φ(·/2^j)`, `j = 0..blocks`.
    pub blocks: usize,
}

impl LittlewoodPaley {
    /// Enough blocks to cover the largest `|ξ|` on the grid.
    pub fn for_max_frequency(max_xi: f64) -> Self {
        let mut blocks = 1;
        while 0.75 * 2f64.powi(blocks as i32) <= max_xi {
            blocks += 1;
        }
        Self { blocks }
    }

    pub fn for_field(f: &Field) -> Self {
        let max = f.grid().abs_wavenumbers().into_iter().fold(0.0, f64::max);
        Self::for_max_frequency(max)
    }

    /// Block weights at `|ξ|`: index 0 is the low cap, index `j+1` the bump `j`.
    pub fn weights(&self, abs_xi: f64) -> Vec<f64> {
        let mut w = Vec::with_capacity(self.blocks + 1);
        w.push(cutoff(2.0 * abs_xi));
        for j in 0..self.blocks {
            w.push(bump(abs_xi / 2f64.powi(j as i32)));
        }
        w
    }

    /// Largest `|1 - Σ weights|` over the given frequencies.
    pub fn partition_residual(&self, abs_xi: &[f64]) -> f64 {
        abs_xi
            .iter()
            .map(|&k| (1.0 - self.weights(k).iter().sum::<f64>()).abs())
            .fold(0.0, f64::max)
    }

    /// Smoothness weight of block `index` in the Besov sum (`2^{js}`, 1 for the low cap).
    fn block_scale(index: usize, s: f64) -> f64 {
        if index == 0 {
            1.0
        } else {
            2f64.powf((index - 1) as f64 * s)
        }
    }

    /// The dyadic pieces `Δ_j f` in physical representation, low cap first.
    pub fn decompose(&self, f: &Field) -> Vec<Field> {
        let spec = f.to_spectral();
        let abs_xi = f.grid().abs_wavenumbers();
        let weights: Vec<Vec<f64>> = abs_xi.iter().map(|&k| self.weights(k)).collect();
        (0..=self.blocks)
            .map(|b| {
                let mut piece = spec.clone();
                for (z, w) in piece.values_mut().iter_mut().zip(&weights) {
                    *z *= w[b];
                }
                piece.into_representation(Representation::Physical)
            })
            .collect()
    }

    /// Bounds `c, C` with `c‖f‖_{H^s} ≤ ‖f‖_{B^s_{2,2}} ≤ C‖f‖_{H^s}` on the given frequencies.
    pub fn frame_constants(&self, abs_xi: &[f64], s: f64) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for &k in abs_xi {
            let w = self.weights(k);
            let besov: f64 = w
                .iter()
                .enumerate()
                .map(|(b, x)| (Self::block_scale(b, s) * x).powi(2))
                .sum();
            let ratio = (besov / (1.0 + k * k).powf(s)).sqrt();
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
        (lo, hi)
    }
}

/// Inhomogeneous Besov norm with second index 2: `(Σ_j (2^{js}‖Δ_j f‖_{L^r})²)^{1/2}`.
pub fn besov_norm(f: &Field, s: f64, r: f64) -> Result<f64> {
    if !(r >= 1.0) {
        return Err(Error::InvalidExponent(format!("Besov exponent must be >= 1, got {r}")));
    }
    let lp = LittlewoodPaley::for_field(f);
    let mut sum = 0.0;
    for (b, piece) in lp.decompose(f).iter().enumerate() {
        let scale = LittlewoodPaley::block_scale(b, s);
        sum += (scale * lp_norm(piece, r)?).powi(2);
    }
    Ok(sum.sqrt())
}

/// `‖f‖_{H^s}` for comparing against [`besov_norm`] with `r = 2`.
pub fn sobolev_reference(f: &Field, s: f64) -> Result<f64> {
    sobolev_norm(f, SobolevSpec::inhomogeneous(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    #[test]
    fn partition_of_unity_on_grid() {
        let g = Grid::new(2, 64, 2.0 * PI).unwrap();
        let xi = g.abs_wavenumbers();
        let lp = LittlewoodPaley::for_max_frequency(xi.iter().copied().fold(0.0, f64::max));
        assert!(lp.partition_residual(&xi) < 1e-12);
    }

    #[test]
    fn bump_support_and_plateau() {
        for i in 0..=400 {
            let rho = i as f64 * 0.01;
            let b = bump(rho);
            if rho < 0.75 || rho > 2.0 {
                assert_eq!(b, 0.0, "rho {rho}");
            }
            if (1.0..=1.5).contains(&rho) {
                assert_eq!(b, 1.0, "rho {rho}");
            }
        }
    }

    #[test]
    fn single_block_field() {
        // Modes 8..=12 sit on the plateau [2^3, 1.5·2^3] of bump j = 3.
        let g = Grid::new(1, 64, 2.0 * PI).unwrap();
        let f = Field::from_fn(&g, |x| {
            (8..=12).map(|k| Complex64::from_polar(1.0 / k as f64, k as f64 * x[0] + 0.3 * k as f64)).sum()
        });
        let l2 = lp_norm(&f, 2.0).unwrap();
        assert!((besov_norm(&f, 0.0, 2.0).unwrap() / l2 - 1.0).abs() < 1e-12);
        let l4 = lp_norm(&f, 4.0).unwrap();
        assert!((besov_norm(&f, 0.7, 4.0).unwrap() / (8f64.powf(0.7) * l4) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_field_and_bad_exponent() {
        let g = Grid::new(1, 16, 1.0).unwrap();
        let z = Field::zeros(&g);
        assert_eq!(besov_norm(&z, 1.0, 2.0).unwrap(), 0.0);
        assert!(besov_norm(&z, 1.0, 0.5).is_err());
    }
}
