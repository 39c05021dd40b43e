use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use super::fft::FftPair;
use crate::error::{Error, Result};

/// Uniform periodic tensor grid in one to three dimensions.
///
/// Coordinates run over `[-L/2, L/2)` on every axis so that the origin is a
/// grid node (index `N/2`). Spectral arrays use FFT ordering: index `k < N/2`
/// carries wavenumber `2πk/L`, index `k >= N/2` carries `2π(k-N)/L`.
#[derive(Clone)]
pub struct Grid {
    inner: Arc<GridInner>,
}

struct GridInner {
    dim: usize,
    points: usize,
    period: f64,
    dx: f64,
    wavenumbers: Vec<f64>,
    fft: FftPair,
}

impl Grid {
    pub fn new(dim: usize, points: usize, period: f64) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidGrid(format!("dimension {dim} not in 1..=3")));
        }
        if points < 8 || !points.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "points per axis must be a power of two >= 8, got {points}"
            )));
        }
        if !(period > 0.0) || !period.is_finite() {
            return Err(Error::InvalidGrid(format!("period must be positive, got {period}")));
        }
        let base = 2.0 * PI / period;
        let half = points / 2;
        let wavenumbers = (0..points)
            .map(|k| {
                let signed = if k < half { k as f64 } else { k as f64 - points as f64 };
                base * signed
            })
            .collect();
        Ok(Self {
            inner: Arc::new(GridInner {
                dim,
                points,
                period,
                dx: period / points as f64,
                wavenumbers,
                fft: FftPair::new(points),
            }),
        })
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    /// Points per axis.
    pub fn points(&self) -> usize {
        self.inner.points
    }

    pub fn period(&self) -> f64 {
        self.inner.period
    }

    pub fn dx(&self) -> f64 {
        self.inner.dx
    }

    /// Total number of samples, `N^n`.
    pub fn len(&self) -> usize {
        self.inner.points.pow(self.inner.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Cell volume `dx^n`.
    pub fn cell_volume(&self) -> f64 {
        self.inner.dx.powi(self.inner.dim as i32)
    }

    /// Per-axis wavenumbers in FFT order.
    pub fn wavenumbers(&self) -> &[f64] {
        &self.inner.wavenumbers
    }

    /// Per-axis wavenumbers sorted from `-πN/L` to `π(N-2)/L`.
    pub fn wavenumbers_sorted(&self) -> Vec<f64> {
        let mut w = self.inner.wavenumbers.clone();
        w.sort_by(|a, b| a.partial_cmp(b).unwrap());
        w
    }

    /// FFT index of the unpaired Nyquist mode `-πN/L`.
    pub fn nyquist_index(&self) -> usize {
        self.inner.points / 2
    }

    pub fn coordinate(&self, index: usize) -> f64 {
        -0.5 * self.inner.period + index as f64 * self.inner.dx
    }

    /// Splits a flat row-major index into per-axis indices (last axis fastest).
    pub fn unflatten(&self, mut flat: usize, out: &mut [usize]) {
        let n = self.inner.points;
        for slot in out.iter_mut().rev() {
            *slot = flat % n;
            flat /= n;
        }
    }

    /// Physical coordinates of a flat index.
    pub fn position(&self, flat: usize) -> [f64; 3] {
        let mut idx = [0usize; 3];
        let dim = self.dim();
        self.unflatten(flat, &mut idx[..dim]);
        let mut x = [0.0; 3];
        for a in 0..dim {
            x[a] = self.coordinate(idx[a]);
        }
        x
    }

    /// Wavevector of a flat spectral index.
    pub fn wavevector(&self, flat: usize) -> [f64; 3] {
        let mut idx = [0usize; 3];
        let dim = self.dim();
        self.unflatten(flat, &mut idx[..dim]);
        let mut xi = [0.0; 3];
        for a in 0..dim {
            xi[a] = self.inner.wavenumbers[idx[a]];
        }
        xi
    }

    /// `|ξ|` for every spectral index.
    pub fn abs_wavenumbers(&self) -> Vec<f64> {
        (0..self.len())
            .map(|k| {
                let xi = self.wavevector(k);
                (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt()
            })
            .collect()
    }

    /// Flat index of the origin `x = 0`.
    pub fn origin_index(&self) -> usize {
        let half = self.points() / 2;
        (0..self.dim()).fold(0, |acc, _| acc * self.points() + half)
    }

    /// Same grid with every length divided by `sigma`.
    pub fn rescaled(&self, sigma: f64) -> Result<Self> {
        Self::new(self.dim(), self.points(), self.period() / sigma)
    }

    pub(crate) fn fft(&self) -> &FftPair {
        &self.inner.fft
    }

    pub fn same_as(&self, other: &Grid) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self == other
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.inner.dim == other.inner.dim
            && self.inner.points == other.inner.points
            && self.inner.period == other.inner.period
    }
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid")
            .field("dim", &self.inner.dim)
            .field("points", &self.inner.points)
            .field("period", &self.inner.period)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_grid_wavenumbers() {
        let g = Grid::new(1, 8, 2.0 * PI).unwrap();
        assert!((g.dx() - PI / 4.0).abs() < 1e-15);
        let w = g.wavenumbers_sorted();
        let expected: Vec<f64> = (-4..4).map(|k| k as f64).collect();
        for (a, b) in w.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-14);
        }
        assert_eq!(g.wavenumbers()[g.nyquist_index()], -4.0);
    }

    #[test]
    fn three_dimensional_grid_size() {
        let g = Grid::new(3, 16, 10.0).unwrap();
        assert_eq!(g.len(), 4096);
        assert_eq!(g.dx(), 0.625);
        assert_eq!(g.dx() * g.points() as f64, g.period());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(Grid::new(2, 7, 1.0), Err(Error::InvalidGrid(_))));
        assert!(Grid::new(2, 4, 1.0).is_err());
        assert!(Grid::new(1, 8, 0.0).is_err());
        assert!(Grid::new(1, 8, -1.0).is_err());
        assert!(Grid::new(4, 8, 1.0).is_err());
    }

    #[test]
    fn wavenumbers_symmetric_except_nyquist() {
        let g = Grid::new(1, 16, 3.0).unwrap();
        let w = g.wavenumbers();
        for k in 1..8 {
            assert!((w[k] + w[16 - k]).abs() < 1e-13);
        }
        assert!((w[8] + PI * 16.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn origin_is_a_node() {
        let g = Grid::new(3, 8, 4.0).unwrap();
        assert_eq!(g.position(g.origin_index()), [0.0, 0.0, 0.0]);
    }
}
