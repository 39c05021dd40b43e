use std::fmt;

use num_complex::Complex64;

use super::fft::transform_all_axes;
use super::grid::Grid;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    Physical,
    Spectral,
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Representation::Physical => f.write_str("physical"),
            Representation::Spectral => f.write_str("spectral"),
        }
    }
}

/// Complex scalar field sampled on a [`Grid`].
///
/// The forward transform carries the cell volume `dx^n` and the inverse carries
/// `1/L^n`, so spectral sums `Σ|f̂|²/L^n` approximate `∫|f̂|² dξ/(2π)^n`.
#[derive(Clone, Debug)]
pub struct Field {
    grid: Grid,
    values: Vec<Complex64>,
    repr: Representation,
}

impl Field {
    pub fn new(grid: Grid, values: Vec<Complex64>, repr: Representation) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "expected {} values, got {}",
                grid.len(),
                values.len()
            )));
        }
        Ok(Self { grid, values, repr })
    }

    pub fn zeros(grid: &Grid) -> Self {
        Self {
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
            grid: grid.clone(),
            repr: Representation::Physical,
        }
    }

    /// Samples `f(x)` at every physical node.
    pub fn from_fn(grid: &Grid, f: impl Fn(&[f64]) -> Complex64) -> Self {
        let dim = grid.dim();
        let values = (0..grid.len())
            .map(|k| {
                let x = grid.position(k);
                f(&x[..dim])
            })
            .collect();
        Self {
            grid: grid.clone(),
            values,
            repr: Representation::Physical,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn representation(&self) -> Representation {
        self.repr
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn into_spectral(mut self) -> Self {
        if self.repr == Representation::Physical {
            transform_all_axes(&mut self.values, self.grid.dim(), self.grid.points(), &self.grid.fft().forward);
            let scale = self.grid.cell_volume();
            self.values.iter_mut().for_each(|z| *z *= scale);
            self.repr = Representation::Spectral;
        }
        self
    }

    pub fn into_physical(mut self) -> Self {
        if self.repr == Representation::Spectral {
            transform_all_axes(&mut self.values, self.grid.dim(), self.grid.points(), &self.grid.fft().inverse);
            let scale = 1.0 / self.grid.period().powi(self.grid.dim() as i32);
            self.values.iter_mut().for_each(|z| *z *= scale);
            self.repr = Representation::Physical;
        }
        self
    }

    pub fn to_spectral(&self) -> Self {
        self.clone().into_spectral()
    }

    pub fn to_physical(&self) -> Self {
        self.clone().into_physical()
    }

    pub fn into_representation(self, repr: Representation) -> Self {
        match repr {
            Representation::Physical => self.into_physical(),
            Representation::Spectral => self.into_spectral(),
        }
    }

    /// Multiplies spectral coefficients by a precomputed symbol array.
    pub fn multiply_symbol(&mut self, symbol: &[Complex64]) {
        debug_assert_eq!(self.repr, Representation::Spectral);
        for (z, m) in self.values.iter_mut().zip(symbol) {
            *z *= m;
        }
    }

    pub fn scale(mut self, factor: Complex64) -> Self {
        self.values.iter_mut().for_each(|z| *z *= factor);
        self
    }

    fn check_compatible(&self, other: &Field) -> Result<()> {
        if !self.grid.same_as(&other.grid) {
            return Err(Error::GridMismatch(format!("{:?} vs {:?}", self.grid, other.grid)));
        }
        Ok(())
    }

    /// `self + factor * other`, in the representation of `self`.
    pub fn axpy(&self, factor: Complex64, other: &Field) -> Result<Field> {
        self.check_compatible(other)?;
        let other = other.clone().into_representation(self.repr);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + factor * b)
            .collect();
        Ok(Field {
            grid: self.grid.clone(),
            values,
            repr: self.repr,
        })
    }

    /// `⟨f, g⟩ = ∫ f ḡ dx`, evaluated on physical samples.
    pub fn inner(&self, other: &Field) -> Result<Complex64> {
        self.check_compatible(other)?;
        let a = self.to_physical();
        let b = other.to_physical();
        let sum: Complex64 = a.values.iter().zip(&b.values).map(|(x, y)| x * y.conj()).sum();
        Ok(sum * self.grid.cell_volume())
    }

    /// Pointwise map on physical samples.
    pub fn map_physical(&self, f: impl Fn(Complex64) -> Complex64) -> Field {
        let mut out = self.to_physical();
        out.values.iter_mut().for_each(|z| *z = f(*z));
        out
    }

    /// Maximum pointwise distance to `other` on physical samples.
    pub fn max_abs_diff(&self, other: &Field) -> Result<f64> {
        self.check_compatible(other)?;
        let a = self.to_physical();
        let b = other.to_physical();
        Ok(a.values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.to_physical().values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}
