use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{fmt_f64, parse_pair};

/// Smallest admissible number of radial samples.
pub const MIN_SAMPLES: usize = 16;

/// A radial function `f̃(r)` sampled at the staggered nodes `r_k = (k + 1/2) R/M`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialProfile {
    radius: f64,
    values: Vec<Complex64>,
}

impl RadialProfile {
    pub fn new(radius: f64, values: Vec<Complex64>) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidProfile(format!("radius must be positive, got {radius}")));
        }
        if values.len() < MIN_SAMPLES {
            return Err(Error::InvalidProfile(format!(
                "need at least {MIN_SAMPLES} samples, got {}",
                values.len()
            )));
        }
        if let Some(k) = values.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidProfile(format!("non-finite sample at node {k}")));
        }
        Ok(Self { radius, values })
    }

    pub fn zeros(radius: f64, samples: usize) -> Result<Self> {
        Self::new(radius, vec![Complex64::new(0.0, 0.0); samples])
    }

    pub fn from_fn(radius: f64, samples: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let h = radius / samples as f64;
        Self::new(radius, (0..samples).map(|k| f((k as f64 + 0.5) * h)).collect())
    }

    pub(crate) fn from_raw(radius: f64, values: Vec<Complex64>) -> Self {
        Self { radius, values }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        self.radius / self.values.len() as f64
    }

    pub fn node(&self, k: usize) -> f64 {
        (k as f64 + 0.5) * self.spacing()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.node(k)).collect()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self::from_raw(self.radius, self.values.iter().map(|&z| f(z)).collect())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|z| z * c)
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: Complex64, other: &RadialProfile) -> Result<Self> {
        self.check_same_grid(other)?;
        Ok(Self::from_raw(
            self.radius,
            self.values.iter().zip(&other.values).map(|(a, b)| a + c * b).collect(),
        ))
    }

    pub(crate) fn check_same_grid(&self, other: &RadialProfile) -> Result<()> {
        if self.len() != other.len() || self.radius != other.radius {
            return Err(Error::GridMismatch(format!(
                "radial grids (M = {}, R = {}) and (M = {}, R = {})",
                self.len(),
                self.radius,
                other.len(),
                other.radius
            )));
        }
        Ok(())
    }

    pub fn write<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{} {}", self.len(), fmt_f64(self.radius))?;
        for z in &self.values {
            writeln!(out, "{} {}", fmt_f64(z.re), fmt_f64(z.im))?;
        }
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn read<R: Read>(input: R) -> Result<Self> {
        let parse = |line: usize, message: String| Error::Parse { line, message };
        let mut lines = BufReader::new(input).lines();
        let header = lines.next().ok_or_else(|| parse(1, "empty file".into()))??;
        let mut it = header.split_whitespace();
        let m: usize = it
            .next()
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| parse(1, "header must be `M R`".into()))?;
        let radius: f64 = it
            .next()
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| parse(1, "header must be `M R`".into()))?;
        let mut values = Vec::with_capacity(m);
        for (i, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            values.push(parse_pair(&line, i + 2)?);
        }
        if values.len() != m {
            return Err(parse(values.len() + 1, format!("expected {m} samples, found {}", values.len())));
        }
        Self::new(radius, values)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::read(File::open(path)?)
    }
}

/// Radial profiles at uniformly spaced times.
#[derive(Clone, Debug)]
pub struct RadialTrajectory {
    pub times: Vec<f64>,
    pub profiles: Vec<RadialProfile>,
    /// Time step of the marching scheme (snapshots may be sparser).
    pub dt: f64,
}

#[derive(Serialize, Deserialize)]
struct Meta {
    dt: f64,
    samples: usize,
    radius: f64,
    times: Vec<f64>,
    files: Vec<String>,
}

impl RadialTrajectory {
    pub fn last(&self) -> &RadialProfile {
        self.profiles.last().expect("trajectory is never empty")
    }

    pub fn export(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;
        let mut files = Vec::with_capacity(self.profiles.len());
        for (k, p) in self.profiles.iter().enumerate() {
            let name = format!("profile_{k:05}.txt");
            p.save(dir.join(&name))?;
            files.push(name);
        }
        let meta = Meta {
            dt: self.dt,
            samples: self.profiles[0].len(),
            radius: self.profiles[0].radius(),
            times: self.times.clone(),
            files,
        };
        fs::write(dir.join("meta.json"), serde_json::to_string_pretty(&meta)?)?;
        Ok(())
    }

    pub fn load(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let meta: Meta = serde_json::from_str(&fs::read_to_string(dir.join("meta.json"))?)?;
        let profiles = meta
            .files
            .iter()
            .map(|f| RadialProfile::load(dir.join(f)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            times: meta.times,
            profiles,
            dt: meta.dt,
        })
    }
}
