//! Scenario files: TOML with one `[scenario.<name>]` table per scenario.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use indexmap::IndexMap;
use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};
use semirelax_core::propagator::{Scheme, StepperConfig};
use semirelax_core::radial::RadialProfile;
use semirelax_core::spectral::{load_field, sobolev_norm, Field, Grid, SobolevSpec};
use thiserror::Error;

/// Largest `H¹` norm accepted as small data for the critical cubic regime in 3D.
pub const SMALL_DATA_H1: f64 = 0.1;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: scenario `{scenario}`: {message}")]
    Invalid { line: usize, scenario: String, message: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Clone, Debug, PartialEq)]
pub enum InitialData {
    /// `a·exp(-|x - c|²/w²)`, centered at `(c, …, c)`.
    Gaussian { amplitude: f64, width: f64, center: f64 },
    /// `a·exp(2πi k x₁/L)`.
    Mode { k: i64, amplitude: f64 },
    File(PathBuf),
}

impl fmt::Display for InitialData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialData::Gaussian { amplitude, width, center } => write!(f, "gaussian({amplitude}, {width}, {center})"),
            InitialData::Mode { k, amplitude } => write!(f, "mode({k}, {amplitude})"),
            InitialData::File(path) => write!(f, "file({})", path.display()),
        }
    }
}

impl Serialize for InitialData {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for InitialData {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let text = text.trim();
        let (name, rest) = text
            .split_once('(')
            .ok_or_else(|| format!("expected gaussian(a, w, c), mode(k, a) or file(path), got `{text}`"))?;
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| format!("missing `)` in `{text}`"))?;
        let numbers = || -> Result<Vec<f64>, String> {
            inner
                .split(',')
                .map(|a| a.trim().parse::<f64>().map_err(|_| format!("bad number `{}` in `{text}`", a.trim())))
                .collect()
        };
        match name.trim() {
            "gaussian" => match numbers()?.as_slice() {
                &[amplitude, width, center] if width > 0.0 => Ok(InitialData::Gaussian { amplitude, width, center }),
                &[_, _, _] => Err(format!("gaussian width must be positive in `{text}`")),
                _ => Err(format!("gaussian takes (amplitude, width, center), got `{text}`")),
            },
            "mode" => match numbers()?.as_slice() {
                &[k, amplitude] if k.fract() == 0.0 => Ok(InitialData::Mode { k: k as i64, amplitude }),
                _ => Err(format!("mode takes (integer k, amplitude), got `{text}`")),
            },
            "file" if !inner.trim().is_empty() => Ok(InitialData::File(PathBuf::from(inner.trim()))),
            other => Err(format!("unknown initial data `{other}`")),
        }
    }
}

impl InitialData {
    /// Whether the data is known to be a function of `|x|` alone.
    pub fn is_radial(&self) -> bool {
        matches!(self, InitialData::Gaussian { center, .. } if *center == 0.0)
    }

    pub fn with_amplitude(&self, a: f64) -> Option<Self> {
        match self {
            InitialData::Gaussian { width, center, .. } => Some(InitialData::Gaussian { amplitude: a, width: *width, center: *center }),
            InitialData::Mode { k, .. } => Some(InitialData::Mode { k: *k, amplitude: a }),
            InitialData::File(_) => None,
        }
    }

    pub fn field(&self, grid: &Grid) -> semirelax_core::Result<Field> {
        match self {
            InitialData::Gaussian { amplitude, width, center } => Ok(Field::from_fn(grid, |x| {
                let d2: f64 = x.iter().map(|v| (v - center).powi(2)).sum();
                Complex64::new(amplitude * (-d2 / (width * width)).exp(), 0.0)
            })),
            InitialData::Mode { k, amplitude } => {
                let wave = 2.0 * std::f64::consts::PI * *k as f64 / grid.period();
                Ok(Field::from_fn(grid, |x| Complex64::from_polar(*amplitude, wave * x[0])))
            }
            InitialData::File(path) => {
                let f = load_field(path)?;
                if !f.grid().same_as(grid) {
                    return Err(semirelax_core::Error::GridMismatch(format!(
                        "{} holds {:?}, scenario expects {:?}",
                        path.display(),
                        f.grid(),
                        grid
                    )));
                }
                Ok(f)
            }
        }
    }

    pub fn radial(&self, radius: f64, samples: usize) -> semirelax_core::Result<RadialProfile> {
        match self {
            InitialData::Gaussian { amplitude, width, center } if *center == 0.0 => {
                RadialProfile::from_fn(radius, samples, |r| Complex64::new(amplitude * (-(r / width).powi(2)).exp(), 0.0))
            }
            other => Err(semirelax_core::Error::InvalidProfile(format!("`{other}` is not radial data"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Solver {
    Spectral,
    RadialWave,
    Both,
}

impl Solver {
    pub fn spectral(self) -> bool {
        self != Solver::RadialWave
    }

    pub fn radial(self) -> bool {
        self != Solver::Spectral
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Prop11,
    Prop12,
    Prop13,
    Prop14,
    Prop21,
    Prop22,
    Prop23,
    Prop24,
    Scaling,
    Strauss,
    WeightedStrichartz,
    Maximal,
    MaximalBound,
    Duhamel,
    Hardy,
    Equivalence,
}

impl Check {
    pub const ALL: [Check; 16] = [
        Check::Prop11,
        Check::Prop12,
        Check::Prop13,
        Check::Prop14,
        Check::Prop21,
        Check::Prop22,
        Check::Prop23,
        Check::Prop24,
        Check::Scaling,
        Check::Strauss,
        Check::WeightedStrichartz,
        Check::Maximal,
        Check::MaximalBound,
        Check::Duhamel,
        Check::Hardy,
        Check::Equivalence,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Check::Prop11 => "prop11",
            Check::Prop12 => "prop12",
            Check::Prop13 => "prop13",
            Check::Prop14 => "prop14",
            Check::Prop21 => "prop21",
            Check::Prop22 => "prop22",
            Check::Prop23 => "prop23",
            Check::Prop24 => "prop24",
            Check::Scaling => "scaling",
            Check::Strauss => "strauss",
            Check::WeightedStrichartz => "weighted_strichartz",
            Check::Maximal => "maximal",
            Check::MaximalBound => "maximal_bound",
            Check::Duhamel => "duhamel",
            Check::Hardy => "hardy",
            Check::Equivalence => "equivalence",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

/// Pass thresholds for the checks that compare against a tolerance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub prop21: f64,
    pub prop22: f64,
    pub scaling: f64,
    pub maximal: f64,
    pub equivalence: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            prop21: 1e-6,
            prop22: 1e-5,
            scaling: 1e-8,
            maximal: 1e-8,
            equivalence: 1e-2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Scenario {
    pub name: String,
    pub n: usize,
    pub p: f64,
    pub s: f64,
    pub points: usize,
    pub length: f64,
    pub samples: usize,
    pub radius: f64,
    pub initial: InitialData,
    pub dt: f64,
    pub t_final: f64,
    pub stride: usize,
    pub coupling: f64,
    pub scheme: Scheme,
    pub dealias: bool,
    pub sigma: f64,
    pub solver: Solver,
    pub checks: Vec<Check>,
    pub tolerances: Tolerances,
    #[serde(skip)]
    pub line: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    #[serde(default)]
    scenario: IndexMap<String, toml::Spanned<RawScenario>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    n: usize,
    p: f64,
    s: Option<f64>,
    points: Option<usize>,
    length: Option<f64>,
    samples: Option<usize>,
    radius: Option<f64>,
    initial: String,
    dt: f64,
    t_final: f64,
    stride: Option<usize>,
    coupling: Option<f64>,
    scheme: Option<Scheme>,
    dealias: Option<bool>,
    sigma: Option<f64>,
    solver: Option<Solver>,
    #[serde(default)]
    checks: Vec<String>,
    tol_prop21: Option<f64>,
    tol_prop22: Option<f64>,
    tol_scaling: Option<f64>,
    tol_maximal: Option<f64>,
    tol_equivalence: Option<f64>,
}

/// Grid defaults per dimension: `(N, L)`.
pub fn default_grid(n: usize) -> (usize, f64) {
    match n {
        1 => (256, 40.0),
        2 => (128, 30.0),
        _ => (64, 20.0),
    }
}

/// Radial defaults `(M, R)`.
pub const DEFAULT_RADIAL: (usize, f64) = (512, 20.0);

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// Parses and validates scenario text. Relative `file(...)` paths resolve against `base`.
pub fn parse_config(text: &str, base: &Path) -> Result<Vec<Scenario>, ConfigError> {
    let raw: RawFile = toml::from_str(text).map_err(|e| ConfigError::Parse {
        line: e.span().map_or(0, |s| line_of(text, s.start)),
        message: e.message().to_string(),
    })?;
    let mut out = Vec::with_capacity(raw.scenario.len());
    for (name, spanned) in raw.scenario {
        let line = line_of(text, spanned.span().start);
        let invalid = |message: String| ConfigError::Invalid { line, scenario: name.clone(), message };
        let r = spanned.into_inner();
        let initial: InitialData = r.initial.parse().map_err(invalid)?;
        let initial = match initial {
            InitialData::File(p) if p.is_relative() => InitialData::File(base.join(p)),
            other => other,
        };
        let checks = r.checks.iter().map(|c| c.parse()).collect::<Result<Vec<Check>, _>>().map_err(invalid)?;
        let (points, length) = default_grid(r.n);
        let defaults = Tolerances::default();
        let scenario = Scenario {
            name: name.clone(),
            n: r.n,
            p: r.p,
            s: r.s.unwrap_or(1.0),
            points: r.points.unwrap_or(points),
            length: r.length.unwrap_or(length),
            samples: r.samples.unwrap_or(DEFAULT_RADIAL.0),
            radius: r.radius.unwrap_or(DEFAULT_RADIAL.1),
            initial,
            dt: r.dt,
            t_final: r.t_final,
            stride: r.stride.unwrap_or(1),
            coupling: r.coupling.unwrap_or(1.0),
            scheme: r.scheme.unwrap_or(Scheme::Strang),
            dealias: r.dealias.unwrap_or(true),
            sigma: r.sigma.unwrap_or(1.0),
            solver: r.solver.unwrap_or(Solver::Spectral),
            checks,
            tolerances: Tolerances {
                prop21: r.tol_prop21.unwrap_or(defaults.prop21),
                prop22: r.tol_prop22.unwrap_or(defaults.prop22),
                scaling: r.tol_scaling.unwrap_or(defaults.scaling),
                maximal: r.tol_maximal.unwrap_or(defaults.maximal),
                equivalence: r.tol_equivalence.unwrap_or(defaults.equivalence),
            },
            line,
        };
        scenario.validate().map_err(invalid)?;
        out.push(scenario);
    }
    Ok(out)
}

pub fn load_config(path: impl AsRef<Path>) -> Result<Vec<Scenario>, ConfigError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
    parse_config(&text, path.parent().unwrap_or(Path::new(".")))
}

impl Scenario {
    pub fn stepper_config(&self) -> semirelax_core::Result<StepperConfig> {
        Ok(StepperConfig::new(self.p, self.dt, self.t_final)?
            .with_scheme(self.scheme)
            .with_stride(self.stride)
            .with_coupling(self.coupling)
            .with_dealias(self.dealias))
    }

    /// Grid for the spectral solver, shrunk by `sigma` for rescaled data.
    pub fn grid(&self) -> semirelax_core::Result<Grid> {
        Grid::new(self.n, self.points, self.length / self.sigma)
    }

    /// Rejects parameter sets outside the hypotheses of the requested checks.
    pub fn validate(&self) -> Result<(), String> {
        self.validate_inner(true)
    }

    /// As [`Scenario::validate`] but without the small-data gate, for amplitude sweeps
    /// that probe where the small-data regime actually ends.
    pub fn validate_without_smallness(&self) -> Result<(), String> {
        self.validate_inner(false)
    }

    fn validate_inner(&self, smallness: bool) -> Result<(), String> {
        if !(1..=3).contains(&self.n) {
            return Err(format!("dimension must be 1, 2 or 3, got n = {}", self.n));
        }
        if !(self.sigma > 0.0) {
            return Err(format!("sigma must be positive, got {}", self.sigma));
        }
        self.stepper_config().map_err(|e| e.to_string())?;
        if self.solver.spectral() {
            self.grid().map_err(|e| e.to_string())?;
        }
        if self.solver.radial() {
            if self.n != 3 {
                return Err(format!("the radial wave solver needs n = 3, got n = {}", self.n));
            }
            if !self.initial.is_radial() {
                return Err(format!("the radial wave solver needs radial data, got `{}`", self.initial));
            }
            if self.t_final >= self.radius {
                return Err(format!("the radial wave solver needs T < R, got T = {}, R = {}", self.t_final, self.radius));
            }
            RadialProfile::zeros(self.radius, self.samples).map_err(|e| e.to_string())?;
        }
        let (n, p, s) = (self.n, self.p, self.s);
        let nf = n as f64;
        for &check in &self.checks {
            let fail = |why: String| Err(format!("check `{check}` {why}"));
            let need_spectral = || {
                if self.solver.spectral() {
                    Ok(())
                } else {
                    Err(format!("check `{check}` needs the spectral solver"))
                }
            };
            let need_radial = || {
                if self.solver.radial() {
                    Ok(())
                } else {
                    Err(format!("check `{check}` needs the radial wave solver (solver = \"radial-wave\" or \"both\")"))
                }
            };
            match check {
                Check::Prop11 if n != 1 => return fail(format!("is stated for n = 1, got n = {n}")),
                Check::Prop12 if n != 2 => return fail(format!("is stated for n = 2, got n = {n}")),
                Check::Prop12 if !(s > 0.75 && s < p) => return fail(format!("requires 3/4 < s < p, got s = {s}, p = {p}")),
                Check::Prop13 | Check::Prop14 if n != 3 => return fail(format!("is stated for n = 3, got n = {n}")),
                Check::Prop13 | Check::Prop14 if !self.initial.is_radial() => {
                    return fail(format!("requires radial data, got `{}`", self.initial))
                }
                Check::Prop13 if !(p > 1.0 && p < 3.0) => {
                    return fail(format!("requires 1 < p < p_(n,1) = 1 + 2/(n-2) = 3, got p = {p}"))
                }
                Check::Prop14 if p != 3.0 => return fail(format!("requires p = p_(3,1) = 3, got p = {p}")),
                Check::Prop14 if smallness => {
                    let h1 = self.initial_h1().map_err(|e| e.to_string())?;
                    if h1 > SMALL_DATA_H1 {
                        return fail(format!("requires small data, ‖u₀‖_H¹ = {h1:.6} exceeds {SMALL_DATA_H1}"));
                    }
                }
                Check::Prop21 | Check::Prop22 | Check::Scaling | Check::WeightedStrichartz => need_spectral()?,
                Check::Prop23 => {
                    need_spectral()?;
                    if !(n == 1 || n == 2) {
                        return fail(format!("is stated for n = 1, 2, got n = {n}"));
                    }
                    if !(s > 0.5 * nf && s < p.min(2.0)) {
                        return fail(format!("requires n/2 < s < min(2, p), got n = {n}, s = {s}, p = {p}"));
                    }
                }
                Check::Prop24 => {
                    need_spectral()?;
                    if p != 3.0 {
                        return fail(format!("requires p = 3, got p = {p}"));
                    }
                }
                Check::Strauss => {
                    if n < 2 || !(s > 0.5 && s < 0.5 * nf) {
                        return fail(format!("requires n >= 2 and 1/2 < s < n/2, got n = {n}, s = {s}"));
                    }
                    if !self.initial.is_radial() {
                        return fail(format!("requires radial data, got `{}`", self.initial));
                    }
                }
                Check::Maximal | Check::MaximalBound | Check::Duhamel | Check::Hardy => need_radial()?,
                Check::Equivalence if self.solver != Solver::Both => {
                    return fail("compares both solvers and needs solver = \"both\"".into())
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// `‖u₀‖_{H¹}` on the scenario grid (or the radial grid for the radial-only solver).
    pub fn initial_h1(&self) -> semirelax_core::Result<f64> {
        if self.solver.spectral() {
            let u0 = self.initial.field(&self.grid()?)?;
            sobolev_norm(&u0, SobolevSpec::inhomogeneous(1.0))
        } else {
            let f = self.initial.radial(self.radius, self.samples)?;
            let l2 = semirelax_core::radial::radial_l2_norm(&f);
            let h1 = semirelax_core::radial::radial_sobolev_norm(&f, 1.0);
            Ok((l2 * l2 + h1 * h1).sqrt())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Vec<Scenario>, ConfigError> {
        parse_config(text, Path::new("."))
    }

    #[test]
    fn empty_file_has_no_scenarios() {
        assert!(parse("").unwrap().is_empty());
        assert!(parse("# nothing here\n").unwrap().is_empty());
    }

    #[test]
    fn initial_data_forms() {
        assert_eq!(
            "gaussian(1, 0.5, 0)".parse::<InitialData>().unwrap(),
            InitialData::Gaussian { amplitude: 1.0, width: 0.5, center: 0.0 }
        );
        assert_eq!("mode(3, 0.2)".parse::<InitialData>().unwrap(), InitialData::Mode { k: 3, amplitude: 0.2 });
        assert_eq!("file(u0.txt)".parse::<InitialData>().unwrap(), InitialData::File("u0.txt".into()));
        for bad in ["gaussian(1, 0, 0)", "mode(1.5, 1)", "sech(1)", "gaussian(1, 2", "file()"] {
            assert!(bad.parse::<InitialData>().is_err(), "{bad}");
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "[scenario.a]\nn = 1\np = 3\ninitial = \"gaussian(1, 1, 0)\"\ndt = 0.1\nt_final = 1\nbogus = 2\n";
        match parse(text) {
            Err(ConfigError::Parse { line, message }) => {
                assert_eq!(line, 7, "{message}");
            }
            other => panic!("{other:?}"),
        }
        match parse("[scenario.a]\nn = \n") {
            Err(ConfigError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn supercritical_radial_power_is_rejected() {
        let text = "[scenario.a]\nn = 3\np = 4\ninitial = \"gaussian(1, 1, 0)\"\ndt = 0.1\nt_final = 1\nchecks = [\"prop13\"]\n";
        match parse(text) {
            Err(ConfigError::Invalid { line, message, .. }) => {
                assert_eq!(line, 1);
                assert!(message.contains("prop13") && message.contains("1 < p < p_(n,1)"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn defaults_follow_dimension() {
        let text = "[scenario.b]\nn = 2\np = 3\ns = 1.5\ninitial = \"gaussian(1, 1, 0)\"\ndt = 0.01\nt_final = 0.1\nchecks = [\"prop23\"]\n";
        let s = &parse(text).unwrap()[0];
        assert_eq!((s.points, s.length, s.solver, s.stride), (128, 30.0, Solver::Spectral, 1));
        assert_eq!(s.checks, vec![Check::Prop23]);
    }

    #[test]
    fn hs_growth_hypothesis_cites_check() {
        let text = "[scenario.c]\nn = 2\np = 3\ns = 1\ninitial = \"gaussian(1, 1, 0)\"\ndt = 0.01\nt_final = 0.1\nchecks = [\"prop23\"]\n";
        let err = parse(text).unwrap_err().to_string();
        assert!(err.contains("prop23") && err.contains("n/2 < s"), "{err}");
    }
}
