//! Parameter sweeps over a scenario template with convergence and stability summaries.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::str::FromStr;

use anyhow::{bail, Result};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Check, Scenario};
use crate::plots::refinement_chart;
use crate::run::{run, RunOptions, RunReport};

/// Bisection steps used to locate the amplitude where runs stop completing.
pub const BISECTION_STEPS: usize = 8;

const CONSTANT_CHECKS: [Check; 7] = [
    Check::Prop23,
    Check::Prop24,
    Check::Strauss,
    Check::WeightedStrichartz,
    Check::MaximalBound,
    Check::Duhamel,
    Check::Hardy,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parameter {
    Dt,
    Points,
    Amplitude,
    Sigma,
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parameter::Dt => "dt",
            Parameter::Points => "points",
            Parameter::Amplitude => "amplitude",
            Parameter::Sigma => "sigma",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Variation {
    pub parameter: Parameter,
    pub values: Vec<f64>,
}

impl FromStr for Variation {
    type Err = String;

    /// `dt=1e-3,5e-4`, `points=64,128`, `amplitude=0.01,0.05` or `sigma=0.5,2`.
    fn from_str(text: &str) -> Result<Self, String> {
        let (key, list) = text.split_once('=').ok_or_else(|| format!("expected key=v1,v2,..., got `{text}`"))?;
        let parameter = match key.trim() {
            "dt" => Parameter::Dt,
            "N" | "points" => Parameter::Points,
            "amplitude" => Parameter::Amplitude,
            "sigma" => Parameter::Sigma,
            other => return Err(format!("cannot vary `{other}`; use dt, points, amplitude or sigma")),
        };
        let values = list
            .split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|_| format!("bad value `{}`", v.trim())))
            .collect::<Result<Vec<_>, _>>()?;
        if values.is_empty() {
            return Err("empty parameter grid".into());
        }
        Ok(Self { parameter, values })
    }
}

/// The template with one parameter replaced, renamed `<parameter>_<index>` and revalidated.
pub fn vary(template: &Scenario, parameter: Parameter, value: f64, index: usize) -> Result<Scenario, String> {
    let mut sc = template.clone();
    sc.name = format!("{parameter}_{index:02}");
    match parameter {
        Parameter::Dt => sc.dt = value,
        Parameter::Points => {
            if value.fract() != 0.0 || value < 1.0 {
                return Err(format!("points must be a positive integer, got {value}"));
            }
            sc.points = value as usize;
        }
        Parameter::Amplitude => {
            sc.initial = sc
                .initial
                .with_amplitude(value)
                .ok_or_else(|| format!("cannot rescale the amplitude of `{}`", sc.initial))?;
        }
        Parameter::Sigma => sc.sigma = value,
    }
    if parameter == Parameter::Amplitude {
        sc.validate_without_smallness()?;
    } else {
        sc.validate()?;
    }
    Ok(sc)
}

#[derive(Clone, Debug, Serialize)]
pub struct MemberOutcome {
    pub value: f64,
    pub passed: bool,
    pub error: Option<String>,
    pub report: Option<RunReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantStability {
    pub check: Check,
    pub values: Vec<f64>,
    /// `max/min` over the members.
    pub spread: f64,
    pub within_10_percent: bool,
    pub within_factor_2: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AmplitudeThreshold {
    /// Largest amplitude whose run completed.
    pub stable: f64,
    /// Smallest amplitude whose run failed, if any did.
    pub unstable: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub scenario: String,
    pub parameter: Parameter,
    pub values: Vec<f64>,
    pub members: Vec<MemberOutcome>,
    /// Orders between consecutive members of a `dt` sweep, per identity check.
    pub orders: BTreeMap<String, Vec<f64>>,
    /// Least-squares order over all members of a `dt` sweep.
    pub fitted_orders: BTreeMap<String, f64>,
    pub constants: Vec<ConstantStability>,
    pub amplitude_threshold: Option<AmplitudeThreshold>,
    pub passed: bool,
}

fn run_member(sc: Result<Scenario, String>, value: f64, opts: &RunOptions) -> MemberOutcome {
    let result = sc.map_err(anyhow::Error::msg).and_then(|sc| run(&sc, opts));
    match result {
        Ok(report) => MemberOutcome { value, passed: report.passed, error: None, report: Some(report) },
        Err(e) => MemberOutcome { value, passed: false, error: Some(format!("{e:#}")), report: None },
    }
}

fn series(members: &[MemberOutcome], check: Check) -> Option<Vec<f64>> {
    members
        .iter()
        .map(|m| m.report.as_ref().and_then(|r| r.outcome(check)).map(|o| o.value))
        .collect()
}

fn stability(check: Check, values: Vec<f64>) -> ConstantStability {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let spread = if hi == 0.0 && lo == 0.0 {
        1.0
    } else if lo > 0.0 {
        hi / lo
    } else {
        f64::INFINITY
    };
    ConstantStability { check, values, spread, within_10_percent: spread <= 1.1, within_factor_2: spread < 2.0 }
}

/// Runs every member (concurrently, reported in grid order) under `out_dir/<template>/`,
/// then writes `sweep.json` and, for `dt` sweeps, one refinement chart per identity check.
pub fn sweep(template: &Scenario, variation: &Variation, opts: &RunOptions) -> Result<SweepReport> {
    if variation.values.is_empty() {
        bail!("empty parameter grid");
    }
    let dir = opts.out_dir.join(&template.name);
    let member_opts = RunOptions { out_dir: dir.clone(), ..opts.clone() };
    let p = variation.parameter;
    let members: Vec<MemberOutcome> = variation
        .values
        .par_iter()
        .enumerate()
        .map(|(k, &v)| run_member(vary(template, p, v, k), v, &member_opts))
        .collect();

    let mut orders = BTreeMap::new();
    let mut fitted_orders = BTreeMap::new();
    if p == Parameter::Dt && members.len() >= 2 {
        for check in [Check::Prop21, Check::Prop22] {
            let Some(res) = series(&members, check) else { continue };
            let dts = &variation.values;
            let pairwise: Vec<f64> = (1..res.len())
                .map(|k| (res[k - 1] / res[k]).ln() / (dts[k - 1] / dts[k]).ln())
                .collect();
            orders.insert(check.to_string(), pairwise);
            if let Ok((svg, slope)) = refinement_chart(&format!("{check} residual"), "dt", dts, &res) {
                fs::create_dir_all(&dir)?;
                fs::write(dir.join(format!("refinement_{check}.svg")), svg)?;
                fitted_orders.insert(check.to_string(), slope);
            }
        }
    }
    let constants = CONSTANT_CHECKS
        .iter()
        .filter_map(|&c| series(&members, c).map(|v| stability(c, v)))
        .collect();
    let amplitude_threshold = if p == Parameter::Amplitude {
        bisect_amplitude(template, &members, &member_opts)
    } else {
        None
    };
    let report = SweepReport {
        scenario: template.name.clone(),
        parameter: p,
        values: variation.values.clone(),
        passed: members.iter().all(|m| m.passed),
        members,
        orders,
        fitted_orders,
        constants,
        amplitude_threshold,
    };
    fs::create_dir_all(&dir)?;
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    fs::write(dir.join("sweep.json"), text)?;
    Ok(report)
}

/// Largest amplitude that completed and, if a larger one failed, a bisected bracket
/// around the transition.
fn bisect_amplitude(template: &Scenario, members: &[MemberOutcome], opts: &RunOptions) -> Option<AmplitudeThreshold> {
    let completed = |m: &MemberOutcome| m.report.is_some();
    let stable = members.iter().filter(|m| completed(m)).map(|m| m.value).fold(f64::NEG_INFINITY, f64::max);
    if !stable.is_finite() {
        return None;
    }
    let unstable = members
        .iter()
        .filter(|m| !completed(m) && m.value > stable)
        .map(|m| m.value)
        .fold(f64::INFINITY, f64::min);
    if !unstable.is_finite() {
        return Some(AmplitudeThreshold { stable, unstable: None });
    }
    let (mut lo, mut hi) = (stable, unstable);
    let bisect_opts = RunOptions { out_dir: opts.out_dir.join("bisection"), ..opts.clone() };
    for k in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        let m = run_member(vary(template, Parameter::Amplitude, mid, k), mid, &bisect_opts);
        if completed(&m) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(AmplitudeThreshold { stable: lo, unstable: Some(hi) })
}

/// Caps the global thread pool at `SEMIRELAX_THREADS` when set.
pub fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("SEMIRELAX_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| anyhow::anyhow!("SEMIRELAX_THREADS must be a positive integer, got `{v}`"))?;
        if n == 0 {
            bail!("SEMIRELAX_THREADS must be positive");
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

