//! Executes one scenario: solver dispatch, requested checks and report files.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};
use semirelax_core::diagnostics::{
    check_h1_identity, check_h2_inequality, check_hs_growth, check_l2_identity, check_scaling_law, diagnostics_table,
    hs_growth_constant, rescale_data, strauss_ratio, weighted_strichartz_ratio, write_csv, BoundReport,
};
use semirelax_core::propagator::{evolve, Trajectory};
use semirelax_core::radial::{
    axis_discrepancy, duhamel_maximal_check, hardy_time_derivative_check, maximal_bound_check, maximal_domination,
    radial_l2_norm, radial_sobolev_norm, radial_strauss_ratio, wave_evolve, RadialProfile, RadialTrajectory,
    WaveConfig,
};
use semirelax_core::spectral::{set_parallel, sobolev_norm, Field, SobolevSpec};

use crate::config::{Check, Scenario};
use crate::plots::emit_plots;

/// Weight parameter `δ` and time exponent `q₁` of the weighted space-time probe.
pub const WEIGHT_DELTA: f64 = 0.5;
pub const WEIGHT_Q: f64 = 4.0;

/// Scale factors used by the scaling check.
pub const SCALING_FACTORS: [f64; 2] = [0.5, 2.0];

pub const CSV_NAME: &str = "diagnostics.csv";
pub const REPORT_NAME: &str = "report.json";

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    pub deterministic: bool,
    pub plots: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub check: Check,
    pub passed: bool,
    /// Headline number: a relative residual, a slack or an empirical constant.
    pub value: f64,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub scenario: Scenario,
    /// Diagnostics CSV, relative to the report directory.
    pub csv: Option<String>,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
    /// Seconds; `None` in deterministic mode.
    pub wall_time: Option<f64>,
}

impl RunReport {
    pub fn outcome(&self, check: Check) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.check == check)
    }
}

struct Solutions {
    spectral: Option<Trajectory>,
    radial: Option<RadialTrajectory>,
    u0: Option<Field>,
    f0: Option<RadialProfile>,
}

fn bound(check: Check, report: BoundReport, passed: bool, value: f64) -> CheckOutcome {
    CheckOutcome { check, passed, value, detail: serde_json::to_value(report).expect("bound reports serialize") }
}

fn finite_constant(check: Check, report: BoundReport) -> CheckOutcome {
    let value = report.empirical_constant.unwrap_or(0.0);
    let passed = report.lhs.is_finite() && report.rhs.is_finite() && value.is_finite();
    bound(check, report, passed, value)
}

fn h1_of(f: &Field) -> Result<f64> {
    Ok(sobolev_norm(f, SobolevSpec::inhomogeneous(1.0))?)
}

fn radial_h1(f: &RadialProfile) -> f64 {
    radial_l2_norm(f).hypot(radial_sobolev_norm(f, 1.0))
}

/// Global-regime check: the run completed with finite data and `‖u(t)‖_{H¹}` never grew.
fn regime(check: Check, sol: &Solutions) -> Result<CheckOutcome> {
    let norms: Vec<f64> = match (&sol.spectral, &sol.radial) {
        (Some(t), _) => t.snapshots().iter().map(h1_of).collect::<Result<_>>()?,
        (None, Some(r)) => r.profiles.iter().map(radial_h1).collect(),
        (None, None) => unreachable!("validated scenarios run a solver"),
    };
    let first = norms[0];
    let growth = norms.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
    let finite = norms.iter().all(|v| v.is_finite());
    let passed = finite && growth <= 1e-8 * first;
    let last = *norms.last().expect("trajectories hold the initial state");
    Ok(CheckOutcome {
        check,
        passed,
        value: if first == 0.0 { 0.0 } else { last / first },
        detail: json!({ "h1_initial": first, "h1_final": last, "max_step_growth": growth.max(0.0) }),
    })
}

fn evaluate(check: Check, sc: &Scenario, sol: &Solutions) -> Result<CheckOutcome> {
    let t_end = sc.t_final;
    let spectral = || sol.spectral.as_ref().expect("validated: spectral solver present");
    let profile = || sol.f0.as_ref().expect("validated: radial solver present");
    let tol = &sc.tolerances;
    Ok(match check {
        Check::Prop11 | Check::Prop12 | Check::Prop13 | Check::Prop14 => regime(check, sol)?,
        Check::Prop21 | Check::Prop22 => {
            let (r, tol) = if check == Check::Prop21 {
                (check_l2_identity(spectral(), 0.0, t_end)?, tol.prop21)
            } else {
                (check_h1_identity(spectral(), 0.0, t_end)?, tol.prop22)
            };
            CheckOutcome { check, passed: r.relative < tol, value: r.relative, detail: serde_json::to_value(&r)? }
        }
        Check::Prop23 => {
            let c = hs_growth_constant(spectral(), sc.s)?;
            let report = BoundReport { empirical_constant: Some(c), ..check_hs_growth(spectral(), sc.s, c)? };
            let holds = report.holds(1e-12);
            let mut outcome = finite_constant(check, report);
            outcome.passed &= holds;
            outcome
        }
        Check::Prop24 => {
            let r = check_h2_inequality(spectral(), 0.0, t_end)?;
            let slack = r.residual;
            bound(check, r.clone(), r.holds(1e-12), slack)
        }
        Check::Scaling => {
            let u0 = sol.u0.as_ref().expect("validated: spectral solver present");
            let mut worst = 0.0f64;
            let mut rows = Vec::new();
            for sigma in SCALING_FACTORS {
                let r = check_scaling_law(u0, sigma, sc.s, sc.p)?;
                worst = worst.max(r.relative);
                rows.push(json!({ "sigma": sigma, "residual": r }));
            }
            CheckOutcome { check, passed: worst < tol.scaling, value: worst, detail: Value::Array(rows) }
        }
        Check::Strauss => {
            let ratio = match &sol.u0 {
                Some(u0) => strauss_ratio(u0, sc.s)?,
                None => radial_strauss_ratio(profile(), sc.s)?,
            };
            CheckOutcome { check, passed: ratio.is_finite(), value: ratio, detail: json!({ "ratio": ratio, "s": sc.s }) }
        }
        Check::WeightedStrichartz => {
            let u0 = sol.u0.as_ref().expect("validated: spectral solver present");
            let cfg = sc.stepper_config()?.with_coupling(0.0);
            let linear = evolve(u0, &cfg)?;
            let ratio = weighted_strichartz_ratio(&linear, WEIGHT_DELTA, WEIGHT_Q)?;
            CheckOutcome {
                check,
                passed: ratio.is_finite(),
                value: ratio,
                detail: json!({ "ratio": ratio, "delta": WEIGHT_DELTA, "q1": WEIGHT_Q }),
            }
        }
        Check::Maximal => {
            let f = profile();
            let samples: Vec<f64> = f.values().iter().map(|z| z.norm()).collect();
            let mut worst = f64::NEG_INFINITY;
            if samples.iter().any(|v| *v != 0.0) {
                for c in 0..samples.len() {
                    let r = maximal_domination(&samples, f.spacing(), c)?;
                    worst = worst.max(r.lhs - r.rhs);
                }
            } else {
                worst = 0.0;
            }
            CheckOutcome { check, passed: worst <= tol.maximal, value: worst, detail: json!({ "max_excess": worst }) }
        }
        Check::MaximalBound => finite_constant(check, maximal_bound_check(profile(), t_end)?),
        Check::Duhamel => finite_constant(check, duhamel_maximal_check(profile(), |t| (-t).exp(), t_end)?),
        Check::Hardy => {
            if profile().max_abs() == 0.0 {
                bound(check, BoundReport::new(0.0, 0.0, None), true, 0.0)
            } else {
                finite_constant(check, hardy_time_derivative_check(profile())?)
            }
        }
        Check::Equivalence => {
            let (a, b) = (spectral(), sol.radial.as_ref().expect("validated: both solvers"));
            let mut errs = Vec::with_capacity(b.times.len());
            for (k, f) in b.profiles.iter().enumerate() {
                errs.push(axis_discrepancy(f, &a.snapshots()[k])?);
            }
            let worst = errs.iter().copied().fold(0.0, f64::max);
            CheckOutcome {
                check,
                passed: worst < tol.equivalence,
                value: worst,
                detail: json!({ "times": b.times, "relative_linf": errs }),
            }
        }
    })
}

fn solve(sc: &Scenario) -> Result<Solutions> {
    let mut sol = Solutions { spectral: None, radial: None, u0: None, f0: None };
    if sc.solver.spectral() {
        let base = sc.initial.field(&semirelax_core::spectral::Grid::new(sc.n, sc.points, sc.length)?)?;
        let u0 = if sc.sigma == 1.0 { base } else { rescale_data(&base, sc.sigma, sc.p)? };
        sol.spectral = Some(evolve(&u0, &sc.stepper_config()?)?);
        sol.u0 = Some(u0);
    }
    if sc.solver.radial() {
        let f0 = sc.initial.radial(sc.radius, sc.samples)?;
        let cfg = WaveConfig::new(sc.p, sc.dt, sc.t_final)?
            .with_coupling(sc.coupling)
            .with_stride(sc.stride);
        sol.radial = Some(wave_evolve(&f0, &cfg)?);
        sol.f0 = Some(f0);
    }
    Ok(sol)
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Runs the scenario and writes `<out>/<name>/`: the diagnostics CSV, one JSON
/// per check and the run report.
pub fn run(sc: &Scenario, opts: &RunOptions) -> Result<RunReport> {
    let start = Instant::now();
    if opts.deterministic {
        set_parallel(false);
    }
    let ctx = || format!("scenario `{}`", sc.name);
    let dir = opts.out_dir.join(&sc.name);
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let sol = solve(sc).with_context(ctx)?;
    let csv = match &sol.spectral {
        Some(traj) => {
            let table = diagnostics_table(traj, sc.s).with_context(ctx)?;
            let mut buf = Vec::new();
            write_csv(&table, &mut buf)?;
            fs::write(dir.join(CSV_NAME), buf)?;
            Some(CSV_NAME.to_string())
        }
        None => None,
    };
    let mut checks = Vec::with_capacity(sc.checks.len());
    for &check in &sc.checks {
        let outcome = evaluate(check, sc, &sol).with_context(|| format!("{}: check `{check}`", ctx()))?;
        write_json(&dir.join(format!("{check}.json")), &outcome)?;
        checks.push(outcome);
    }
    let report = RunReport {
        scenario: sc.clone(),
        csv,
        passed: checks.iter().all(|c| c.passed),
        checks,
        wall_time: (!opts.deterministic).then(|| start.elapsed().as_secs_f64()),
    };
    write_json(&dir.join(REPORT_NAME), &report)?;
    if opts.plots && report.csv.is_some() {
        emit_plots(&dir.join(CSV_NAME), &dir.join("plots"))?;
    }
    Ok(report)
}

