use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand};
use semirelax::exponents::{exponent_report, DEFAULT_R};
use semirelax::sweep::configure_threads;
use semirelax::{load_config, run, sweep, RunOptions, Scenario, Variation};
use semirelax_core::spectral::exponents::{parse_rational, Exponent};

#[derive(Parser)]
#[command(name = "semirelax", version, about = "Dissipative semirelativistic solver and verification suite")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run catalog scenarios and evaluate their checks.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        scenario: Option<String>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Single-threaded, no timings: outputs are byte-identical across runs.
        #[arg(long)]
        deterministic: bool,
        #[arg(long)]
        plots: bool,
    },
    /// Run one scenario over a parameter grid, e.g. `--vary dt=1e-3,5e-4,2.5e-4`.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        scenario: Option<String>,
        #[arg(long)]
        vary: Variation,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long)]
        deterministic: bool,
    },
    /// Print critical exponents, admissible pairs and embedding verdicts.
    CheckExponents {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        p: String,
        /// Regularity; defaults to s_(n,p).
        #[arg(long)]
        s: Option<String>,
        /// Fixed time exponent; by default each r is paired through the admissibility relation.
        #[arg(long)]
        q: Option<String>,
        /// Spatial exponents, e.g. `--r 4 --r inf`.
        #[arg(long)]
        r: Vec<String>,
        #[arg(long)]
        json: bool,
    },
}

fn select(scenarios: Vec<Scenario>, name: Option<&str>) -> Result<Vec<Scenario>> {
    match name {
        None => Ok(scenarios),
        Some(name) => {
            let known: Vec<String> = scenarios.iter().map(|s| s.name.clone()).collect();
            match scenarios.into_iter().find(|s| s.name == name) {
                Some(s) => Ok(vec![s]),
                None => bail!("no scenario `{name}`; available: {}", known.join(", ")),
            }
        }
    }
}

fn execute(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Run { config, scenario, out, deterministic, plots } => {
            let scenarios = select(load_config(&config)?, scenario.as_deref())?;
            let opts = RunOptions { out_dir: out, deterministic, plots };
            let mut all = true;
            for sc in &scenarios {
                let report = run(sc, &opts)?;
                for c in &report.checks {
                    println!(
                        "{:<24} {:<20} {} value={:.6e}",
                        sc.name,
                        c.check.id(),
                        if c.passed { "PASS" } else { "FAIL" },
                        c.value
                    );
                }
                all &= report.passed;
            }
            Ok(all)
        }
        Command::Sweep { config, scenario, vary, out, deterministic } => {
            let scenarios = load_config(&config)?;
            let template = match scenario.as_deref() {
                Some(_) => select(scenarios, scenario.as_deref())?.remove(0),
                None if scenarios.len() == 1 => scenarios.into_iter().next().expect("one scenario"),
                None => bail!("the config holds {} scenarios; pick one with --scenario", scenarios.len()),
            };
            let opts = RunOptions { out_dir: out, deterministic, plots: false };
            let report = sweep(&template, &vary, &opts)?;
            for m in &report.members {
                match &m.error {
                    Some(e) => println!("{} = {:e}: ERROR {e}", vary.parameter, m.value),
                    None => println!("{} = {:e}: {}", vary.parameter, m.value, if m.passed { "PASS" } else { "FAIL" }),
                }
            }
            for (check, order) in &report.fitted_orders {
                println!("{check}: fitted order {order:.3}");
            }
            for c in &report.constants {
                println!("{}: constant spread {:.4}", c.check.id(), c.spread);
            }
            if let Some(t) = &report.amplitude_threshold {
                match t.unstable {
                    Some(hi) => println!("largest completed amplitude {} (first failure at {hi})", t.stable),
                    None => println!("largest completed amplitude {} (no failure in the grid)", t.stable),
                }
            }
            Ok(report.passed)
        }
        Command::CheckExponents { n, p, s, q, r, json } => {
            let p = parse_rational(&p)?;
            let s = s.as_deref().map(parse_rational).transpose()?;
            let q = q.as_deref().map(str::parse::<Exponent>).transpose()?;
            let rs: Vec<String> = if r.is_empty() { DEFAULT_R.iter().map(|v| v.to_string()).collect() } else { r };
            let rs = rs.iter().map(|v| v.parse::<Exponent>()).collect::<Result<Vec<_>, _>>()?;
            let report = exponent_report(n, p, s, q, &rs)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{}", report.to_text());
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
