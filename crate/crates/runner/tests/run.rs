use std::fs;
use std::path::Path;

use semirelax::run::{CSV_NAME, REPORT_NAME};
use semirelax::{load_config, parse_config, run, Check, RunOptions, Scenario};

fn scenario(text: &str) -> Scenario {
    parse_config(text, Path::new(".")).unwrap().remove(0)
}

fn opts(dir: &Path) -> RunOptions {
    RunOptions { out_dir: dir.to_path_buf(), deterministic: true, plots: false }
}

#[test]
fn zero_amplitude_passes_with_vanishing_residuals() {
    let sc = scenario(
        "[scenario.zero]\nn = 1\np = 3\ns = 1.5\ninitial = \"gaussian(0, 1, 0)\"\ndt = 0.01\nt_final = 0.2\n\
         checks = [\"prop11\", \"prop21\", \"prop22\", \"prop23\", \"prop24\", \"scaling\"]\n",
    );
    let dir = tempfile::tempdir().unwrap();
    let report = run(&sc, &opts(dir.path())).unwrap();
    assert!(report.passed);
    assert_eq!(report.checks.len(), sc.checks.len());
    for c in &report.checks {
        assert_eq!(c.value, 0.0, "{}", c.check);
    }
}

#[test]
fn every_requested_check_gets_an_entry_and_a_file() {
    let sc = scenario(
        "[scenario.small]\nn = 2\np = 3\ns = 0.8\npoints = 32\nlength = 16\ninitial = \"gaussian(0.5, 1, 0)\"\ndt = 0.01\nt_final = 0.1\n\
         checks = [\"prop12\", \"prop21\", \"prop24\", \"strauss\", \"weighted_strichartz\"]\n",
    );
    let dir = tempfile::tempdir().unwrap();
    let report = run(&sc, &RunOptions { plots: true, ..opts(dir.path()) }).unwrap();
    let out = dir.path().join("small");
    for &c in &sc.checks {
        assert!(report.outcome(c).is_some(), "{c}");
        assert!(out.join(format!("{c}.json")).exists(), "{c}");
    }
    assert!(out.join(CSV_NAME).exists());
    assert!(out.join("plots").join("l2.svg").exists());
    let echoed: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join(REPORT_NAME)).unwrap()).unwrap();
    assert_eq!(echoed["scenario"]["name"], "small");
    assert_eq!(echoed["csv"], CSV_NAME);
    assert!(echoed["wall_time"].is_null());
}

#[test]
fn cubic_catalog_scenario_meets_identity_threshold() {
    let catalog = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalog.toml");
    let sc = load_config(catalog).unwrap().into_iter().find(|s| s.name == "p11_1d_cubic").unwrap();
    let dir = tempfile::tempdir().unwrap();
    let report = run(&sc, &opts(dir.path())).unwrap();
    assert!(report.passed);
    assert!(report.outcome(Check::Prop21).unwrap().value < 1e-6);
    assert!(report.outcome(Check::Prop22).unwrap().value < 1e-5);
}

#[test]
fn explicit_wave_marching_reports_the_blow_up_step() {
    let text = "[scenario.blow]\nn = 3\np = 3\ninitial = \"gaussian(3, 1, 0)\"\nsamples = 128\nradius = 10\ndt = 0.5\nt_final = 5\n\
                solver = \"radial-wave\"\nchecks = [\"strauss\"]\n";
    let dir = tempfile::tempdir().unwrap();
    let err = run(&scenario(text), &opts(dir.path())).unwrap_err();
    let core = err.chain().find_map(|e| e.downcast_ref::<semirelax_core::Error>()).expect("solver error");
    assert!(matches!(core, semirelax_core::Error::NonFinite { step: 5, .. }), "{core:?}");
    let msg = format!("{err:#}");
    assert!(msg.contains("scenario `blow`") && msg.contains("step 5"), "{msg}");

    let stable = text.replace("dt = 0.5", "dt = 0.01");
    assert!(run(&scenario(&stable), &opts(dir.path())).unwrap().passed);
}

#[test]
fn rescaled_data_runs_on_the_compressed_grid() {
    let text = "[scenario.s]\nn = 1\np = 3\ns = 1.5\ninitial = \"gaussian(1, 1, 0)\"\nsigma = 2\ndt = 0.01\nt_final = 0.1\nchecks = [\"scaling\", \"prop21\"]\n";
    let sc = scenario(text);
    assert_eq!(sc.grid().unwrap().period(), 20.0);
    let dir = tempfile::tempdir().unwrap();
    let report = run(&sc, &opts(dir.path())).unwrap();
    assert!(report.outcome(Check::Scaling).unwrap().value < 1e-8);
}
