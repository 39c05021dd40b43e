use std::path::{Path, PathBuf};

use semirelax::{load_config, parse_config, Check, ConfigError, InitialData, Solver};

fn catalog() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalog.toml")
}

fn parse(text: &str) -> Result<Vec<semirelax::Scenario>, ConfigError> {
    parse_config(text, Path::new("."))
}

#[test]
fn catalog_has_six_valid_scenarios() {
    let scenarios = load_config(catalog()).unwrap();
    let names: Vec<&str> = scenarios.iter().map(|s| s.name.as_str()).collect();
    assert_eq!(
        names,
        ["p11_1d_cubic", "p11_1d_quadratic", "p12_2d_cubic", "p13_3d_radial", "p14_3d_critical", "r3_radial_probes"]
    );
    for sc in &scenarios {
        sc.validate().unwrap();
        assert!(!sc.checks.is_empty(), "{}", sc.name);
    }
    let cubic = &scenarios[0];
    assert_eq!((cubic.n, cubic.points, cubic.length), (1, 256, 40.0));
    assert_eq!(cubic.dt, 1e-3);
    assert_eq!(cubic.t_final, 1.0);
    let critical = &scenarios[4];
    assert_eq!(critical.solver, Solver::Both);
    assert!(critical.initial_h1().unwrap() <= semirelax::config::SMALL_DATA_H1);
}

#[test]
fn empty_and_comment_only_files() {
    assert!(parse("").unwrap().is_empty());
    assert!(parse("# nothing here\n\n").unwrap().is_empty());
}

#[test]
fn subcritical_bound_cites_check_and_power() {
    let text = "[scenario.bad]\nn = 3\np = 4\ninitial = \"gaussian(0.1, 1, 0)\"\ndt = 0.01\nt_final = 0.1\nchecks = [\"prop13\"]\n";
    let err = parse(text).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("prop13"), "{msg}");
    assert!(msg.contains("p < p_(n,1)"), "{msg}");
    assert!(msg.contains("= 3"), "{msg}");
    assert!(matches!(err, ConfigError::Invalid { line: 1, .. }));
}

#[test]
fn hs_growth_needs_s_above_half_dimension() {
    let text = "[scenario.a]\nn = 1\np = 3\ninitial = \"gaussian(1, 1, 0)\"\ndt = 0.01\nt_final = 0.1\n\n\
                [scenario.b]\nn = 2\np = 3\ns = 1\ninitial = \"gaussian(1, 1, 0)\"\ndt = 0.01\nt_final = 0.1\nchecks = [\"prop23\"]\n";
    let err = parse(text).unwrap_err();
    assert!(matches!(err, ConfigError::Invalid { line: 8, .. }), "{err:?}");
    assert!(err.to_string().contains("n/2 < s"), "{err}");
}

#[test]
fn critical_regime_needs_small_radial_cubic_data() {
    let base = "n = 3\ndt = 0.05\nt_final = 0.5\nchecks = [\"prop14\"]\n";
    for (extra, needle) in [
        ("p = 3\ninitial = \"gaussian(1, 1, 0)\"\n", "0.1"),
        ("p = 2\ninitial = \"gaussian(0.01, 1, 0)\"\n", "p_(3,1)"),
        ("p = 3\ninitial = \"gaussian(0.01, 1, 0.5)\"\n", "radial"),
    ] {
        let err = parse(&format!("[scenario.x]\n{base}{extra}")).unwrap_err();
        assert!(err.to_string().contains(needle), "{err}");
    }
    assert!(parse(&format!("[scenario.x]\n{base}p = 3\ninitial = \"gaussian(0.01, 1, 0)\"\n")).is_ok());
}

#[test]
fn radial_solver_requirements() {
    let ok = "[scenario.r]\nn = 3\np = 3\ninitial = \"gaussian(1, 1, 0)\"\nradius = 10\ndt = 0.1\nt_final = 1\nsolver = \"radial-wave\"\nchecks = [\"hardy\"]\n";
    assert!(parse(ok).is_ok());
    assert!(parse(&ok.replace("n = 3", "n = 2")).is_err());
    assert!(parse(&ok.replace("t_final = 1", "t_final = 10")).is_err());
    assert!(parse(&ok.replace("solver = \"radial-wave\"\n", "")).is_err());
    assert!(parse(&ok.replace("\"hardy\"", "\"equivalence\"")).is_err());
}

#[test]
fn unknown_check_and_key_are_parse_errors() {
    let text = "[scenario.x]\nn = 1\np = 3\ninitial = \"gaussian(1, 1, 0)\"\ndt = 0.01\nt_final = 0.1\nchecks = [\"prop99\"]\n";
    assert!(parse(text).unwrap_err().to_string().contains("prop99"));
    let text = "[scenario.x]\nn = 1\np = 3\nwidth = 2\n";
    assert!(matches!(parse(text).unwrap_err(), ConfigError::Parse { line: 4, .. }));
}

#[test]
fn missing_file_is_an_io_error() {
    assert!(matches!(load_config("/nonexistent/catalog.toml"), Err(ConfigError::Io { .. })));
}

#[test]
fn file_data_resolves_against_config_directory() {
    let dir = tempfile::tempdir().unwrap();
    let text = "[scenario.f]\nn = 1\np = 3\ninitial = \"file(u0.field)\"\ndt = 0.01\nt_final = 0.1\n";
    std::fs::write(dir.path().join("c.toml"), text).unwrap();
    let sc = load_config(dir.path().join("c.toml")).unwrap().remove(0);
    assert_eq!(sc.initial, InitialData::File(dir.path().join("u0.field")));
}

#[test]
fn check_ids_round_trip() {
    for c in Check::ALL {
        assert_eq!(c.id().parse::<Check>().unwrap(), c);
    }
    assert_eq!(Check::ALL.len(), 16);
}
