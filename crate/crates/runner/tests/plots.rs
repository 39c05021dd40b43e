use std::fs;

use semirelax::plots::{emit_plots, line_chart, loglog_slope, read_csv, refinement_chart};

fn polyline_ys(svg: &str) -> Vec<f64> {
    let start = svg.find("points=\"").expect("polyline") + 8;
    let end = start + svg[start..].find('"').unwrap();
    svg[start..end]
        .split_whitespace()
        .map(|pair| pair.split_once(',').unwrap().1.parse().unwrap())
        .collect()
}

#[test]
fn empty_or_missing_csv_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "").unwrap();
    assert!(emit_plots(&empty, dir.path()).is_err());
    let header_only = dir.path().join("header.csv");
    fs::write(&header_only, "t,l2\n").unwrap();
    assert!(read_csv(&header_only).is_err());
    assert!(emit_plots(&dir.path().join("absent.csv"), dir.path()).is_err());
}

#[test]
fn decreasing_series_gives_nonincreasing_polyline() {
    let ts: Vec<f64> = (0..50).map(|k| k as f64 * 0.02).collect();
    let l2: Vec<f64> = ts.iter().map(|t| (1.0 + t).recip()).collect();
    let svg = line_chart("l2", "t", "l2", &ts, &l2);
    let ys = polyline_ys(&svg);
    assert_eq!(ys.len(), 50);
    // SVG y grows downwards, so a nonincreasing value maps to a nondecreasing coordinate.
    assert!(ys.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn csv_columns_each_get_a_chart() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("d.csv");
    fs::write(&csv, "t,l2,h1dot\n0,1,2\n0.5,0.9,1.5\n1,0.8,1.2\n").unwrap();
    let written = emit_plots(&csv, &dir.path().join("plots")).unwrap();
    let names: Vec<String> = written.iter().map(|p| p.file_name().unwrap().to_string_lossy().into_owned()).collect();
    assert_eq!(names, ["l2.svg", "h1dot.svg"]);
    let ys = polyline_ys(&fs::read_to_string(&written[0]).unwrap());
    assert!(ys.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn slope_annotation_matches_least_squares_fit() {
    // Synthetic order-2 data with a small perturbation; oracle slope from the normal equations.
    let dts = [4e-3, 2e-3, 1e-3, 5e-4, 2.5e-4];
    let noise = [1.01, 0.995, 1.003, 0.998, 1.0];
    let res: Vec<f64> = dts.iter().zip(noise).map(|(d, e)| 3.0 * d * d * e).collect();
    let lx: Vec<f64> = dts.iter().map(|v: &f64| v.ln()).collect();
    let ly: Vec<f64> = res.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / 5.0;
    let my = ly.iter().sum::<f64>() / 5.0;
    let oracle = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / lx.iter().map(|x| (x - mx).powi(2)).sum::<f64>();

    let (svg, slope) = refinement_chart("prop21 residual", "dt", &dts, &res).unwrap();
    assert!((slope - oracle).abs() < 1e-6);
    assert!((slope - 2.0).abs() < 0.02);
    let at = svg.find("slope = ").unwrap() + 8;
    let shown: f64 = svg[at..at + svg[at..].find('<').unwrap()].parse().unwrap();
    assert!((shown - oracle).abs() < 1e-6);

    assert!(loglog_slope(&[1.0], &[1.0]).is_err());
    assert!(loglog_slope(&[1.0, 2.0], &[0.0, 1.0]).is_err());
}
