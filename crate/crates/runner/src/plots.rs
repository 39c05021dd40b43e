//! SVG line charts of the diagnostics CSV and log-log refinement charts.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 56.0;

/// Header and numeric rows of a diagnostics CSV.
pub fn read_csv(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut reader = csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let record = record?;
        let row = record
            .iter()
            .map(|v| v.parse::<f64>())
            .collect::<std::result::Result<Vec<f64>, _>>()
            .with_context(|| format!("{}: row {}", path.display(), k + 2))?;
        rows.push(row);
    }
    if rows.is_empty() {
        bail!("{} has no data rows", path.display());
    }
    Ok((header, rows))
}

fn range(values: &[f64]) -> (f64, f64) {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

fn frame(title: &str, x_label: &str, y_label: &str, (x0, x1): (f64, f64), (y0, y1): (f64, f64)) -> String {
    let mut svg = String::new();
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">{title}</text>\n\
         <line x1=\"{MARGIN}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <line x1=\"{MARGIN}\" y1=\"{MARGIN}\" x2=\"{MARGIN}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"12\">{x_label}</text>\n\
         <text x=\"14\" y=\"{}\" font-size=\"12\" transform=\"rotate(-90 14 {})\" text-anchor=\"middle\">{y_label}</text>\n\
         <text x=\"{MARGIN}\" y=\"{}\" font-size=\"10\">{x0:.4e}</text>\n\
         <text x=\"{r}\" y=\"{}\" font-size=\"10\" text-anchor=\"end\">{x1:.4e}</text>\n\
         <text x=\"{}\" y=\"{b}\" font-size=\"10\" text-anchor=\"end\">{y0:.4e}</text>\n\
         <text x=\"{}\" y=\"{MARGIN}\" font-size=\"10\" text-anchor=\"end\">{y1:.4e}</text>\n",
        WIDTH / 2.0,
        WIDTH / 2.0,
        HEIGHT - 8.0,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        HEIGHT - MARGIN + 14.0,
        HEIGHT - MARGIN + 14.0,
        MARGIN - 4.0,
        MARGIN - 4.0,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN,
    );
    svg
}

fn polyline(xs: &[f64], ys: &[f64], xr: (f64, f64), yr: (f64, f64)) -> String {
    let sx = (WIDTH - 2.0 * MARGIN) / (xr.1 - xr.0);
    let sy = (HEIGHT - 2.0 * MARGIN) / (yr.1 - yr.0);
    let points: Vec<String> = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| format!("{:.6},{:.6}", MARGIN + (x - xr.0) * sx, HEIGHT - MARGIN - (y - yr.0) * sy))
        .collect();
    format!("<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"{}\"/>\n", points.join(" "))
}

/// Line chart of `ys` against `xs` on linear axes.
pub fn line_chart(title: &str, x_label: &str, y_label: &str, xs: &[f64], ys: &[f64]) -> String {
    let (xr, yr) = (range(xs), range(ys));
    let mut svg = frame(title, x_label, y_label, xr, yr);
    svg.push_str(&polyline(xs, ys, xr, yr));
    svg.push_str("</svg>\n");
    svg
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        bail!("a slope needs at least two matching points");
    }
    if xs.iter().chain(ys).any(|v| !(*v > 0.0) || !v.is_finite()) {
        bail!("log-log fit needs positive finite values");
    }
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        bail!("log-log fit needs distinct abscissae");
    }
    Ok(sxy / sxx)
}

/// Log-log chart with the fitted slope written into the chart; returns the SVG and the slope.
pub fn refinement_chart(title: &str, x_label: &str, xs: &[f64], ys: &[f64]) -> Result<(String, f64)> {
    let slope = loglog_slope(xs, ys)?;
    let lx: Vec<f64> = xs.iter().map(|v| v.log10()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.log10()).collect();
    let (xr, yr) = (range(&lx), range(&ly));
    let mut svg = frame(title, &format!("log10 {x_label}"), "log10 residual", xr, yr);
    svg.push_str(&polyline(&lx, &ly, xr, yr));
    let _ = writeln!(
        svg,
        "<text class=\"slope\" x=\"{}\" y=\"{}\" font-size=\"14\" text-anchor=\"end\">slope = {slope:.9}</text>",
        WIDTH - MARGIN,
        MARGIN + 16.0
    );
    svg.push_str("</svg>\n");
    Ok((svg, slope))
}

/// One chart per CSV column against `t`, written to `out_dir/<column>.svg`.
pub fn emit_plots(csv_path: &Path, out_dir: &Path) -> Result<Vec<PathBuf>> {
    if !csv_path.exists() {
        bail!("missing diagnostics CSV {}", csv_path.display());
    }
    let (header, rows) = read_csv(csv_path)?;
    fs::create_dir_all(out_dir)?;
    let times: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    let mut written = Vec::new();
    for (k, name) in header.iter().enumerate().skip(1) {
        let ys: Vec<f64> = rows.iter().map(|r| r[k]).collect();
        let path = out_dir.join(format!("{name}.svg"));
        fs::write(&path, line_chart(name, "t", name, &times, &ys))?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_exact_power_law() {
        let xs = [1e-3, 5e-4, 2.5e-4];
        let ys: Vec<f64> = xs.iter().map(|x| 7.0 * x * x).collect();
        assert!((loglog_slope(&xs, &ys).unwrap() - 2.0).abs() < 1e-12);
        assert!(loglog_slope(&xs[..1], &ys[..1]).is_err());
        assert!(loglog_slope(&[1.0, 2.0], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn flat_series_still_plots() {
        let svg = line_chart("c", "t", "c", &[0.0, 1.0], &[2.0, 2.0]);
        assert!(svg.contains("<polyline") && svg.ends_with("</svg>\n"));
    }
}
