//! Residuals of the dissipation identities, bound reports for the a priori
//! inequalities, the scaling law and ratio probes for the weighted estimates.

mod bounds;
mod identities;
mod probes;
mod record;
mod scaling;

pub use bounds::{check_h2_inequality, check_hs_growth, hs_growth_constant, BoundReport};
pub use identities::{check_h1_identity, check_l2_identity, IdentityResidual};
pub use probes::{strauss_ratio, weighted_strichartz_ratio};
pub use record::{diagnostics_table, write_csv, DiagnosticsRecord, CSV_HEADER};
pub use scaling::{
    check_scaling_law, critical_power, embedding_exponent_check, rescale_data, scaling_critical_exponent,
};

/// Trapezoid rule on `values` sampled at `times`, restricted to indices `i..=j`.
pub(crate) fn trapezoid(times: &[f64], values: &[f64], i: usize, j: usize) -> f64 {
    (i..j)
        .map(|k| 0.5 * (times[k + 1] - times[k]) * (values[k] + values[k + 1]))
        .sum()
}

/// Cumulative trapezoid integrals from the first sample.
pub(crate) fn cumulative_trapezoid(times: &[f64], values: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    out.push(0.0);
    for k in 1..values.len() {
        acc += 0.5 * (times[k] - times[k - 1]) * (values[k] + values[k - 1]);
        out.push(acc);
    }
    out
}

pub(crate) fn relative(residual: f64, a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        residual / scale
    }
}
