use std::io::Write;

use serde::Serialize;

use super::cumulative_trapezoid;
use super::identities::{gradient_dissipation, lpp1, IdentityResidual};
use crate::error::Result;
use crate::propagator::Trajectory;
use crate::spectral::{fmt_f64, lp_norm, sobolev_norm, SobolevSpec};

pub const CSV_HEADER: &str = "t,l2,h1dot,h2dot,hs,linf,lpp1_budget,res_prop21,res_prop22";

/// Norms at one snapshot plus the running identity residuals on `[0, t]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagnosticsRecord {
    pub time: f64,
    pub l2: f64,
    pub h1dot: f64,
    pub h2dot: f64,
    pub hs: f64,
    pub linf: f64,
    /// `‖u(t)‖^{p+1}_{L^{p+1}}`.
    pub lpp1: f64,
    /// `2κ∫₀ᵗ‖u‖^{p+1}_{L^{p+1}}`, the mass dissipated so far.
    pub lpp1_budget: f64,
    /// Relative residual of the mass identity on `[0, t]`.
    pub res_l2: f64,
    /// Relative residual of the gradient identity on `[0, t]`.
    pub res_h1: f64,
}

/// One record per snapshot; `s` is the scenario's homogeneous Sobolev index.
pub fn diagnostics_table(traj: &Trajectory, s: f64) -> Result<Vec<DiagnosticsRecord>> {
    let cfg = traj.config();
    let p = cfg.p;
    let kappa = cfg.coupling;
    let (h1, h2, hs_spec) = (
        SobolevSpec::homogeneous(1.0),
        SobolevSpec::homogeneous(2.0),
        SobolevSpec::homogeneous(s),
    );
    let mut rows = Vec::with_capacity(traj.len());
    let mut budget = Vec::with_capacity(traj.len());
    let mut grad = Vec::with_capacity(traj.len());
    let mut modulus = Vec::with_capacity(traj.len());
    for (&t, u) in traj.times().iter().zip(traj.snapshots()) {
        let q = lpp1(u, p);
        let (a, b) = gradient_dissipation(u, p);
        budget.push(q);
        grad.push(a);
        modulus.push(b);
        rows.push(DiagnosticsRecord {
            time: t,
            l2: lp_norm(u, 2.0)?,
            h1dot: sobolev_norm(u, h1)?,
            h2dot: sobolev_norm(u, h2)?,
            hs: sobolev_norm(u, hs_spec)?,
            linf: lp_norm(u, f64::INFINITY)?,
            lpp1: q,
            lpp1_budget: 0.0,
            res_l2: 0.0,
            res_h1: 0.0,
        });
    }
    let times = traj.times();
    let cb = cumulative_trapezoid(times, &budget);
    let cg = cumulative_trapezoid(times, &grad);
    let cm = cumulative_trapezoid(times, &modulus);
    let (m0, g0) = (rows[0].l2.powi(2), rows[0].h1dot.powi(2));
    for (k, row) in rows.iter_mut().enumerate() {
        row.lpp1_budget = 2.0 * kappa * cb[k];
        if k == 0 {
            continue;
        }
        row.res_l2 = IdentityResidual::new(row.l2.powi(2) + row.lpp1_budget, m0, true, Vec::new()).relative;
        let lhs = row.h1dot.powi(2) + 2.0 * kappa * cg[k] + 0.5 * (p - 1.0) * kappa * cm[k];
        row.res_h1 = IdentityResidual::new(lhs, g0, true, Vec::new()).relative;
    }
    Ok(rows)
}

/// Writes the records as CSV with [`CSV_HEADER`], floats at 17 significant digits.
pub fn write_csv<W: Write>(records: &[DiagnosticsRecord], mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        let cols = [r.time, r.l2, r.h1dot, r.h2dot, r.hs, r.linf, r.lpp1_budget, r.res_l2, r.res_h1];
        let line: Vec<String> = cols.iter().map(|&v| fmt_f64(v)).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}
