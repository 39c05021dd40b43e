//! Exact exponent bookkeeping behind `check-exponents`.

use std::fmt::Write as _;

use num_rational::Rational64;
use serde::Serialize;
use semirelax_core::spectral::exponents::{
    critical_power, critical_regularity, embedding_condition, embedding_threshold, Exponent, StrichartzExponents,
};

/// Spatial exponents tabulated when none are given.
pub const DEFAULT_R: [&str; 5] = ["3", "4", "6", "12", "inf"];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairRow {
    pub r: Exponent,
    /// The given `q`, or the one paired with `r` by the exponent relation.
    pub q: Option<Exponent>,
    pub admissible: bool,
    /// `3/4 + 1/(2r)`.
    pub threshold: String,
    /// `s > 3/4 + 1/(2r)`; `None` for `r ≤ 2`.
    pub above_threshold: Option<bool>,
    /// `q ≥ 4` and `s > 3/4 + 1/(2r)`: the Besov-valued `L^q` space embeds in `L⁴(L^∞)` in 2D.
    pub embedding: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentReport {
    pub n: i64,
    pub p: String,
    /// `s_{n,p} = n/2 - 1/(p-1)`.
    pub critical_regularity: String,
    pub s: String,
    /// `p_{n,s} = 1 + 2/(n-2s)`, when `s < n/2`.
    pub critical_power: Option<String>,
    pub rows: Vec<PairRow>,
}

fn paired_q(n: i64, r: Exponent) -> Option<Exponent> {
    let sigma = Rational64::from_integer(n - 1);
    let inv_q = sigma * (Rational64::new(1, 2) - r.reciprocal()) / 2;
    (inv_q >= Rational64::from_integer(0)).then(|| Exponent::from_reciprocal(inv_q))
}

/// Tabulates the critical exponents and, for each `r`, admissibility of `(q, r)` and the
/// embedding condition at `s` (default `s_{n,p}`).
pub fn exponent_report(
    n: i64,
    p: Rational64,
    s: Option<Rational64>,
    q: Option<Exponent>,
    rs: &[Exponent],
) -> semirelax_core::Result<ExponentReport> {
    let sc = critical_regularity(n, p)?;
    let s = s.unwrap_or(sc);
    let rows = rs
        .iter()
        .map(|&r| {
            let q = q.or_else(|| paired_q(n, r));
            let admissible = match q {
                Some(q) => StrichartzExponents::new(n, q, r).map(|e| e.is_admissible()).unwrap_or(false),
                None => false,
            };
            let above_threshold = embedding_condition(s, r).ok();
            let embedding = match (above_threshold, q) {
                (Some(above), Some(q)) => Some(above && q.reciprocal() <= Rational64::new(1, 4)),
                _ => None,
            };
            Ok(PairRow { r, q, admissible, threshold: embedding_threshold(r).to_string(), above_threshold, embedding })
        })
        .collect::<semirelax_core::Result<Vec<_>>>()?;
    Ok(ExponentReport {
        n,
        p: p.to_string(),
        critical_regularity: sc.to_string(),
        s: s.to_string(),
        critical_power: critical_power(n, s).ok().map(|v| v.to_string()),
        rows,
    })
}

impl ExponentReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n = {}, p = {}", self.n, self.p);
        let _ = writeln!(out, "s_(n,p) = n/2 - 1/(p-1) = {}", self.critical_regularity);
        match &self.critical_power {
            Some(v) => {
                let _ = writeln!(out, "p_(n,s) = 1 + 2/(n-2s) = {v}  (s = {})", self.s);
            }
            None => {
                let _ = writeln!(out, "p_(n,s) undefined for s = {} >= n/2", self.s);
            }
        }
        let _ = writeln!(
            out,
            "{:<8}{:<8}{:<12}{:<12}{:<20}q >= 4 and above",
            "r", "q", "admissible", "threshold", "s > 3/4 + 1/(2r)"
        );
        let verdict = |v: Option<bool>| v.map_or("n/a (r <= 2)".to_string(), |b| b.to_string());
        for row in &self.rows {
            let q = row.q.map_or("-".to_string(), |q| q.to_string());
            let _ = writeln!(
                out,
                "{:<8}{:<8}{:<12}{:<12}{:<20}{}",
                row.r.to_string(),
                q,
                row.admissible,
                row.threshold,
                verdict(row.above_threshold),
                verdict(row.embedding)
            );
        }
        out
    }
}
