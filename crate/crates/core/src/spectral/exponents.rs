//! Exact exponent bookkeeping with rational arithmetic.
//!
//! Lebesgue exponents are stored through their reciprocals so that `∞` is simply `1/∞ = 0`.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A Lebesgue exponent in `[1, ∞]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exponent {
    Finite(Rational64),
    Infinite,
}

impl Exponent {
    pub fn integer(v: i64) -> Self {
        Exponent::Finite(Rational64::from_integer(v))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Exponent::Finite(Rational64::new(num, den))
    }

    /// Builds the exponent whose reciprocal is `inv` (`0` gives `∞`).
    pub fn from_reciprocal(inv: Rational64) -> Self {
        if inv == Rational64::from_integer(0) {
            Exponent::Infinite
        } else {
            Exponent::Finite(inv.recip())
        }
    }

    pub fn reciprocal(&self) -> Rational64 {
        match self {
            Exponent::Finite(v) => v.recip(),
            Exponent::Infinite => Rational64::from_integer(0),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Exponent::Finite(v) => *v.numer() as f64 / *v.denom() as f64,
            Exponent::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinite)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(v) => write!(f, "{v}"),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        if matches!(t, "inf" | "infinity" | "∞") {
            return Ok(Exponent::Infinite);
        }
        parse_rational(t).map(Exponent::Finite)
    }
}

/// Parses `a`, `a/b` or a finite decimal such as `1.25` exactly.
pub fn parse_rational(text: &str) -> Result<Rational64> {
    let bad = || Error::InvalidExponent(format!("cannot read {text:?} as a rational number"));
    let t = text.trim();
    if let Some((a, b)) = t.split_once('/') {
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        if b == 0 {
            return Err(bad());
        }
        return Ok(Rational64::new(a, b));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.len() > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_val: i64 = if int.is_empty() || int == "-" { 0 } else { int.parse().map_err(|_| bad())? };
        let den = 10i64.pow(frac.len() as u32);
        let frac_val: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let mag = int_val.abs() * den + frac_val;
        return Ok(Rational64::new(if negative { -mag } else { mag }, den));
    }
    t.parse::<i64>().map(Rational64::from_integer).map_err(|_| bad())
}

fn half() -> Rational64 {
    Rational64::new(1, 2)
}

/// `s_{n,p} = n/2 - 1/(p-1)`.
pub fn critical_regularity(n: i64, p: Rational64) -> Result<Rational64> {
    if p <= Rational64::from_integer(1) {
        return Err(Error::InvalidExponent(format!("critical regularity needs p > 1, got {p}")));
    }
    Ok(Rational64::new(n, 2) - (p - 1).recip())
}

/// `p_{n,s} = 1 + 2/(n - 2s)`, defined for `s < n/2`.
pub fn critical_power(n: i64, s: Rational64) -> Result<Rational64> {
    let gap = Rational64::from_integer(n) - s * 2;
    if gap <= Rational64::from_integer(0) {
        return Err(Error::InvalidExponent(format!(
            "critical power needs s < n/2, got n = {n}, s = {s}"
        )));
    }
    Ok(Rational64::from_integer(1) + Rational64::from_integer(2) / gap)
}

/// `α(r) = 1/2 - 1/r`.
pub fn alpha(r: Exponent) -> Rational64 {
    half() - r.reciprocal()
}

/// The embedding condition `s - (3/2)α(r) - 2/r > 0` for `r > 2`.
pub fn embedding_condition(s: Rational64, r: Exponent) -> Result<bool> {
    if r.reciprocal() >= half() {
        return Err(Error::InvalidExponent(format!("embedding check needs r > 2, got {r}")));
    }
    Ok(s - Rational64::new(3, 2) * alpha(r) - r.reciprocal() * 2 > Rational64::from_integer(0))
}

/// The equivalent threshold form `s > 3/4 + 1/(2r)`.
pub fn embedding_threshold(r: Exponent) -> Rational64 {
    Rational64::new(3, 4) + r.reciprocal() / 2
}

/// Time/space exponent pair together with the dimension-dependent constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StrichartzExponents {
    pub n: i64,
    pub q: Exponent,
    pub r: Exponent,
}

impl StrichartzExponents {
    pub fn new(n: i64, q: Exponent, r: Exponent) -> Result<Self> {
        if !(1..=3).contains(&n) {
            return Err(Error::InvalidExponent(format!("dimension must be 1, 2 or 3, got {n}")));
        }
        Ok(Self { n, q, r })
    }

    pub fn alpha(&self) -> Rational64 {
        alpha(self.r)
    }

    /// `λ = (n+1)/2`.
    pub fn lambda(&self) -> Rational64 {
        Rational64::new(self.n + 1, 2)
    }

    /// `σ = n - 1`.
    pub fn sigma(&self) -> Rational64 {
        Rational64::from_integer(self.n - 1)
    }

    /// Range condition: `2 ≤ r ≤ ∞` for `n = 1, 2`, `2 ≤ r < ∞` for `n = 3`.
    pub fn r_in_range(&self) -> bool {
        let inv = self.r.reciprocal();
        let ok = inv <= half() && inv >= Rational64::from_integer(0);
        ok && !(self.n == 3 && self.r.is_infinite())
    }

    /// The relation `1/r = 1/2 - (2/σ)(1/q)`, taken in the form `σ(1/2 - 1/r) = 2/q`
    /// so that `σ = 0` is meaningful (it forces `q = ∞`).
    pub fn relation_holds(&self) -> bool {
        self.sigma() * (half() - self.r.reciprocal()) == self.q.reciprocal() * 2
    }

    pub fn is_admissible(&self) -> bool {
        self.q.reciprocal() >= Rational64::from_integer(0)
            && self.q.reciprocal() <= Rational64::from_integer(1)
            && self.r_in_range()
            && self.relation_holds()
    }

    /// The `r` paired with `q` by the relation, when `σ > 0`.
    pub fn partner_r(n: i64, q: Exponent) -> Option<Exponent> {
        let sigma = Rational64::from_integer(n - 1);
        if sigma == Rational64::from_integer(0) {
            return None;
        }
        let inv_r = half() - Rational64::from_integer(2) / sigma * q.reciprocal();
        if inv_r < Rational64::from_integer(0) {
            return None;
        }
        Some(Exponent::from_reciprocal(inv_r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn critical_pairs() {
        assert_eq!(critical_regularity(3, r(3, 1)).unwrap(), r(1, 1));
        assert_eq!(critical_regularity(2, r(3, 1)).unwrap(), r(1, 2));
        assert_eq!(critical_power(3, r(1, 1)).unwrap(), r(3, 1));
        assert!(critical_regularity(2, r(1, 1)).is_err());
        assert!(critical_power(2, r(1, 1)).is_err());
    }

    #[test]
    fn embedding_forms_agree() {
        assert!(embedding_condition(r(1, 1), Exponent::integer(4)).unwrap());
        assert_eq!(embedding_threshold(Exponent::integer(4)), r(7, 8));
        assert!(!embedding_condition(r(3, 4), Exponent::Infinite).unwrap());
        assert!(embedding_condition(r(1, 1), Exponent::integer(2)).is_err());
    }

    #[test]
    fn admissible_pairs() {
        let two_d = StrichartzExponents::new(2, Exponent::integer(4), Exponent::Infinite).unwrap();
        assert!(two_d.is_admissible());
        let three_d = StrichartzExponents::new(3, Exponent::integer(4), Exponent::integer(4)).unwrap();
        assert!(three_d.is_admissible());
        let endpoint = StrichartzExponents::new(3, Exponent::integer(2), Exponent::Infinite).unwrap();
        assert!(!endpoint.is_admissible());
        let one_d = StrichartzExponents::new(1, Exponent::Infinite, Exponent::integer(6)).unwrap();
        assert!(one_d.is_admissible());
        let one_d = StrichartzExponents::new(1, Exponent::integer(8), Exponent::integer(6)).unwrap();
        assert!(!one_d.is_admissible());
        assert_eq!(StrichartzExponents::partner_r(2, Exponent::integer(8)), Some(Exponent::integer(4)));
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("1.25").unwrap(), r(5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), r(-1, 2));
        assert_eq!(parse_rational("7/3").unwrap(), r(7, 3));
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinite);
        assert!(parse_rational("x").is_err());
    }
}
