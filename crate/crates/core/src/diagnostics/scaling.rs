use num_complex::Complex64;

use super::identities::IdentityResidual;
use crate::error::{Error, Result};
use crate::spectral::{sobolev_norm, Field, Representation, SobolevSpec};

/// `s_{n,p} = n/2 - 1/(p-1)`.
pub fn scaling_critical_exponent(n: usize, p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::InvalidExponent(format!("critical exponent needs p > 1, got {p}")));
    }
    Ok(0.5 * n as f64 - 1.0 / (p - 1.0))
}

/// `p_{n,s} = 1 + 2/(n - 2s)` for `s < n/2`.
pub fn critical_power(n: usize, s: f64) -> Result<f64> {
    let gap = n as f64 - 2.0 * s;
    if !(gap > 0.0) {
        return Err(Error::InvalidExponent(format!("critical power needs s < n/2, got n = {n}, s = {s}")));
    }
    Ok(1.0 + 2.0 / gap)
}

/// `u_{0,σ}(x) = σ^{1/(p-1)} u₀(σx)`, sampled on the grid of period `L/σ` with the same `N`.
pub fn rescale_data(u0: &Field, sigma: f64, p: f64) -> Result<Field> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidConfig(format!("scale must be positive, got {sigma}")));
    }
    if !(p > 1.0) {
        return Err(Error::InvalidExponent(format!("scaling needs p > 1, got {p}")));
    }
    let grid = u0.grid().rescaled(sigma)?;
    let amp = Complex64::new(sigma.powf(1.0 / (p - 1.0)), 0.0);
    let values = u0.to_physical().into_values().into_iter().map(|z| z * amp).collect();
    Field::new(grid, values, Representation::Physical)
}

/// Compares `‖u_{0,σ}‖_{Ḣ^s}` with `σ^{1/(p-1)+s-n/2}‖u₀‖_{Ḣ^s}`.
pub fn check_scaling_law(u0: &Field, sigma: f64, s: f64, p: f64) -> Result<IdentityResidual> {
    let scaled = rescale_data(u0, sigma, p)?;
    let spec = SobolevSpec::homogeneous(s);
    let n = u0.grid().dim() as f64;
    let lhs = sobolev_norm(&scaled, spec)?;
    let rhs = sigma.powf(1.0 / (p - 1.0) + s - 0.5 * n) * sobolev_norm(u0, spec)?;
    Ok(IdentityResidual::new(lhs, rhs, false, Vec::new()))
}

/// `s - (3/2)(1/2 - 1/r) - 2/r > 0`, for `r > 2` (`r = ∞` allowed).
pub fn embedding_exponent_check(s: f64, r: f64) -> Result<bool> {
    if !(r > 2.0) {
        return Err(Error::InvalidExponent(format!("embedding check needs r > 2, got {r}")));
    }
    let inv = 1.0 / r;
    Ok(s - 1.5 * (0.5 - inv) - 2.0 * inv > 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid;

    #[test]
    fn critical_values() {
        assert_eq!(scaling_critical_exponent(3, 3.0).unwrap(), 1.0);
        assert_eq!(scaling_critical_exponent(2, 3.0).unwrap(), 0.5);
        assert!(scaling_critical_exponent(2, 1.0).is_err());
        let s = scaling_critical_exponent(2, 1e9).unwrap();
        assert!(s < 1.0 && s > 1.0 - 1e-8);
        for (n, s) in [(1, 0.25), (2, 0.5), (3, 1.0), (3, 0.75)] {
            let p = critical_power(n, s).unwrap();
            assert!((scaling_critical_exponent(n, p).unwrap() - s).abs() < 1e-12);
        }
    }

    #[test]
    fn unit_scale_is_identity_and_cubic_line_doubles() {
        let g = Grid::new(1, 128, 30.0).unwrap();
        let u0 = Field::from_fn(&g, |x| Complex64::new((-x[0] * x[0]).exp(), 0.0));
        let r = check_scaling_law(&u0, 1.0, 1.0, 3.0).unwrap();
        assert_eq!(r.lhs, r.rhs);
        let r = check_scaling_law(&u0, 2.0, 1.0, 3.0).unwrap();
        assert!(r.relative < 1e-12);
        let base = sobolev_norm(&u0, SobolevSpec::homogeneous(1.0)).unwrap();
        assert!((r.lhs / base - 2.0).abs() < 1e-12);
        assert!(check_scaling_law(&u0, 0.0, 1.0, 3.0).is_err());
    }

    #[test]
    fn embedding_threshold() {
        assert!(embedding_exponent_check(1.0, 4.0).unwrap());
        assert!(!embedding_exponent_check(0.75, f64::INFINITY).unwrap());
        assert!(embedding_exponent_check(1.0, 2.0).is_err());
    }
}
