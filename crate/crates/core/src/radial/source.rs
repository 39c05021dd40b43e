//! The source `F_p(u) = -∂_t N + iDN`, `N = |u|^{p-1}u`, of the radial wave form.

use num_complex::Complex64;

use super::halfwave::halfwave_unchecked;
use super::profile::RadialProfile;
use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `|u|^{p-1}u`.
pub(crate) fn power(u: Complex64, p: f64) -> Complex64 {
    let r2 = u.norm_sqr();
    if r2 == 0.0 {
        u
    } else {
        u * r2.powf(0.5 * (p - 1.0))
    }
}

/// `|u|^{p-3}u²`, which has modulus `|u|^{p-1}` and is bounded for every `p > 1`.
fn twisted(u: Complex64, p: f64) -> Complex64 {
    let r = u.norm();
    if r == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        let phase = u / r;
        phase * phase * r.powf(p - 1.0)
    }
}

fn check_power(p: f64) -> Result<()> {
    if !(p > 1.0) {
        return Err(Error::InvalidExponent(format!("source term needs p > 1, got {p}")));
    }
    Ok(())
}

/// One sample of the chain-rule form, given `u`, `Du` and `D(κN)`.
fn chain_rule_point(z: Complex64, du: Complex64, dn: Complex64, p: f64, coupling: f64) -> Complex64 {
    let ut = -I * du - coupling * power(z, p);
    let dt_n = coupling * (0.5 * (p + 1.0) * z.norm().powf(p - 1.0) * ut + 0.5 * (p - 1.0) * twisted(z, p) * ut.conj());
    -dt_n + I * dn
}

/// One sample of the expanded form, given `u`, `Du` and `DN`.
fn expanded_point(z: Complex64, du: Complex64, dn: Complex64, p: f64) -> Complex64 {
    let m = z.norm().powf(p - 1.0);
    I * (dn + 0.5 * (p + 1.0) * m * du - 0.5 * (p - 1.0) * twisted(z, p) * du.conj()) + p * m * m * z
}

/// `F_p(u)` with `∂_t u = -iDu - κN` substituted into the chain rule
/// `∂_t N = ((p+1)/2)|u|^{p-1}∂_t u + ((p-1)/2)|u|^{p-3}u² ∂_t ū`.
pub(crate) fn source_chain_rule(u: &RadialProfile, p: f64, coupling: f64) -> RadialProfile {
    let n_prof = u.map(|z| power(z, p) * coupling);
    let du = halfwave_unchecked(u);
    let dn = halfwave_unchecked(&n_prof);
    let values = (0..u.len())
        .map(|k| chain_rule_point(u.values()[k], du.values()[k], dn.values()[k], p, coupling))
        .collect();
    RadialProfile::from_raw(u.radius(), values)
}

/// `F_p(u)` in the expanded form
/// `i(DN + ((p+1)/2)|u|^{p-1}Du - ((p-1)/2)|u|^{p-3}u² Dū) + p|u|^{2p-2}u`.
pub(crate) fn source_expanded(u: &RadialProfile, p: f64) -> RadialProfile {
    let n_prof = u.map(|z| power(z, p));
    let du = halfwave_unchecked(u);
    let dn = halfwave_unchecked(&n_prof);
    let values = (0..u.len())
        .map(|k| expanded_point(u.values()[k], du.values()[k], dn.values()[k], p))
        .collect();
    RadialProfile::from_raw(u.radius(), values)
}

/// `F_p(u)` by the substituted chain rule.
pub fn f_p_source(u: &RadialProfile, p: f64) -> Result<RadialProfile> {
    check_power(p)?;
    Ok(source_chain_rule(u, p, 1.0))
}

/// `F_p(u)` from the expanded closed form; agrees with [`f_p_source`] up to roundoff.
pub fn f_p_source_expanded(u: &RadialProfile, p: f64) -> Result<RadialProfile> {
    check_power(p)?;
    Ok(source_expanded(u, p))
}
