//! Cubic interpolation of radial profiles and the spherical-mean kernel
//! `J[f](t, r) = (1/2r) ∫_{|r-t|}^{r+t} λ f̃(λ) dλ`.

use num_complex::Complex64;

use super::profile::RadialProfile;
use crate::error::{Error, Result};

/// Double-double accumulator for one real component.
#[derive(Clone, Copy, Debug, Default)]
struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

impl Dd {
    fn add(self, x: f64) -> Dd {
        let (s, e) = two_sum(self.hi, x);
        let (hi, lo) = two_sum(s, e + self.lo);
        Dd { hi, lo }
    }

    fn diff(self, other: Dd) -> f64 {
        let (s, e) = two_sum(self.hi, -other.hi);
        s + (e + (self.lo - other.lo))
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct CDd {
    re: Dd,
    im: Dd,
}

impl CDd {
    fn add(self, z: Complex64) -> CDd {
        CDd {
            re: self.re.add(z.re),
            im: self.im.add(z.im),
        }
    }

    fn diff(self, other: CDd) -> Complex64 {
        Complex64::new(self.re.diff(other.re), self.im.diff(other.im))
    }
}

const GAUSS_X: f64 = 0.774_596_669_241_483_4;
const GAUSS_W: [f64; 3] = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];

/// Piecewise cubic Lagrange interpolant of a profile with a prefix table of
/// `G(λ) = ∫₀^λ μ f̃(μ) dμ`, so that each kernel evaluation is `O(1)`.
///
/// Pieces are delimited by `0, r_0, …, r_{M-1}, R`; piece `k` interpolates through
/// the four nodes nearest to it (the stencil is clamped at both ends, so cubics are
/// reproduced exactly). `f̃` vanishes beyond `R`.
#[derive(Clone, Debug)]
pub struct JKernel {
    radius: f64,
    h: f64,
    values: Vec<Complex64>,
    prefix: Vec<CDd>,
}

impl JKernel {
    pub fn new(f: &RadialProfile) -> Self {
        let m = f.len();
        let mut kernel = Self {
            radius: f.radius(),
            h: f.spacing(),
            values: f.values().to_vec(),
            prefix: Vec::with_capacity(m + 2),
        };
        let mut acc = CDd::default();
        kernel.prefix.push(acc);
        for piece in 0..=m {
            let (a, b) = (kernel.breakpoint(piece), kernel.breakpoint(piece + 1));
            acc = acc.add(kernel.piece_moment(piece, a, b));
            kernel.prefix.push(acc);
        }
        kernel
    }

    fn samples(&self) -> usize {
        self.values.len()
    }

    fn breakpoint(&self, k: usize) -> f64 {
        let m = self.samples();
        if k == 0 {
            0.0
        } else if k <= m {
            (k as f64 - 0.5) * self.h
        } else {
            self.radius
        }
    }

    fn piece_of(&self, r: f64) -> usize {
        ((r / self.h + 0.5).floor().max(0.0) as usize).min(self.samples())
    }

    fn stencil_start(&self, piece: usize) -> usize {
        piece.saturating_sub(2).min(self.samples() - 4)
    }

    fn eval_piece(&self, piece: usize, r: f64) -> Complex64 {
        let start = self.stencil_start(piece);
        let s = r / self.h - (start as f64 + 0.5);
        let l = [
            -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0,
            s * (s - 2.0) * (s - 3.0) / 2.0,
            -s * (s - 1.0) * (s - 3.0) / 2.0,
            s * (s - 1.0) * (s - 2.0) / 6.0,
        ];
        let v = &self.values[start..start + 4];
        v[0] * l[0] + v[1] * l[1] + v[2] * l[2] + v[3] * l[3]
    }

    fn eval_piece_derivative(&self, piece: usize, r: f64) -> Complex64 {
        let start = self.stencil_start(piece);
        let s = r / self.h - (start as f64 + 0.5);
        let d = [
            -(3.0 * s * s - 12.0 * s + 11.0) / 6.0,
            (3.0 * s * s - 10.0 * s + 6.0) / 2.0,
            -(3.0 * s * s - 8.0 * s + 3.0) / 2.0,
            (3.0 * s * s - 6.0 * s + 2.0) / 6.0,
        ];
        let v = &self.values[start..start + 4];
        (v[0] * d[0] + v[1] * d[1] + v[2] * d[2] + v[3] * d[3]) / self.h
    }

    /// `∫_a^b μ f̃(μ) dμ` within one piece, exact for the quartic integrand.
    fn piece_moment(&self, piece: usize, a: f64, b: f64) -> Complex64 {
        let half = 0.5 * (b - a);
        if half == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let mid = 0.5 * (a + b);
        let mut sum = Complex64::new(0.0, 0.0);
        for (x, w) in [-GAUSS_X, 0.0, GAUSS_X].into_iter().zip(GAUSS_W) {
            let mu = mid + half * x;
            sum += self.eval_piece(piece, mu) * (w * mu);
        }
        sum * half
    }

    /// `f̃(r)`, zero outside `[0, R]`.
    pub fn interpolate(&self, r: f64) -> Complex64 {
        if !(0.0..=self.radius).contains(&r) {
            return Complex64::new(0.0, 0.0);
        }
        self.eval_piece(self.piece_of(r), r)
    }

    /// `f̃'(r)` of the interpolant, zero outside `[0, R]`.
    pub fn derivative(&self, r: f64) -> Complex64 {
        if !(0.0..=self.radius).contains(&r) {
            return Complex64::new(0.0, 0.0);
        }
        self.eval_piece_derivative(self.piece_of(r), r)
    }

    fn antiderivative(&self, lambda: f64) -> CDd {
        if lambda >= self.radius {
            return self.prefix[self.samples() + 1];
        }
        let piece = self.piece_of(lambda);
        let a = self.breakpoint(piece);
        self.prefix[piece].add(self.piece_moment(piece, a, lambda))
    }

    /// `J[f](t, r)` for `t ≥ 0`, `r > 0`.
    pub fn j(&self, t: f64, r: f64) -> Complex64 {
        let lo = (r - t).abs();
        if t == 0.0 || lo >= self.radius {
            return Complex64::new(0.0, 0.0);
        }
        self.antiderivative(r + t).diff(self.antiderivative(lo)) / (2.0 * r)
    }

    /// `∂_t J[f](t, r) = [(r+t) f̃(r+t) + (r-t) f̃(|r-t|)] / (2r)`.
    pub fn dj_dt(&self, t: f64, r: f64) -> Complex64 {
        ((r + t) * self.interpolate(r + t) + (r - t) * self.interpolate((r - t).abs())) / (2.0 * r)
    }

    /// `∫₀^R r² |f̃'(r)|² dr` of the interpolant, exact per piece.
    pub fn weighted_derivative_energy(&self) -> f64 {
        let mut total = 0.0;
        for piece in 0..=self.samples() {
            let (a, b) = (self.breakpoint(piece), self.breakpoint(piece + 1));
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            // r²|f'|² has degree 6; the 4-point rule is exact for it.
            const X4: [f64; 2] = [0.339_981_043_584_856_3, 0.861_136_311_594_052_6];
            const W4: [f64; 2] = [0.652_145_154_862_546_1, 0.347_854_845_137_453_9];
            for (x, w) in X4.iter().zip(W4) {
                for sign in [-1.0, 1.0] {
                    let r = mid + sign * half * x;
                    total += w * half * r * r * self.eval_piece_derivative(piece, r).norm_sqr();
                }
            }
        }
        total
    }
}

fn check_point(t: f64, r: f64) -> Result<()> {
    if !(r > 0.0) {
        return Err(Error::InvalidProfile(format!("kernel radius must be positive, got {r}")));
    }
    if !(t >= 0.0) {
        return Err(Error::InvalidProfile(format!("kernel time must be nonnegative, got {t}")));
    }
    Ok(())
}

/// `J[f](t, r)`; builds the interpolant on every call, prefer [`JKernel`] for many points.
pub fn j_kernel(f: &RadialProfile, t: f64, r: f64) -> Result<Complex64> {
    check_point(t, r)?;
    Ok(JKernel::new(f).j(t, r))
}

/// `∂_t J[f](t, r)` in closed form.
pub fn dj_dt(f: &RadialProfile, t: f64, r: f64) -> Result<Complex64> {
    check_point(t, r)?;
    Ok(JKernel::new(f).dj_dt(t, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn constant_profile_gives_time() {
        let f = RadialProfile::from_fn(10.0, 64, |_| c(1.0)).unwrap();
        let k = JKernel::new(&f);
        for (t, r) in [(0.3, 0.078125), (2.0, 5.0), (4.9, 5.0), (7.0, 0.5)] {
            let j = k.j(t, r);
            assert!((j.re - t).abs() <= 4.0 * f64::EPSILON * t, "{t} {r} {j}");
            assert!((k.dj_dt(t, r).re - 1.0).abs() < 1e-14);
        }
        assert_eq!(k.j(0.0, 1.0), c(0.0));
    }

    #[test]
    fn linear_profile_matches_polynomial() {
        let f = RadialProfile::from_fn(8.0, 32, c).unwrap();
        let k = JKernel::new(&f);
        for (t, r) in [(1.0f64, 2.0f64), (3.0, 1.5), (0.25, 6.0), (2.0, 0.125)] {
            let expected = ((r + t).powi(3) - (r - t).abs().powi(3)) / (6.0 * r);
            assert!((k.j(t, r).re - expected).abs() < 1e-10);
        }
    }

    #[test]
    fn cubic_is_reproduced() {
        let f = RadialProfile::from_fn(4.0, 16, |r| c(1.0 - 2.0 * r + 0.5 * r * r * r)).unwrap();
        let k = JKernel::new(&f);
        for r in [0.0, 0.01, 0.9, 2.2, 3.99, 4.0] {
            let v = k.interpolate(r).re;
            assert!((v - (1.0 - 2.0 * r + 0.5 * r * r * r)).abs() < 1e-12, "{r}");
            let d = k.derivative(r).re;
            assert!((d - (-2.0 + 1.5 * r * r)).abs() < 1e-11, "{r}");
        }
        assert_eq!(k.interpolate(4.5), c(0.0));
    }

    #[test]
    fn bad_points_rejected() {
        let f = RadialProfile::zeros(1.0, 16).unwrap();
        assert!(j_kernel(&f, 1.0, 0.0).is_err());
        assert!(dj_dt(&f, -1.0, 1.0).is_err());
    }
}
