//! Bessel, Hankel and Macdonald functions of real order.
//!
//! Three regimes: power series for small arguments, an integral
//! representation of `K_ν` for moderate ones, and Hankel expansions for large
//! ones. `H^{(1)}` is routed through `K` away from the origin because
//! `J + iY` cancels catastrophically in the upper half-plane.

use std::f64::consts::{LN_2, PI};
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use super::asymptotic;
use super::branch::log_upper;
use super::gamma::gamma_real;
use super::series::{chi_series, log_kernel, SeriesConfig};
use crate::error::{Error, Result};
use crate::quadrature::{Adaptive, Integrand};

/// `|y|` below which `K_ν(y)` is taken from the series for `H^{(1)}`.
const SMALL_ARG: f64 = 2.0;
/// Upper end of the substituted integration variable `s = √t`.
const S_MAX: f64 = 8.0;

/// A function value with its derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueDeriv {
    pub value: Complex64,
    pub deriv: Complex64,
}

/// `J_ν`, `Y_ν` and their derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselJy {
    pub j: ValueDeriv,
    pub y: ValueDeriv,
}

/// `J_ν(x)`, `Y_ν(x)` with derivatives, principal branch, `x` off `(-∞, 0]`.
pub fn bessel_jy(nu: f64, x: Complex64, cfg: &SeriesConfig) -> Result<BesselJy> {
    if x.re <= 0.0 && x.im == 0.0 {
        return Err(Error::Branch { re: x.re, im: x.im });
    }
    if x.norm() >= cfg.asymptotic_switch {
        let a = asymptotic::bessel_jy(nu, x)?;
        let b = asymptotic::bessel_jy(nu + 1.0, x)?;
        let r = nu / x;
        return Ok(BesselJy {
            j: ValueDeriv { value: a.j, deriv: r * a.j - b.j },
            y: ValueDeriv { value: a.y, deriv: r * a.y - b.y },
        });
    }
    let zeta = x * x;
    let logx = log_upper(x);
    let c = chi_series(nu, zeta, cfg)?;
    let xk = (nu * logx).exp();
    let j = xk * c.value;
    let dj = xk / x * (nu * c.value + 2.0 * c.zeta_deriv);
    let w = log_kernel(nu, logx - LN_2, zeta, cfg)?;
    Ok(BesselJy {
        j: ValueDeriv { value: j, deriv: dj },
        y: ValueDeriv { value: w.value, deriv: (w.d_ell + 2.0 * w.zeta_deriv) / x },
    })
}

#[derive(Clone, Copy)]
struct Pair(Complex64, Complex64);

impl Add for Pair {
    type Output = Pair;
    fn add(self, o: Pair) -> Pair {
        Pair(self.0 + o.0, self.1 + o.1)
    }
}

impl Sub for Pair {
    type Output = Pair;
    fn sub(self, o: Pair) -> Pair {
        Pair(self.0 - o.0, self.1 - o.1)
    }
}

impl Mul<f64> for Pair {
    type Output = Pair;
    fn mul(self, s: f64) -> Pair {
        Pair(self.0 * s, self.1 * s)
    }
}

impl Integrand for Pair {
    fn zero() -> Self {
        Pair(Complex64::default(), Complex64::default())
    }
    fn magnitude(self) -> f64 {
        self.0.norm().max(self.1.norm())
    }
    fn real_part(self) -> f64 {
        self.0.re
    }
}

/// `(K_ν(y), K_{ν+1}(y))` from
/// `K_μ(y) = √(π/2y) e^{-y} / Γ(μ+½) ∫ e^{-t} t^{μ-½} (1 + t/2y)^{μ-½} dt`.
fn bessel_k_integral(nu: f64, y: Complex64) -> Result<(Complex64, Complex64)> {
    let c = 0.5 / y;
    let e0 = nu - 0.5;
    let integrand = |s: f64| {
        let s2 = s * s;
        let base = Complex64::new(1.0, 0.0) + c * s2;
        let lb = base.ln();
        let common = 2.0 * s.powf(2.0 * nu) * (-s2).exp();
        Pair((e0 * lb).exp() * common, ((e0 + 1.0) * lb).exp() * common * s2)
    };
    let rule = Adaptive { abs_tol: 0.0, rel_tol: 1e-15, max_panels: 400 };
    let est = rule.integrate_on(integrand, 0.0, S_MAX, &[0.05, 0.5, 1.5, 3.0])?;
    let pre = (PI / (2.0 * y)).sqrt() * (-y).exp();
    Ok((
        pre * est.value.0 / gamma_real(nu + 0.5)?,
        pre * est.value.1 / gamma_real(nu + 1.5)?,
    ))
}

/// `K_ν(y)` and `K_ν'(y)` for `ν ≥ 0`, `-π < arg y ≤ π/2`.
pub fn bessel_k(nu: f64, y: Complex64, cfg: &SeriesConfig) -> Result<ValueDeriv> {
    let nu = nu.abs();
    let arg = y.im.atan2(y.re);
    if y.norm() == 0.0 || arg <= -PI + 1e-12 || arg > 0.5 * PI + 1e-12 {
        return Err(Error::Branch { re: y.re, im: y.im });
    }
    let m = y.norm();
    if m <= SMALL_ARG {
        // K_ν(y) = (iπ/2) e^{iπν/2} H1_ν(iy)
        let x = Complex64::i() * y;
        let jy = bessel_jy(nu, x, cfg)?;
        let f = Complex64::new(0.0, 0.5 * PI) * Complex64::from_polar(1.0, 0.5 * PI * nu);
        let h = jy.j.value + Complex64::i() * jy.y.value;
        let dh = jy.j.deriv + Complex64::i() * jy.y.deriv;
        return Ok(ValueDeriv { value: f * h, deriv: f * Complex64::i() * dh });
    }
    let (k0, k1) = if m >= cfg.asymptotic_switch {
        (asymptotic::bessel_k(nu, y)?, asymptotic::bessel_k(nu + 1.0, y)?)
    } else {
        bessel_k_integral(nu, y)?
    };
    Ok(ValueDeriv { value: k0, deriv: nu / y * k0 - k1 })
}

/// `H^{(1)}_ν(x)` with its derivative, `-π/2 < arg x < π`.
pub fn hankel1_with_derivative(nu: f64, x: Complex64, cfg: &SeriesConfig) -> Result<ValueDeriv> {
    let arg = x.im.atan2(x.re);
    if x.norm() == 0.0 || arg <= -0.5 * PI || arg >= PI - 1e-12 {
        return Err(Error::Branch { re: x.re, im: x.im });
    }
    if x.norm() <= SMALL_ARG {
        let jy = bessel_jy(nu, x, cfg)?;
        let i = Complex64::i();
        return Ok(ValueDeriv {
            value: jy.j.value + i * jy.y.value,
            deriv: jy.j.deriv + i * jy.y.deriv,
        });
    }
    // H1_ν(x) = (2/(πi)) e^{-iπν/2} K_ν(-ix), and H1_{-ν} = e^{iπν} H1_ν
    let y = -Complex64::i() * x;
    let k = bessel_k(nu.abs(), y, cfg)?;
    let f = 2.0 / (PI * Complex64::i()) * Complex64::from_polar(1.0, -0.5 * PI * nu);
    Ok(ValueDeriv { value: f * k.value, deriv: -Complex64::i() * f * k.deriv })
}

/// The first Hankel function `H^{(1)}_ν(x)`.
pub fn hankel1(nu: f64, x: Complex64) -> Result<Complex64> {
    hankel1_with_derivative(nu, x, &SeriesConfig::default()).map(|h| h.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SeriesConfig {
        SeriesConfig::default()
    }

    #[test]
    fn half_order_closed_form() {
        for &x in &[1.0, 2.0, 5.0, 30.0] {
            let h = hankel1(0.5, Complex64::new(x, 0.0)).unwrap();
            let expect = -Complex64::i() * (2.0 / (PI * x)).sqrt() * Complex64::new(0.0, x).exp();
            assert!((h - expect).norm() < 1e-13 * expect.norm(), "x = {x}");
        }
    }

    #[test]
    fn negative_order_reflection() {
        let x = Complex64::new(1.7, 0.0);
        let a = hankel1(-0.3, x).unwrap();
        let b = Complex64::from_polar(1.0, 0.3 * PI) * hankel1(0.3, x).unwrap();
        assert!((a - b).norm() < 1e-13 * b.norm());
        let x = Complex64::new(4.0, 3.0);
        let a = hankel1(-0.3, x).unwrap();
        let b = Complex64::from_polar(1.0, 0.3 * PI) * hankel1(0.3, x).unwrap();
        assert!((a - b).norm() < 1e-13 * b.norm());
    }

    #[test]
    fn wronskian_of_j_and_h1() {
        let (nu, x) = (0.4, Complex64::new(2.0, 0.0));
        let jy = bessel_jy(nu, x, &cfg()).unwrap();
        let h = hankel1_with_derivative(nu, x, &cfg()).unwrap();
        let w = jy.j.value * h.deriv - jy.j.deriv * h.value;
        let expect = Complex64::new(0.0, 2.0 / (PI * 2.0));
        assert!((w - expect).norm() < 1e-13);
    }

    #[test]
    fn regimes_agree_at_their_boundaries() {
        for &nu in &[0.0, 0.25, 0.9] {
            for &ang in &[-2.5, -1.0, 0.0, 0.7, 1.5] {
                let y = Complex64::from_polar(SMALL_ARG, ang);
                let series = bessel_k(nu, y, &cfg()).unwrap().value;
                let (integral, _) = bessel_k_integral(nu, y).unwrap();
                assert!((series - integral).norm() < 1e-13 * series.norm(), "nu={nu} ang={ang}");

                let y = Complex64::from_polar(25.0, ang);
                let (integral, integral1) = bessel_k_integral(nu, y).unwrap();
                let asym = asymptotic::bessel_k(nu, y).unwrap();
                let asym1 = asymptotic::bessel_k(nu + 1.0, y).unwrap();
                assert!((asym - integral).norm() < 1e-12 * asym.norm(), "nu={nu} ang={ang}");
                assert!((asym1 - integral1).norm() < 1e-12 * asym1.norm());
            }
        }
    }

    #[test]
    fn modified_bessel_half_order() {
        // K_{1/2}(y) = sqrt(π/2y) e^{-y}
        for &y in &[0.5, 3.0, 10.0, 40.0] {
            let k = bessel_k(0.5, Complex64::new(y, 0.0), &cfg()).unwrap();
            let expect = (PI / (2.0 * y)).sqrt() * (-y).exp();
            assert!((k.value.re - expect).abs() < 1e-14 * expect && k.value.im.abs() < 1e-14 * expect);
            let dexpect = -expect * (1.0 + 0.5 / y);
            assert!((k.deriv.re - dexpect).abs() < 1e-13 * expect);
        }
    }

    #[test]
    fn negative_real_axis_is_rejected() {
        assert!(matches!(hankel1(0.2, Complex64::new(-1.0, 0.0)), Err(Error::Branch { .. })));
    }
}
