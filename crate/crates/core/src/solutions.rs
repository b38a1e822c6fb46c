//! Solutions of `-f'' + (κ² - 1/4) r⁻² f = z f` and their Wronskians.
//!
//! * `u^κ(z|r) = r^{1/2+κ} χ_κ(r²z)`, regular at the origin;
//! * `w^κ(z|r)`, the companion with `W(u, w) = 2/π`, analytic in κ through 0;
//! * `u^κ_ϑ = u cos(ϑ - ϑ_κ) + w sin(ϑ - ϑ_κ)`, fixing the boundary condition;
//! * `v^κ(z|r) = √r K_κ(-i r z^{1/2})`, decaying as `r → ∞` for `z` off `[0, ∞)`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::branch::log_upper;
use crate::special::elementary::{sinc, sinhc_c};
use crate::special::series::{self, normalized, LogKernel, SeriesConfig};
use crate::special::{asymptotic, bessel_k, chi_pair, cut_power, BranchCut};

/// The pair `(κ, ϑ)` labelling a self-adjoint realization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtensionParams {
    pub kappa: f64,
    pub theta: f64,
}

impl ExtensionParams {
    pub fn new(kappa: f64, theta: f64) -> Result<Self> {
        if !(kappa.abs() < 1.0) {
            return Err(Error::Validation(format!("kappa must lie in (-1, 1), got {kappa}")));
        }
        if !theta.is_finite() {
            return Err(Error::Validation(format!("theta must be finite, got {theta}")));
        }
        Ok(ExtensionParams { kappa, theta })
    }

    /// The realization with `ϑ = ϑ_κ`, i.e. the Friedrichs-type boundary condition.
    pub fn hankel(kappa: f64) -> Result<Self> {
        Self::new(kappa, theta_kappa(kappa))
    }

    pub fn theta_kappa(&self) -> f64 {
        theta_kappa(self.kappa)
    }

    /// `ϑ` reduced to `[0, π)`; realizations differing by multiples of π coincide.
    pub fn canonical_theta(&self) -> f64 {
        let t = self.theta.rem_euclid(PI);
        if t >= PI {
            0.0
        } else {
            t
        }
    }

    /// `(ϑ + ϑ_κ, ϑ - ϑ_κ)`.
    pub fn theta_pm(&self) -> (f64, f64) {
        let d = self.theta_kappa();
        (self.theta + d, self.theta - d)
    }

    pub fn with_theta(&self, theta: f64) -> Self {
        ExtensionParams { theta, ..*self }
    }
}

/// `ϑ_κ = πκ/2`.
pub fn theta_kappa(kappa: f64) -> f64 {
    FRAC_PI_2 * kappa
}

/// A solution's value and r-derivative at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SolutionEval {
    pub value: Complex64,
    pub d_r: Complex64,
}

impl SolutionEval {
    fn scale(self, c: f64) -> Self {
        SolutionEval { value: self.value * c, d_r: self.d_r * c }
    }
}

impl std::ops::Add for SolutionEval {
    type Output = SolutionEval;
    fn add(self, o: SolutionEval) -> SolutionEval {
        SolutionEval { value: self.value + o.value, d_r: self.d_r + o.d_r }
    }
}

/// `W_r(f, g) = f g' - f' g`.
pub fn wronskian_at(f: SolutionEval, g: SolutionEval) -> Complex64 {
    f.value * g.d_r - f.d_r * g.value
}

fn check_r(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Validation(format!("r must be positive and finite, got {r}")))
    }
}

fn check_z(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Validation(format!("spectral parameter must be finite, got {z}")))
    }
}

/// The regular solution `u^κ(z|r)`. Any `κ > -1` is accepted.
pub fn eval_u(kappa: f64, z: Complex64, r: f64) -> Result<SolutionEval> {
    eval_u_with(kappa, z, r, &SeriesConfig::default())
}

pub fn eval_u_with(kappa: f64, z: Complex64, r: f64, cfg: &SeriesConfig) -> Result<SolutionEval> {
    check_r(r)?;
    check_z(z)?;
    let zeta = z * (r * r);
    let c = chi_pair(kappa, zeta, cfg)?;
    let p = r.powf(kappa - 0.5);
    Ok(SolutionEval {
        value: p * r * c.value,
        d_r: p * ((0.5 + kappa) * c.value + 2.0 * c.zeta_deriv),
    })
}

/// Evaluation route for the logarithmic companion `w^κ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WForm {
    /// κ-split series below the blend threshold, κ-difference above it.
    #[default]
    Auto,
    /// `(u^κ cos πκ - u^{-κ}) / sin πκ`; undefined at κ = 0.
    Direct,
    /// Series in even and odd parts of `1/Γ(n+1±κ)`, analytic at κ = 0.
    Split,
}

/// The companion solution `w^κ(z|r)` with `W(u^κ, w^κ) = 2/π`.
pub fn eval_w(kappa: f64, z: Complex64, r: f64) -> Result<SolutionEval> {
    eval_w_with(kappa, z, r, WForm::Auto, &SeriesConfig::default())
}

pub fn eval_w_with(kappa: f64, z: Complex64, r: f64, form: WForm, cfg: &SeriesConfig) -> Result<SolutionEval> {
    check_r(r)?;
    check_z(z)?;
    if !(kappa.abs() < 1.0) {
        return Err(Error::Domain(format!("w is defined for |kappa| < 1, got {kappa}")));
    }
    let zeta = z * (r * r);
    if cfg.use_asymptotic(zeta) {
        return eval_w_asymptotic(kappa, z, r);
    }
    let ell = Complex64::new((0.5 * r).ln(), 0.0);
    let k: LogKernel = match form {
        WForm::Auto => series::log_kernel(kappa, ell, zeta, cfg)?,
        WForm::Direct => series::log_kernel_direct(kappa, ell, zeta, cfg)?,
        WForm::Split => series::log_kernel_split(kappa, ell, zeta, cfg)?,
    };
    let sr = r.sqrt();
    Ok(SolutionEval {
        value: sr * k.value,
        d_r: (0.5 * k.value + k.d_ell + 2.0 * k.zeta_deriv) / sr,
    })
}

// w/√r = s^κ Y_κ(rs) - cos πκ (L/π) sinhc(κL/2)/sinc(πκ) J_κ(rs), s = z^{1/2}, L = 2 Log s.
fn eval_w_asymptotic(kappa: f64, z: Complex64, r: f64) -> Result<SolutionEval> {
    let s = normalized(z).sqrt();
    let x = s * r;
    let big_l = 2.0 * log_upper(s);
    let a = (0.5 * kappa * big_l).exp();
    let b = (PI * kappa).cos() * big_l / PI * sinhc_c(0.5 * kappa * big_l) / sinc(PI * kappa);
    let p = asymptotic::bessel_jy(kappa, x)?;
    let q = asymptotic::bessel_jy(kappa + 1.0, x)?;
    let dy = kappa / x * p.y - q.y;
    let dj = kappa / x * p.j - q.j;
    let sr = r.sqrt();
    let f = a * p.y - b * p.j;
    let df = a * dy - b * dj;
    Ok(SolutionEval { value: sr * f, d_r: 0.5 / sr * f + sr * s * df })
}

/// `u^κ_ϑ(z|r) = u^κ cos(ϑ - ϑ_κ) + w^κ sin(ϑ - ϑ_κ)`.
pub fn eval_u_theta(p: ExtensionParams, z: Complex64, r: f64) -> Result<SolutionEval> {
    eval_u_theta_with(p, z, r, &SeriesConfig::default())
}

pub fn eval_u_theta_with(p: ExtensionParams, z: Complex64, r: f64, cfg: &SeriesConfig) -> Result<SolutionEval> {
    let phase = p.theta - p.theta_kappa();
    let u = eval_u_with(p.kappa, z, r, cfg)?;
    let w = eval_w_with(p.kappa, z, r, WForm::Auto, cfg)?;
    Ok(u.scale(phase.cos()) + w.scale(phase.sin()))
}

/// The decaying solution `v^κ(z|r)`, `z` in the plane cut along `arg z = 3π/2`.
pub fn eval_v(kappa: f64, z: Complex64, r: f64) -> Result<SolutionEval> {
    eval_v_with(kappa, z, r, &SeriesConfig::default())
}

pub fn eval_v_with(kappa: f64, z: Complex64, r: f64, cfg: &SeriesConfig) -> Result<SolutionEval> {
    check_r(r)?;
    check_z(z)?;
    let s = cut_power(z, Complex64::new(0.5, 0.0), BranchCut::ThreePiOver2)?;
    let mis = -Complex64::i() * s;
    let k = bessel_k(kappa.abs(), mis * r, cfg)?;
    let sr = r.sqrt();
    Ok(SolutionEval { value: sr * k.value, d_r: 0.5 / sr * k.value + sr * mis * k.deriv })
}

/// Closed form of `W(v^κ, u^κ) = z^{-κ/2} e^{iπκ/2}` on the 3π/2-cut plane.
pub fn wronskian_vu(kappa: f64, z: Complex64) -> Result<Complex64> {
    let l = crate::special::cut_log(z, BranchCut::ThreePiOver2)?;
    Ok((-0.5 * kappa * l + Complex64::new(0.0, 0.5 * PI * kappa)).exp())
}

/// `|−f'' + q_κ f − E f| / (1 + |E f|)` with a five-point second difference of spacing `h`.
pub fn ode_residual(
    kappa: f64,
    e: Complex64,
    f: impl Fn(f64) -> Result<SolutionEval>,
    r: f64,
    h: f64,
) -> Result<f64> {
    if !(h > 0.0) || !(r - 2.0 * h > 0.0) {
        return Err(Error::Validation(format!("need r - 2h > 0 with h > 0, got r = {r}, h = {h}")));
    }
    let v = |t: f64| f(t).map(|s| s.value);
    let f0 = v(r)?;
    let d2 = (-v(r + 2.0 * h)? + 16.0 * v(r + h)? - 30.0 * f0 + 16.0 * v(r - h)? - v(r - 2.0 * h)?) / (12.0 * h * h);
    let q = (kappa * kappa - 0.25) / (r * r);
    Ok((-d2 + q * f0 - e * f0).norm() / (1.0 + (e * f0).norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma_real;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn u_at_zero_energy() {
        for &k in &[0.0, 0.3, -0.6, 1.5] {
            let r = 1.7;
            let got = eval_u(k, c(0.0), r).unwrap().value;
            let expect = 2f64.powf(-k) * r.powf(0.5 + k) / gamma_real(k + 1.0).unwrap();
            assert!(rel(got, c(expect)) < 1e-14, "k = {k}");
        }
    }

    #[test]
    fn u_half_order_is_sine() {
        // E^{-1/4} √r J_{1/2}(2r) at E = 4
        let got = eval_u(0.5, c(4.0), 1.0).unwrap().value;
        let expect = 4f64.powf(-0.25) * (2.0 / (PI * 2.0)).sqrt() * 2f64.sin();
        assert!(rel(got, c(expect)) < 1e-14);
    }

    #[test]
    fn u_solves_the_equation() {
        let res = ode_residual(0.3, c(1.0), |r| eval_u(0.3, c(1.0), r), 2.0, 1e-3).unwrap();
        assert!(res < 1e-8);
        let res = ode_residual(0.5, c(1.0), |r| eval_u(0.5, c(1.0), r), 1.0, 1e-3).unwrap();
        assert!(res < 1e-8);
    }

    #[test]
    fn u_theta_solves_the_equation() {
        let p = ExtensionParams::new(0.0, 0.9).unwrap();
        let res = ode_residual(0.0, c(-1.0), |r| eval_u_theta(p, c(-1.0), r), 2.0, 1e-3).unwrap();
        assert!(res < 1e-8);
    }

    #[test]
    fn residual_detects_corruption() {
        let bad = |r: f64| eval_u(0.3, c(1.0), r).map(|s| SolutionEval { value: s.value * (1.0 + 1e-4 * r), ..s });
        let res = ode_residual(0.3, c(1.0), bad, 2.0, 1e-3).unwrap();
        assert!(res >= 1e-5, "residual {res}");
    }

    #[test]
    fn u_w_wronskian() {
        for &k in &[0.0, 4e-3, -0.3, 0.8] {
            // growing pairs make the Wronskian ill-conditioned, so keep r·Im√z modest
            for &z in &[c(1.0), Complex64::new(-0.03, 0.02), c(900.0), Complex64::new(2.0, 0.3)] {
                for &r in &[0.01, 1.0, 10.0] {
                    let u = eval_u(k, z, r).unwrap();
                    let w = eval_w(k, z, r).unwrap();
                    let wr = wronskian_at(u, w);
                    assert!(rel(wr, c(2.0 / PI)) < 1e-10, "k={k} z={z} r={r} W={wr}");
                }
            }
        }
    }

    #[test]
    fn w_at_half_is_minus_u_of_minus_half() {
        let z = Complex64::new(2.0, 0.5);
        let a = eval_w(0.5, z, 1.3).unwrap().value;
        let b = eval_u(-0.5, z, 1.3).unwrap().value;
        assert!(rel(a, -b) < 1e-14);
    }

    #[test]
    fn w_branches_agree_across_zero() {
        // w has slope -(π/2) u⁰ in κ at 0, so compare the central average
        let w0 = eval_w(0.0, c(1.0), 1.0).unwrap().value;
        let wp = eval_w(1e-4, c(1.0), 1.0).unwrap().value;
        let wm = eval_w(-1e-4, c(1.0), 1.0).unwrap().value;
        assert!((0.5 * (wp + wm) - w0).norm() < 1e-7);
        let u0 = eval_u(0.0, c(1.0), 1.0).unwrap().value;
        assert!(((wp - wm) / 2e-4 + 0.5 * PI * u0).norm() < 1e-6);
        let cfg = SeriesConfig::default();
        for &k in &[5e-3, -7e-3, 1e-2, 1.5e-2] {
            let a = eval_w_with(k, c(1.0), 1.0, WForm::Direct, &cfg).unwrap().value;
            let b = eval_w_with(k, c(1.0), 1.0, WForm::Split, &cfg).unwrap().value;
            assert!((a - b).norm() < 1e-7);
        }
    }

    #[test]
    fn w_series_and_asymptotic_agree() {
        let cfg = SeriesConfig::default();
        for &k in &[0.0, 0.2, -0.7] {
            for &ang in &[0.0, 1.0, PI, -0.3] {
                let z = Complex64::from_polar(1.0, ang);
                let r = 25.0;
                let a = eval_w_with(k, z, r, WForm::Auto, &SeriesConfig { asymptotic_switch: 1e9, ..cfg }).unwrap();
                let b = eval_w_asymptotic(k, z, r).unwrap();
                let u = eval_u(k, z, r).unwrap();
                let scale = a.value.norm() + u.value.norm();
                assert!((b.value - a.value).norm() < 1e-9 * scale, "k={k} ang={ang}");
                assert!((b.d_r - a.d_r).norm() < 1e-9 * (a.d_r.norm() + u.d_r.norm()));
            }
        }
    }

    #[test]
    fn u_theta_special_values() {
        let z = Complex64::new(2.0, 0.0);
        let p = ExtensionParams::hankel(0.3).unwrap();
        let a = eval_u_theta(p, z, 1.0).unwrap().value;
        let b = eval_u(0.3, z, 1.0).unwrap().value;
        assert!(rel(a, b) < 1e-15);

        let p = ExtensionParams::new(0.3, 0.7).unwrap();
        let a = eval_u_theta(p, z, 1.0).unwrap().value;
        let b = eval_u_theta(p.with_theta(0.7 + PI), z, 1.0).unwrap().value;
        assert!(rel(a, -b) < 1e-14);

        let p = ExtensionParams::new(0.4, 1.1).unwrap();
        let m = ExtensionParams::new(-0.4, 1.1).unwrap();
        let a = eval_u_theta(p, c(3.0), 0.5).unwrap().value;
        let b = eval_u_theta(m, c(3.0), 0.5).unwrap().value;
        assert!(rel(a, b) < 1e-12);
    }

    #[test]
    fn v_is_even_in_kappa() {
        let z = Complex64::new(1.0, 1.0);
        let a = eval_v(0.3, z, 1.0).unwrap();
        let b = eval_v(-0.3, z, 1.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn v_u_wronskian() {
        for &k in &[0.5, 0.0, 3e-3, -0.45, 0.9] {
            for &z in &[Complex64::new(0.0, 2.0), c(-1.0), Complex64::new(5.0, 0.1), Complex64::new(-0.5, -0.4)] {
                let expect = wronskian_vu(k, z).unwrap();
                for &r in &[0.01, 1.0, 10.0] {
                    let v = eval_v(k, z, r).unwrap();
                    let u = eval_u(k, z, r).unwrap();
                    assert!(rel(wronskian_at(v, u), expect) < 1e-10, "k={k} z={z} r={r}");
                }
            }
        }
    }

    #[test]
    fn v_decays_for_negative_energy() {
        // v ~ (√π/2)(1+i) z^{-1/4} e^{i z^{1/2} r}, and at E = -1 the prefactor has modulus √(π/2)
        let target = (PI / 2.0).sqrt();
        let mut prev = f64::INFINITY;
        for &r in &[10.0, 20.0, 40.0] {
            let v = eval_v(0.3, c(-1.0), r).unwrap().value;
            let ratio = v.norm() / (-r).exp();
            let dev = (ratio - target).abs();
            assert!(dev < 0.02 && dev < prev, "r={r} ratio={ratio}");
            prev = dev;
        }
    }

    #[test]
    fn v_rejects_the_cut() {
        assert!(matches!(eval_v(0.2, Complex64::new(0.0, -1.0), 1.0), Err(Error::Branch { .. })));
    }

    #[test]
    fn parameters_validate() {
        assert!(ExtensionParams::new(1.0, 0.0).is_err());
        assert!(ExtensionParams::new(0.5, f64::NAN).is_err());
        let p = ExtensionParams::new(0.5, -0.5).unwrap();
        assert!((p.canonical_theta() - (PI - 0.5)).abs() < 1e-15);
        assert!((p.theta_kappa() - PI / 4.0).abs() < 1e-16);
    }
}
