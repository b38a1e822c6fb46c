//! Singular m-functions and spectral measures.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::solutions::ExtensionParams;
use crate::special::elementary::{sinc, sinhc, sinhc_c, tanhc_c};
use crate::special::{cut_log, BranchCut, KAPPA_BLEND};

/// Distance from the bound-state energy below which `m_function` reports a pole.
pub const POLE_TOLERANCE: f64 = 1e-12;
/// Angular distance from `±ϑ_κ (mod π)` treated as the atom boundary.
pub const ATOM_BOUNDARY_TOLERANCE: f64 = 1e-12;

fn check_pole(p: ExtensionParams, z: Complex64) -> Result<()> {
    if let Ok(Some(e)) = bound_state_energy(p) {
        let dist = (z - e).norm();
        if dist < POLE_TOLERANCE {
            return Err(Error::Pole { re: z.re, im: z.im, pole: e, dist });
        }
    }
    Ok(())
}

/// `c = iπ - log z` with the logarithm cut along `arg z = 3π/2`.
fn shifted_log(z: Complex64) -> Result<Complex64> {
    Ok(Complex64::new(0.0, PI) - cut_log(z, BranchCut::ThreePiOver2)?)
}

/// The m-function `𝓜_{κ,ϑ}(z)`, Herglotz on the upper half-plane.
pub fn m_function(p: ExtensionParams, z: Complex64) -> Result<Complex64> {
    check_pole(p, z)?;
    let c = shifted_log(z)?;
    let (st, ct) = p.theta.sin_cos();
    if p.kappa.abs() >= KAPPA_BLEND {
        // ½ (cos ϑ₊ - ρ cos ϑ₋) / (sin ϑ₊ - ρ sin ϑ₋), ρ = e^{-iπκ} z^κ
        let rho = (-p.kappa * c).exp();
        let (tp, tm) = p.theta_pm();
        let num = tp.cos() - rho * tm.cos();
        let den = tp.sin() - rho * tm.sin();
        return Ok(0.5 * num / den);
    }
    // same Möbius map of T = cot ϑ_κ tanh(κc/2), which is regular at κ = 0
    let delta = p.theta_kappa();
    let t = c / PI * tanhc_c(0.5 * p.kappa * c) * (delta.cos() / sinc(delta));
    Ok(0.5 * (t * ct - st) / (t * st + ct))
}

/// `W(v^κ(z), u^κ_ϑ(z))` in closed form, continuous through κ = 0.
pub fn wronskian_v_u_theta(p: ExtensionParams, z: Complex64) -> Result<Complex64> {
    let c = shifted_log(z)?;
    let delta = p.theta_kappa();
    let a = 0.5 * p.kappa * c;
    let (st, ct) = p.theta.sin_cos();
    Ok(ct * a.cosh() / delta.cos() + st * c / PI * sinhc_c(a) / sinc(delta))
}

/// `𝓜_{κ,ϑ}(z) = -½ W(v, u_{ϑ-π/2}) / W(v, u_ϑ)` from closed-form Wronskians.
pub fn m_function_wronskian(p: ExtensionParams, z: Complex64) -> Result<Complex64> {
    check_pole(p, z)?;
    let num = wronskian_v_u_theta(p.with_theta(p.theta - 0.5 * PI), z)?;
    let den = wronskian_v_u_theta(p, z)?;
    Ok(-0.5 * num / den)
}

/// `Φ(κ, E) = -(ln E / (π sinc πκ)) sinhc(κ ln E / 2)`.
pub fn phi(kappa: f64, e: f64) -> f64 {
    let l = e.ln();
    -l / (PI * sinc(PI * kappa)) * sinhc(0.5 * kappa * l)
}

/// The spectral density `1/t_{κ,ϑ}(E)` on `E > 0`, zero elsewhere.
///
/// Evaluated as `½ / (A² + E^κ sin² ϑ₋)`, a sum of squares equal to `1/t`.
pub fn density(p: ExtensionParams, e: f64) -> f64 {
    if !(e > 0.0) {
        return 0.0;
    }
    let l = e.ln();
    let d = p.theta_kappa();
    let (sd, cd) = d.sin_cos();
    let h = (0.5 * p.kappa * l).exp();
    let (st, ct) = p.theta.sin_cos();
    let a = ct * (h.recip() + (2.0 * d).cos() * h) / (2.0 * cd)
        + st * (sd * h - l / PI * sinhc(0.5 * p.kappa * l) / sinc(d));
    let sm = (p.theta - d).sin();
    0.5 / (a * a + h * h * sm * sm)
}

/// `1/t_{κ,ϑ}(E)` with `t = 2 + Φ²(1 - cos 2ϑ cos πκ) + Φ(E^{-κ/2} + E^{κ/2}) sin 2ϑ`.
pub fn density_phi_form(p: ExtensionParams, e: f64) -> f64 {
    if !(e > 0.0) {
        return 0.0;
    }
    let f = phi(p.kappa, e);
    let h = (0.5 * p.kappa * e.ln()).exp();
    let th = 2.0 * p.theta;
    let t = 2.0 + f * f * (1.0 - th.cos() * (PI * p.kappa).cos()) + f * (h + h.recip()) * th.sin();
    t.recip()
}

/// `½ Θ(E) E^κ`, the density for `ϑ = ϑ_κ`.
pub fn v_kappa_density(kappa: f64, e: f64) -> f64 {
    if e > 0.0 {
        0.5 * e.powf(kappa)
    } else {
        0.0
    }
}

/// Whether `(κ, ϑ)` carries an atom; errors within tolerance of the boundary.
fn atom_present(p: ExtensionParams) -> Result<bool> {
    let d = p.theta_kappa().abs();
    let t = p.canonical_theta();
    let near = |x: f64| (t - x).abs() < ATOM_BOUNDARY_TOLERANCE;
    if near(d) || near(PI - d) || (d == 0.0 && near(PI)) {
        return Err(Error::AtomBoundary { kappa: p.kappa, theta: p.theta });
    }
    Ok(t > d && t < PI - d)
}

// ln((1+y)/(1-y))/y, continued by its Taylor series near 0
fn log_ratio(y: f64) -> f64 {
    if y.abs() > 1e-3 {
        ((1.0 + y) / (1.0 - y)).ln() / y
    } else {
        let y2 = y * y;
        2.0 + 2.0 * y2 / 3.0 + 2.0 * y2 * y2 / 5.0
    }
}

/// The negative eigenvalue `E_{κ,ϑ}`, if the realization has one.
pub fn bound_state_energy(p: ExtensionParams) -> Result<Option<f64>> {
    if !atom_present(p)? {
        return Ok(None);
    }
    let t = p.canonical_theta();
    let delta = p.theta_kappa();
    let cot = t.cos() / t.sin();
    let expo = PI * cot / (2.0 * delta.cos()) * sinc(delta) * log_ratio(cot * delta.tan());
    let e = -expo.exp();
    if !e.is_finite() {
        return Err(Error::Domain(format!("bound-state energy overflows at kappa = {}, theta = {}", p.kappa, p.theta)));
    }
    Ok(Some(e))
}

/// The mass `π² sinc(πκ) |E_{κ,ϑ}| / (2 sin ϑ₊ sin ϑ₋)` of the atom, if present.
pub fn atom_weight(p: ExtensionParams) -> Result<Option<f64>> {
    let Some(e) = bound_state_energy(p)? else {
        return Ok(None);
    };
    let t = p.canonical_theta();
    let d = p.theta_kappa();
    Ok(Some(PI * PI * sinc(PI * p.kappa) * e.abs() / (2.0 * (t + d).sin() * (t - d).sin())))
}

/// A point mass of the spectral measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub energy: f64,
    pub weight: f64,
}

/// Absolutely continuous density on `(0, ∞)` plus at most one atom on `(-∞, 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralMeasure {
    pub params: ExtensionParams,
    pub atom: Option<Atom>,
}

impl SpectralMeasure {
    pub fn density(&self, e: f64) -> f64 {
        density(self.params, e)
    }

    /// `∫ φ dσ` with the continuous part taken over `[lo, hi] ∩ (0, ∞)`.
    pub fn integrate(&self, phi: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
        let mut total = 0.0;
        let lo = lo.max(0.0);
        if hi > lo {
            let (v, _) = crate::quadrature::integrate(|e| phi(e) * self.density(e), lo, hi, tol)?;
            total += v;
        }
        if let Some(a) = self.atom {
            total += a.weight * phi(a.energy);
        }
        Ok(total)
    }
}

/// Assembles the spectral measure; on the atom boundary the measure has no atom.
pub fn build_measure(p: ExtensionParams) -> Result<SpectralMeasure> {
    let atom = match (bound_state_energy(p), atom_weight(p)) {
        (Ok(Some(energy)), Ok(Some(weight))) => Some(Atom { energy, weight }),
        (Ok(None), _) | (Err(Error::AtomBoundary { .. }), _) => None,
        (Err(e), _) | (_, Err(e)) => return Err(e),
        (Ok(Some(_)), Ok(None)) => unreachable!("weight exists whenever the energy does"),
    };
    Ok(SpectralMeasure { params: p, atom })
}

/// Default imaginary offsets for the boundary-limit check.
pub const DEFAULT_ETAS: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// A Richardson-extrapolated boundary value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitEstimate {
    pub limit: f64,
    pub error: f64,
    /// Convergence order in `η` used for the extrapolation.
    pub order: f64,
}

/// Limit of `Im 𝓜_{κ,ϑ}(E + iη)` as `η ↓ 0`, extrapolated over `etas`.
pub fn m_limit_check(p: ExtensionParams, e: f64, etas: &[f64]) -> Result<LimitEstimate> {
    if etas.len() < 2 {
        return Err(Error::Validation("need at least two eta values".into()));
    }
    if etas.iter().any(|&h| !(h >= 1e-6)) || etas.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::Validation(format!("etas must be decreasing and >= 1e-6, got {etas:?}")));
    }
    if e == 0.0 {
        return Err(Error::Validation("E = 0 is the branch point".into()));
    }
    if let Ok(Some(eb)) = bound_state_energy(p) {
        if (e - eb).abs() < POLE_TOLERANCE {
            return Err(Error::Pole { re: e, im: 0.0, pole: eb, dist: (e - eb).abs() });
        }
    }
    let vals = etas
        .iter()
        .map(|&h| m_function(p, Complex64::new(e, h)).map(|m| m.im))
        .collect::<Result<Vec<_>>>()?;
    richardson(etas, &vals)
}

fn richardson(etas: &[f64], vals: &[f64]) -> Result<LimitEstimate> {
    let diffs: Vec<f64> = vals.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let noise = 64.0 * f64::EPSILON * scale.max(f64::MIN_POSITIVE);
    if diffs.windows(2).any(|d| d[1] > d[0] && d[1] > noise) {
        return Err(Error::Convergence(format!("differences {diffs:?} are not decreasing")));
    }
    let mut order = 1.0;
    if diffs.len() >= 2 {
        let n = diffs.len();
        let (d0, d1) = (diffs[n - 2], diffs[n - 1]);
        let ratio = etas[n - 1] / etas[n];
        if d0 > noise && d1 > noise {
            let est = (d0 / d1).ln() / ratio.ln();
            if est.is_finite() && (0.5..=4.0).contains(&est) {
                order = est;
            }
        }
    }
    if (order - order.round()).abs() < 0.25 {
        order = order.round();
    }
    // Neville's scheme in x = η^order, evaluated at x = 0
    let x: Vec<f64> = etas.iter().map(|h| h.powf(order)).collect();
    let n = vals.len();
    let mut table = vals.to_vec();
    let mut prev = table[n - 1];
    for m in 1..n {
        if m == n - 1 {
            prev = table[n - 2];
        }
        for i in (m..n).rev() {
            table[i] = (x[i - m] * table[i] - x[i] * table[i - 1]) / (x[i - m] - x[i]);
        }
    }
    let limit = table[n - 1];
    let error = if n >= 3 { (limit - prev).abs() } else { diffs[0] };
    Ok(LimitEstimate { limit, error, order })
}

/// `A = -(1/2πi) ∮ 𝓜 dz` around the bound state by the trapezoid rule; the atom weight is `πA`.
pub fn residue_weight(p: ExtensionParams, radius: f64, nodes: usize) -> Result<Option<f64>> {
    let Some(e) = bound_state_energy(p)? else {
        return Ok(None);
    };
    let rad = radius.min(0.25 * e.abs());
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..nodes {
        let t = 2.0 * PI * (k as f64 + 0.5) / nodes as f64;
        let dz = Complex64::from_polar(rad, t);
        let m = m_function(p, Complex64::new(e, 0.0) + dz)?;
        // dz/dt = i·dz, dt = 2π/N
        acc += m * Complex64::i() * dz;
    }
    let integral = acc * (2.0 * PI / nodes as f64);
    let a = -integral / Complex64::new(0.0, 2.0 * PI);
    Ok(Some(PI * a.re))
}
