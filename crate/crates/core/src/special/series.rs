//! Power series in `ζ` behind the regular and logarithmic solutions.
//!
//! Every series here has the shape `Σ A_n c_n` with `A_n = (-ζ/4)^n / n!`
//! and real coefficients `c_n` generated by a recurrence. The driver sums
//! in double-double and also returns `Σ n A_n c_n = ζ ∂_ζ Σ A_n c_n`.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use super::asymptotic;
use super::branch::log_upper;
use super::dd::{Dd, DdComplex};
use super::elementary::{sinc, sinhc_c};
use super::gamma::{digamma, gamma_real, rgamma_even_odd, EULER_GAMMA};
use crate::error::{Error, Result};

/// Below this `|κ|` the logarithmic solution uses the κ-even/odd split.
pub const KAPPA_BLEND: f64 = 1e-2;

/// Truncation and regime controls for the series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub rel_tol: f64,
    pub max_terms: usize,
    /// Threshold on `|ζ|^{1/2}` above which large-argument expansions are used.
    pub asymptotic_switch: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig { rel_tol: 1e-14, max_terms: 500, asymptotic_switch: 25.0 }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || self.max_terms == 0 || !(self.asymptotic_switch > 0.0) {
            return Err(Error::Validation(format!("bad series configuration {self:?}")));
        }
        Ok(())
    }

    pub(crate) fn use_asymptotic(&self, zeta: Complex64) -> bool {
        zeta.norm().sqrt() >= self.asymptotic_switch
    }
}

/// A series value together with `ζ` times its ζ-derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPair {
    pub value: Complex64,
    pub zeta_deriv: Complex64,
}

/// Sums `K` series sharing the kernel `A_n`; `coef(n)` yields `c_n` for each.
fn sum_series<const K: usize>(
    zeta: Complex64,
    cfg: &SeriesConfig,
    mut coef: impl FnMut(usize) -> [Dd; K],
) -> Result<[SeriesPair; K]> {
    let q = DdComplex::from_c64(-zeta * 0.25);
    let qmag = zeta.norm() * 0.25;
    let mut a = DdComplex::from_c64(Complex64::new(1.0, 0.0));
    let mut sums = [DdComplex::ZERO; K];
    let mut nsums = [DdComplex::ZERO; K];
    let mut peak = 0.0f64;
    let mut quiet = 0;
    let mut last = 0.0;
    for n in 0..cfg.max_terms {
        if n > 0 {
            a = (a * q).div_real(Dd::new(n as f64));
        }
        let c = coef(n);
        let mut small = true;
        for k in 0..K {
            let t = a.scale(c[k]);
            let nt = t.scale_f64(n as f64);
            sums[k] = sums[k] + t;
            nsums[k] = nsums[k] + nt;
            let tm = t.mag();
            peak = peak.max(tm);
            last = tm;
            let floor = 1e-32 * peak;
            let ok_t = tm <= cfg.rel_tol * sums[k].mag() || tm <= floor;
            let ok_nt = nt.mag() <= cfg.rel_tol * nsums[k].mag() || nt.mag() <= floor;
            small &= ok_t && ok_nt;
        }
        let past_peak = 4.0 * (n as f64) * (n as f64 - 1.0) > qmag * 4.0;
        if small && past_peak {
            quiet += 1;
            if quiet >= 2 {
                let mut out = [SeriesPair { value: Complex64::default(), zeta_deriv: Complex64::default() }; K];
                for k in 0..K {
                    out[k] = SeriesPair { value: sums[k].to_c64(), zeta_deriv: nsums[k].to_c64() };
                }
                return Ok(out);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::SeriesFailure { terms: cfg.max_terms, last_term: last })
}

fn check_finite(zeta: Complex64) -> Result<()> {
    if zeta.re.is_finite() && zeta.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("non-finite series argument {zeta}")))
    }
}

/// `Σ A_n / Γ(n+1+κ)`, i.e. `2^κ χ_κ(ζ)`, by direct summation.
fn chi_hat_series(kappa: f64, zeta: Complex64, cfg: &SeriesConfig) -> Result<SeriesPair> {
    let g = gamma_real(kappa + 1.0)?;
    let mut c = Dd::ONE / Dd::new(g);
    let [p] = sum_series(zeta, cfg, |n| {
        if n > 0 {
            c = c / (Dd::new(n as f64) + Dd::new(kappa));
        }
        [c]
    })?;
    Ok(p)
}

/// `χ_κ(ζ)` and `ζ χ_κ'(ζ)` by direct series summation.
pub fn chi_series(kappa: f64, zeta: Complex64, cfg: &SeriesConfig) -> Result<SeriesPair> {
    check_finite(zeta)?;
    if kappa <= -1.0 && kappa == kappa.round() {
        return Err(Error::Domain(format!("chi undefined for negative integer order {kappa}")));
    }
    let p = chi_hat_series(kappa, zeta, cfg)?;
    let s = (-kappa * LN_2).exp();
    Ok(SeriesPair { value: p.value * s, zeta_deriv: p.zeta_deriv * s })
}

/// `χ_κ(ζ)` and `ζ χ_κ'(ζ)` from the large-argument Bessel expansion.
pub fn chi_asymptotic(kappa: f64, zeta: Complex64) -> Result<SeriesPair> {
    let x = normalized(zeta).sqrt();
    let jy = asymptotic::bessel_jy(kappa, x)?;
    let jy1 = asymptotic::bessel_jy(kappa + 1.0, x)?;
    let scale = (-kappa * log_upper(x)).exp();
    Ok(SeriesPair { value: scale * jy.j, zeta_deriv: -0.5 * x * scale * jy1.j })
}

// Put the negative real axis on its upper side so square roots and logs agree.
pub(crate) fn normalized(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

/// `χ_κ(ζ) = Σ (-1)^n ζ^n / (2^κ Γ(κ+n+1) n! 4^n)` with `ζ χ_κ'(ζ)`.
pub fn chi_pair(kappa: f64, zeta: Complex64, cfg: &SeriesConfig) -> Result<SeriesPair> {
    check_finite(zeta)?;
    if cfg.use_asymptotic(zeta) {
        chi_asymptotic(kappa, zeta)
    } else {
        chi_series(kappa, zeta, cfg)
    }
}

/// The entire function `χ_κ(ζ) = ζ^{-κ/2} J_κ(ζ^{1/2})`.
pub fn chi(kappa: f64, zeta: Complex64, cfg: &SeriesConfig) -> Result<Complex64> {
    chi_pair(kappa, zeta, cfg).map(|p| p.value)
}

/// `∂_κ χ_κ(ζ)`, term by term.
pub fn chi_dkappa(kappa: f64, zeta: Complex64, cfg: &SeriesConfig) -> Result<Complex64> {
    check_finite(zeta)?;
    if kappa <= -1.0 {
        return Err(Error::Domain(format!("chi_dkappa requires kappa > -1, got {kappa}")));
    }
    let g = gamma_real(kappa + 1.0)?;
    let d0 = LN_2 + digamma(kappa + 1.0)?;
    let mut c = Dd::ONE / Dd::new(g);
    let mut h = Dd::new(d0);
    let [p] = sum_series(zeta, cfg, |n| {
        if n > 0 {
            let kn = Dd::new(n as f64) + Dd::new(kappa);
            c = c / kn;
            h = h + kn.recip();
        }
        [-(c * h)]
    })?;
    Ok(p.value * (-kappa * LN_2).exp())
}

/// `𝒴(ζ) = Σ_{n≥1} (-1)^n c_n ζ^n / ((n!)^2 4^n)` with harmonic numbers `c_n`.
pub fn script_y_pair(zeta: Complex64, cfg: &SeriesConfig) -> Result<SeriesPair> {
    check_finite(zeta)?;
    let mut f = Dd::ONE;
    let mut h = Dd::ZERO;
    let [p] = sum_series(zeta, cfg, |n| {
        if n > 0 {
            let nd = Dd::new(n as f64);
            f = f / nd;
            h = h + nd.recip();
        }
        [f * h]
    })?;
    Ok(p)
}

/// `𝒴(ζ)`.
pub fn script_y(zeta: Complex64, cfg: &SeriesConfig) -> Result<Complex64> {
    script_y_pair(zeta, cfg).map(|p| p.value)
}

/// The logarithmic kernel `W_κ(ℓ, ζ)` and its derivatives `∂_ℓ W`, `ζ ∂_ζ W`.
///
/// `W_κ(ℓ, ζ) = [e^{κℓ} χ̂_κ(ζ) cos πκ − e^{-κℓ} χ̂_{-κ}(ζ)] / sin πκ` with
/// `χ̂_κ = 2^κ χ_κ`, continued analytically to `κ = 0`. With `ℓ = ln(r/2)`
/// and `ζ = r²z` this is `w^κ(z|r)/√r`; with `ℓ = Log(x/2)`, `ζ = x²` it is `Y_κ(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogKernel {
    pub value: Complex64,
    pub d_ell: Complex64,
    pub zeta_deriv: Complex64,
}

/// Series evaluation of [`LogKernel`], choosing the κ-split form for `|κ| < KAPPA_BLEND`.
pub fn log_kernel(kappa: f64, ell: Complex64, zeta: Complex64, cfg: &SeriesConfig) -> Result<LogKernel> {
    if kappa.abs() < KAPPA_BLEND {
        log_kernel_split(kappa, ell, zeta, cfg)
    } else {
        log_kernel_direct(kappa, ell, zeta, cfg)
    }
}

/// The κ-difference form of [`LogKernel`]; loses accuracy like `1/sin πκ` near `κ = 0`.
pub fn log_kernel_direct(kappa: f64, ell: Complex64, zeta: Complex64, cfg: &SeriesConfig) -> Result<LogKernel> {
    check_finite(zeta)?;
    let s = (PI * kappa).sin();
    if s == 0.0 {
        return Err(Error::Domain(format!("direct log kernel undefined at integer order {kappa}")));
    }
    let cs = (PI * kappa).cos();
    let p = chi_hat_series(kappa, zeta, cfg)?;
    let m = chi_hat_series(-kappa, zeta, cfg)?;
    let ep = (kappa * ell).exp();
    let em = (-kappa * ell).exp();
    Ok(LogKernel {
        value: (ep * p.value * cs - em * m.value) / s,
        d_ell: kappa * (ep * p.value * cs + em * m.value) / s,
        zeta_deriv: (ep * p.zeta_deriv * cs - em * m.zeta_deriv) / s,
    })
}

/// The κ-even/odd split of [`LogKernel`], analytic through `κ = 0`.
///
/// Writes `1/Γ(n+1±κ) = E_n ± κ O_n`; both parts satisfy a coupled
/// recurrence in `n` that never divides by `κ`.
pub fn log_kernel_split(kappa: f64, ell: Complex64, zeta: Complex64, cfg: &SeriesConfig) -> Result<LogKernel> {
    check_finite(zeta)?;
    if kappa.abs() >= 0.5 {
        return Err(Error::Domain(format!("split log kernel is for small |kappa|, got {kappa}")));
    }
    let k2 = Dd::new(kappa) * Dd::new(kappa);
    let (e0, o0) = rgamma_even_odd(kappa);
    let mut e = Dd::new(e0);
    let mut o = Dd::new(o0);
    let [se, so] = sum_series(zeta, cfg, |n| {
        if n > 0 {
            let nd = Dd::new(n as f64);
            let den = nd * nd - k2;
            let en = (nd * e - k2 * o) / den;
            let on = (nd * o - e) / den;
            e = en;
            o = on;
        }
        [e, o]
    })?;

    let delta = 0.5 * PI * kappa;
    let tan_d = delta.tan();
    let big_k = 2.0 / PI * delta.cos() / sinc(delta);
    let kl = kappa * ell;
    let ch = kl.cosh();
    let sh = kl.sinh();
    let ell_sinhc = ell * sinhc_c(kl);

    let w = |e: Complex64, o: Complex64| -tan_d * (ch * e + sh * kappa * o) + big_k * (ch * o + ell_sinhc * e);
    let value = w(se.value, so.value);
    let zeta_deriv = w(se.zeta_deriv, so.zeta_deriv);
    let d_ell = -tan_d * kappa * (sh * se.value + kappa * ch * so.value)
        + big_k * (kappa * sh * so.value + ch * se.value);
    Ok(LogKernel { value, d_ell, zeta_deriv })
}

/// `𝒴` route to the κ = 0 kernel: `(2/π)[(ℓ + γ) χ_0(ζ) − 𝒴(ζ)]`.
pub fn log_kernel_zero(ell: Complex64, zeta: Complex64, cfg: &SeriesConfig) -> Result<Complex64> {
    let c = chi_series(0.0, zeta, cfg)?;
    let y = script_y(zeta, cfg)?;
    Ok(2.0 / PI * ((ell + EULER_GAMMA) * c.value - y))
}
