//! The acceptance suite: ten numerical checks with pinned tolerances.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::measure::{atom_weight, build_measure, density, m_limit_check, residue_weight, v_kappa_density, DEFAULT_ETAS};
use crate::solutions::{
    eval_u, eval_u_theta, eval_v, eval_w, ode_residual, wronskian_at, wronskian_vu, ExtensionParams,
};
use crate::transform::{
    bound_state_norm, diag_defect, forward, forward_hankel, parseval_defect, round_trip_defect, Bump, GridFunction,
    SmoothFunction,
};

pub const ODE_TOL: f64 = 1e-7;
pub const ODE_STEP: f64 = 1e-3;
pub const ODE_SEED: u64 = 1;
pub const WRONSKIAN_TOL: f64 = 1e-9;
pub const LIMIT_TOL: f64 = 1e-6;
pub const LIMIT_SEED: u64 = 3;
pub const RESIDUE_TOL: f64 = 1e-6;
pub const RESIDUE_RADIUS: f64 = 1e-4;
pub const RESIDUE_NODES: usize = 64;
pub const PARSEVAL_TOL: f64 = 1e-4;
pub const ROUND_TRIP_TOL: f64 = 1e-4;
pub const E_MAX: f64 = 400.0;
pub const ROUND_TRIP_E_MAX: [f64; 3] = [100.0, 200.0, 400.0];
pub const DIAG_TOL: f64 = 1e-6;
pub const DIAG_ENERGIES: [f64; 4] = [0.5, 1.0, 2.0, 5.0];
pub const NORM_TOL: f64 = 1e-6;
pub const CONTINUITY_MEASURE_TOL: f64 = 1e-4;
pub const CONTINUITY_SOLUTION_TOL: f64 = 1e-6;
pub const HANKEL_PATH_TOL: f64 = 1e-12;
pub const HANKEL_DENSITY_TOL: f64 = 1e-12;
pub const SINE_KERNEL_TOL: f64 = 1e-9;
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Outcome of one criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The spectral tail could not be certified below tolerance.
    Inconclusive,
}

/// One line of the verification report.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub status: Status,
    /// Worst measured defect, on the scale of `tolerance`.
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl CriterionResult {
    fn new(id: u8, name: &'static str, measured: f64, tolerance: f64, detail: String) -> Self {
        let status = if measured <= tolerance { Status::Pass } else { Status::Fail };
        CriterionResult { id, name, status, measured, tolerance, detail }
    }

    fn error(id: u8, name: &'static str, tolerance: f64, err: crate::Error) -> Self {
        CriterionResult { id, name, status: Status::Fail, measured: f64::NAN, tolerance, detail: format!("error: {err}") }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// `[PASS] 3 m-function boundary limit: measured 1.2e-8 <= 1e-6 (...)`.
    pub fn line(&self) -> String {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        format!(
            "[{tag}] {:>2} {}: measured {:.3e} (tolerance {:.0e}) {}",
            self.id, self.name, self.measured, self.tolerance, self.detail
        )
    }
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn params(k: f64, t: f64) -> ExtensionParams {
    ExtensionParams::new(k, t).expect("fixed parameters are valid")
}

fn wrap(id: u8, name: &'static str, tol: f64, f: impl FnOnce() -> Result<CriterionResult>) -> CriterionResult {
    f().unwrap_or_else(|e| CriterionResult::error(id, name, tol, e))
}

/// Five-point residual of `u^κ_ϑ` at 50 seeded random `(κ, ϑ, E, r)`.
pub fn ode_correctness() -> CriterionResult {
    const NAME: &str = "ODE correctness";
    wrap(1, NAME, ODE_TOL, || {
        let mut rng = ChaCha8Rng::seed_from_u64(ODE_SEED);
        let mut worst = (0.0, 0.0, 0.0, 0.0, 0.0);
        let mut fails = 0;
        for _ in 0..50 {
            let k = rng.random_range(-0.95..0.95);
            let t = rng.random_range(0.0..PI);
            let e = rng.random_range(-5.0..25.0);
            let r = rng.random_range(0.05..5.0);
            let p = params(k, t);
            let res = ode_residual(k, c(e), |x| eval_u_theta(p, c(e), x), r, ODE_STEP)?;
            if res > ODE_TOL {
                fails += 1;
            }
            if res > worst.0 {
                worst = (res, k, t, e, r);
            }
        }
        let (res, k, t, e, r) = worst;
        Ok(CriterionResult::new(
            1,
            NAME,
            res,
            ODE_TOL,
            format!("{fails}/50 above tolerance; worst at kappa={k:.4} theta={t:.4} E={e:.4} r={r:.4}"),
        ))
    })
}

/// Closed-form Wronskians of `(u, w)`, `(u_ϑ, u_{ϑ-π/2})` and `(v, u)` at `r ∈ {0.01, 1, 10}`.
pub fn wronskian_identities() -> CriterionResult {
    const NAME: &str = "Wronskian identities";
    wrap(2, NAME, WRONSKIAN_TOL, || {
        let kappas = [0.0, 4e-3, -7e-3, 0.35, -0.8];
        let zs = [c(1.0), Complex64::new(2.0, 0.3), Complex64::new(-0.03, 0.02), Complex64::new(5.0, -1.0)];
        let theta = 0.7;
        let mut worst = 0.0f64;
        for &k in &kappas {
            let p = params(k, theta);
            let q = p.with_theta(theta - 0.5 * PI);
            for &z in &zs {
                let vu = wronskian_vu(k, z)?;
                for &r in &[1e-2, 1.0, 10.0] {
                    let u = eval_u(k, z, r)?;
                    let w = eval_w(k, z, r)?;
                    let d1 = (wronskian_at(u, w) - 2.0 / PI).norm() / (2.0 / PI);
                    let ut = eval_u_theta(p, z, r)?;
                    let uq = eval_u_theta(q, z, r)?;
                    let d2 = (wronskian_at(ut, uq) + 2.0 / PI).norm() / (2.0 / PI);
                    let v = eval_v(k, z, r)?;
                    let d3 = (wronskian_at(v, u) - vu).norm() / vu.norm();
                    worst = worst.max(d1).max(d2).max(d3);
                }
            }
        }
        Ok(CriterionResult::new(2, NAME, worst, WRONSKIAN_TOL, "20 (kappa, z) points, relative".into()))
    })
}

/// Extrapolated `Im 𝓜(E + i0)` against the density on `E > 0` and against 0 on `E < 0`.
pub fn boundary_limit() -> CriterionResult {
    const NAME: &str = "m-function boundary limit";
    wrap(3, NAME, LIMIT_TOL, || {
        let mut rng = ChaCha8Rng::seed_from_u64(LIMIT_SEED);
        let mut worst = 0.0f64;
        let mut count = 0;
        while count < 30 {
            let k = if count % 6 == 0 { rng.random_range(-9e-3..9e-3) } else { rng.random_range(-0.95..0.95) };
            let t = rng.random_range(0.0..PI);
            let e = 10f64.powf(rng.random_range(-1.5..1.5));
            let p = params(k, t);
            let est = m_limit_check(p, e, &DEFAULT_ETAS)?;
            worst = worst.max((est.limit - density(p, e)).abs());
            count += 1;
        }
        let mut neg = 0;
        while neg < 10 {
            let p = params(rng.random_range(-0.95..0.95), rng.random_range(0.0..PI));
            let e = -10f64.powf(rng.random_range(-1.0..1.0));
            if let Some(a) = build_measure(p)?.atom {
                if (a.energy - e).abs() < 0.1 * e.abs() {
                    continue;
                }
            }
            worst = worst.max(m_limit_check(p, e, &DEFAULT_ETAS)?.limit.abs());
            neg += 1;
        }
        Ok(CriterionResult::new(3, NAME, worst, LIMIT_TOL, "30 samples on E > 0, 10 on E < 0, absolute".into()))
    })
}

/// Contour residue of `𝓜` at the bound state against the atom weight.
pub fn atom_consistency() -> CriterionResult {
    const NAME: &str = "atom consistency";
    wrap(4, NAME, RESIDUE_TOL, || {
        let samples = [
            (0.0, PI / 2.0),
            (0.0, 1.0),
            (1e-3, 1.3),
            (-1e-3, 2.0),
            (0.5, PI / 2.0),
            (-0.5, 1.1),
            (0.3, 2.2),
            (-0.3, 1.2),
            (0.8, 1.6),
            (-0.9, 1.6),
        ];
        let mut worst = 0.0f64;
        for &(k, t) in &samples {
            let p = params(k, t);
            let w = atom_weight(p)?.expect("sample carries an atom");
            let r = residue_weight(p, RESIDUE_RADIUS, RESIDUE_NODES)?.expect("sample carries an atom");
            worst = worst.max((r - w).abs() / w);
        }
        Ok(CriterionResult::new(4, NAME, worst, RESIDUE_TOL, "10 atom-bearing samples, relative".into()))
    })
}

/// Parameter points shared by the transform criteria.
pub fn transform_points() -> [ExtensionParams; 3] {
    [params(0.0, PI / 2.0), ExtensionParams::hankel(0.5).expect("valid"), params(-0.3, 1.2)]
}

/// Parseval defects at `E_MAX` and round-trip defects over `ROUND_TRIP_E_MAX`.
pub fn unitarity() -> CriterionResult {
    const NAME: &str = "unitarity";
    wrap(5, NAME, PARSEVAL_TOL, || {
        let bumps = [Bump::new(1.0, 2.0, 3)?, Bump::new(0.5, 4.5, 3)?, Bump::new(0.5, 3.0, 4)?];
        let trip = Bump::new(0.5, 4.5, 3)?;
        let mut worst_parseval = 0.0f64;
        let mut worst_trip = 0.0f64;
        let mut inconclusive = false;
        let mut monotone = true;
        for p in transform_points() {
            for b in &bumps {
                let g = GridFunction::from_smooth(b, E_MAX)?;
                let rep = parseval_defect(p, &g, E_MAX)?;
                inconclusive |= rep.inconclusive();
                worst_parseval = worst_parseval.max(rep.defect);
            }
            let g = GridFunction::from_smooth(&trip, E_MAX)?;
            let d = ROUND_TRIP_E_MAX.iter().map(|&e| round_trip_defect(p, &g, e)).collect::<Result<Vec<_>>>()?;
            monotone &= d.windows(2).all(|w| w[1] < w[0]);
            worst_trip = worst_trip.max(d[d.len() - 1]);
        }
        let measured = worst_parseval.max(worst_trip * PARSEVAL_TOL / ROUND_TRIP_TOL);
        let mut res = CriterionResult::new(
            5,
            NAME,
            measured,
            PARSEVAL_TOL,
            format!(
                "parseval {worst_parseval:.3e}, round trip {worst_trip:.3e}, decreasing over e_max: {monotone}"
            ),
        );
        if !monotone {
            res.status = Status::Fail;
        } else if inconclusive && res.status == Status::Pass {
            res.status = Status::Inconclusive;
        }
        Ok(res)
    })
}

/// `U(hψ) = E Uψ` for a `C³` bump.
pub fn diagonalization() -> CriterionResult {
    const NAME: &str = "diagonalization";
    wrap(6, NAME, DIAG_TOL, || {
        let b = Bump::new(1.0, 2.0, 4)?;
        let mut worst = 0.0f64;
        for p in transform_points() {
            worst = worst.max(diag_defect(p, &b, &DIAG_ENERGIES)?);
        }
        Ok(CriterionResult::new(6, NAME, worst, DIAG_TOL, "E in {0.5, 1, 2, 5}".into()))
    })
}

/// `‖u^κ_ϑ(E_{κ,ϑ})‖² = 1/σ({E_{κ,ϑ}})`.
pub fn bound_state_norms() -> CriterionResult {
    const NAME: &str = "bound-state norm";
    wrap(7, NAME, NORM_TOL, || {
        let mut worst = 0.0f64;
        let mut detail = Vec::new();
        for &(k, expect) in &[(0.0, 2.0 / (PI * PI)), (0.5, 0.5 / PI)] {
            let p = params(k, PI / 2.0);
            let n = bound_state_norm(p)?.expect("atom present");
            let w = atom_weight(p)?.expect("atom present");
            worst = worst.max((n * w - 1.0).abs()).max((n - expect).abs() / expect);
            detail.push(format!("kappa={k}: {n:.12}"));
        }
        Ok(CriterionResult::new(7, NAME, worst, NORM_TOL, detail.join(", ")))
    })
}

struct EnergyBump;

impl EnergyBump {
    const LO: f64 = -2.0;
    const HI: f64 = 4.0;

    fn eval(e: f64) -> f64 {
        if e <= Self::LO || e >= Self::HI {
            0.0
        } else {
            ((e - Self::LO) * (Self::HI - e)).powi(3)
        }
    }
}

/// `∫φ d𝒱_{κ,ϑ} → ∫φ d𝒱_{0,ϑ}` along `κ = ±10⁻ᵏ` and `u^κ_ϑ → u⁰_ϑ`.
pub fn kappa_continuity() -> CriterionResult {
    const NAME: &str = "kappa = 0 continuity";
    wrap(8, NAME, CONTINUITY_MEASURE_TOL, || {
        let integral = |k: f64, t: f64| -> Result<f64> {
            build_measure(params(k, t))?.integrate(EnergyBump::eval, EnergyBump::LO, EnergyBump::HI, 1e-12)
        };
        let mut worst_last = 0.0f64;
        let mut decreasing = true;
        for &t in &[PI / 2.0, 2.5, 1.0] {
            let base = integral(0.0, t)?;
            for sign in [1.0, -1.0] {
                let gaps = (2..=5)
                    .map(|j| integral(sign * 10f64.powi(-j), t).map(|v| (v - base).abs()))
                    .collect::<Result<Vec<_>>>()?;
                decreasing &= gaps.windows(2).all(|w| w[1] <= w[0]);
                worst_last = worst_last.max(gaps[3]);
            }
        }
        let mut worst_u = 0.0f64;
        for &t in &[0.3, PI / 2.0, 2.5] {
            for &e in &[-3.0, -0.5, 0.5, 2.0, 10.0] {
                for &r in &[0.1, 0.5, 1.0, 3.0] {
                    let u0 = eval_u_theta(params(0.0, t), c(e), r)?.value;
                    for k in [1e-5, -1e-5] {
                        let uk = eval_u_theta(params(k, t), c(e), r)?.value;
                        worst_u = worst_u.max((uk - u0).norm());
                    }
                }
            }
        }
        let measured = worst_last.max(worst_u * CONTINUITY_MEASURE_TOL / CONTINUITY_SOLUTION_TOL);
        let mut res = CriterionResult::new(
            8,
            NAME,
            measured,
            CONTINUITY_MEASURE_TOL,
            format!("measure gap at 1e-5: {worst_last:.3e}, gaps decreasing: {decreasing}, solution gap: {worst_u:.3e}"),
        );
        if !decreasing {
            res.status = Status::Fail;
        }
        Ok(res)
    })
}

/// `ϑ = ϑ_κ` gives the Hankel measure and transform; `κ = 1/2` gives the sine transform.
pub fn hankel_specialization() -> CriterionResult {
    const NAME: &str = "Hankel specialization";
    wrap(9, NAME, HANKEL_PATH_TOL, || {
        let energies = [0.01, 0.3, 1.0, 4.0, 50.0, 350.0];
        let mut dens = 0.0f64;
        let mut path = 0.0f64;
        let bump = Bump::new(1.0, 2.0, 3)?;
        let g = GridFunction::from_smooth(&bump, E_MAX)?;
        for &k in &[-0.9, -0.3, -5e-3, 0.0, 2e-3, 0.5, 0.9] {
            let p = ExtensionParams::hankel(k)?;
            let m = build_measure(p)?;
            if m.atom.is_some() {
                dens = f64::INFINITY;
            }
            for &e in &energies {
                let v = v_kappa_density(k, e);
                dens = dens.max((m.density(e) - v).abs() / v);
            }
            let a = forward(p, &g, &energies)?;
            let h = forward_hankel(k, &g, &energies)?;
            for (x, y) in a.values.iter().zip(&h) {
                path = path.max((x - y).abs());
            }
        }
        let a = forward(ExtensionParams::hankel(0.5)?, &g, &energies)?;
        let rule = crate::quadrature::FixedRule::gauss_legendre(400);
        let mut sine = 0.0f64;
        for (i, &e) in energies.iter().enumerate() {
            let s = e.sqrt();
            let exact = rule.integrate(1.0, 2.0, |r| (2.0 / PI).sqrt() * (s * r).sin() / s * bump.value(r));
            sine = sine.max((a.values[i] - exact).abs());
        }
        let measured = path
            .max(dens * HANKEL_PATH_TOL / HANKEL_DENSITY_TOL)
            .max(sine * HANKEL_PATH_TOL / SINE_KERNEL_TOL);
        Ok(CriterionResult::new(
            9,
            NAME,
            measured,
            HANKEL_PATH_TOL,
            format!("density {dens:.3e}, U_kappa path {path:.3e}, sine kernel {sine:.3e}"),
        ))
    })
}

/// π-periodicity, sign flip under `ϑ → ϑ + π`, and κ-evenness.
pub fn symmetries() -> CriterionResult {
    const NAME: &str = "symmetries";
    wrap(10, NAME, SYMMETRY_TOL, || {
        let rel = |a: f64, b: f64| (a - b).abs() / (1.0 + a.abs());
        let mut worst = 0.0f64;
        for &k in &[0.0, 3e-3, 0.25, 0.6, 0.9] {
            for &t in &[0.2, 1.0, 1.7, 2.8] {
                let p = params(k, t);
                let shifted = p.with_theta(t + PI);
                let mirrored = params(-k, t);
                let (m, ms, mm) = (build_measure(p)?, build_measure(shifted)?, build_measure(mirrored)?);
                for other in [&ms, &mm] {
                    match (m.atom, other.atom) {
                        (None, None) => {}
                        (Some(a), Some(b)) => {
                            worst = worst.max(rel(a.energy, b.energy)).max(rel(a.weight, b.weight));
                        }
                        _ => worst = f64::INFINITY,
                    }
                }
                for &e in &[0.05, 1.0, 7.0, 90.0] {
                    worst = worst.max(rel(m.density(e), ms.density(e))).max(rel(m.density(e), mm.density(e)));
                }
                for &e in &[-2.0, 0.5, 6.0] {
                    for &r in &[0.2, 1.0, 2.5] {
                        let u = eval_u_theta(p, c(e), r)?.value.re;
                        let us = eval_u_theta(shifted, c(e), r)?.value.re;
                        let um = eval_u_theta(mirrored, c(e), r)?.value.re;
                        worst = worst.max(rel(u, -us)).max(rel(u, um));
                    }
                }
            }
        }
        Ok(CriterionResult::new(10, NAME, worst, SYMMETRY_TOL, "5 kappa x 4 theta, relative to 1 + |value|".into()))
    })
}

/// All ten criteria in order.
pub fn run_all() -> Vec<CriterionResult> {
    vec![
        ode_correctness(),
        wronskian_identities(),
        boundary_limit(),
        atom_consistency(),
        unitarity(),
        diagonalization(),
        bound_state_norms(),
        kappa_continuity(),
        hankel_specialization(),
        symmetries(),
    ]
}
