//! Eigenfunction-expansion transforms `U_{κ,ϑ}` and their defects.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measure::{build_measure, SpectralMeasure};
use crate::quadrature::{graded_breaks, Adaptive, FixedRule};
use crate::solutions::{eval_u, eval_u_theta, ExtensionParams};

/// Gauss–Legendre nodes per panel on the r side.
pub const R_NODES_PER_PANEL: usize = 20;
/// Gauss–Legendre nodes per panel in `k = √E`.
pub const K_NODES_PER_PANEL: usize = 16;
/// Panel width in `k = √E`.
pub const K_PANEL_WIDTH: f64 = 0.5;
/// Relative spectral-tail mass above which a Parseval check is inconclusive.
pub const TAIL_TOLERANCE: f64 = 1e-4;

/// A sampled function on a compact interval of `(0, ∞)` with quadrature weights.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub support: (f64, f64),
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub values: Vec<f64>,
}

impl GridFunction {
    pub fn new(support: (f64, f64), nodes: Vec<f64>, weights: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let (a, b) = support;
        if !(a > 0.0 && b > a && b.is_finite()) {
            return Err(Error::Validation(format!("support must satisfy 0 < a < b, got [{a}, {b}]")));
        }
        if nodes.len() != weights.len() || nodes.len() != values.len() || nodes.is_empty() {
            return Err(Error::Validation("nodes, weights and values must have one common nonzero length".into()));
        }
        if nodes.windows(2).any(|w| !(w[0] < w[1])) || nodes[0] < a || nodes[nodes.len() - 1] > b {
            return Err(Error::Validation("nodes must be increasing and lie in the support".into()));
        }
        if weights.iter().any(|&w| !(w > 0.0)) {
            return Err(Error::Validation("weights must be positive".into()));
        }
        let total: f64 = weights.iter().sum();
        if ((total - (b - a)) / (b - a)).abs() > 1e-12 {
            return Err(Error::Validation(format!("weights sum to {total}, expected {}", b - a)));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Validation("values must be finite".into()));
        }
        Ok(GridFunction { support, nodes, weights, values })
    }

    /// Composite Gauss–Legendre nodes on `[a, b]` with one panel per wavelength at `e_max`.
    pub fn sample(a: f64, b: f64, e_max: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        if !(a > 0.0 && b > a && b.is_finite()) {
            return Err(Error::Validation(format!("support must satisfy 0 < a < b, got [{a}, {b}]")));
        }
        let wavelength = 2.0 * std::f64::consts::PI / e_max.max(1.0).sqrt();
        let panels = (((b - a) / wavelength).ceil() as usize).max(2);
        let rule = FixedRule::gauss_legendre(R_NODES_PER_PANEL);
        let h = (b - a) / panels as f64;
        let mut nodes = Vec::with_capacity(panels * rule.len());
        let mut weights = Vec::with_capacity(panels * rule.len());
        for k in 0..panels {
            let lo = a + h * k as f64;
            for (x, w) in rule.on(lo, lo + h) {
                nodes.push(x);
                weights.push(w);
            }
        }
        let values = nodes.iter().map(|&r| f(r)).collect();
        GridFunction::new((a, b), nodes, weights, values)
    }

    /// Samples a closed-form function over its own support.
    pub fn from_smooth(f: &impl SmoothFunction, e_max: f64) -> Result<Self> {
        let (a, b) = f.support();
        GridFunction::sample(a, b, e_max, |r| f.value(r))
    }

    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        GridFunction::new(self.support, self.nodes.clone(), self.weights.clone(), values)
    }

    pub fn zero(&self) -> Self {
        GridFunction { values: vec![0.0; self.values.len()], ..self.clone() }
    }

    /// `∫ f g dr` on the common grid.
    pub fn inner(&self, other: &GridFunction) -> f64 {
        self.weights.iter().zip(&self.values).zip(&other.values).map(|((w, a), b)| w * a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.inner(self)
    }
}

/// A function of `E` sampled on a quadrature grid, plus the coefficient at the atom.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFunction {
    pub e_nodes: Vec<f64>,
    pub e_weights: Vec<f64>,
    pub values: Vec<f64>,
    pub atom_coeff: Option<f64>,
}

impl SpectralFunction {
    pub fn zero(e_nodes: Vec<f64>, e_weights: Vec<f64>, atom: bool) -> Self {
        let n = e_nodes.len();
        SpectralFunction { e_nodes, e_weights, values: vec![0.0; n], atom_coeff: atom.then_some(0.0) }
    }

    /// `∫ |φ|² dσ` over the grid and the atom.
    pub fn norm_sq(&self, measure: &SpectralMeasure) -> f64 {
        self.inner(self, measure)
    }

    /// `∫ φ χ dσ` for two functions on the same grid.
    pub fn inner(&self, other: &SpectralFunction, measure: &SpectralMeasure) -> f64 {
        let cont: f64 = (0..self.e_nodes.len())
            .map(|i| self.e_weights[i] * measure.density(self.e_nodes[i]) * self.values[i] * other.values[i])
            .sum();
        let atom = match (measure.atom, self.atom_coeff, other.atom_coeff) {
            (Some(a), Some(x), Some(y)) => a.weight * x * y,
            _ => 0.0,
        };
        cont + atom
    }
}

/// A closed-form compactly supported function with its second derivative.
pub trait SmoothFunction: Sync {
    fn support(&self) -> (f64, f64);
    fn value(&self, r: f64) -> f64;
    fn d2(&self, r: f64) -> f64;
}

/// `N ((r-a)(b-r))^p` on `[a, b]`, of unit `L²` norm; `C^{p-1}` on `(0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    pub a: f64,
    pub b: f64,
    pub power: i32,
    norm: f64,
}

impl Bump {
    pub fn new(a: f64, b: f64, power: i32) -> Result<Self> {
        if !(a > 0.0 && b > a && b.is_finite()) {
            return Err(Error::Validation(format!("bump support must satisfy 0 < a < b, got [{a}, {b}]")));
        }
        if !(2..=12).contains(&power) {
            return Err(Error::Validation(format!("bump power must be in 2..=12, got {power}")));
        }
        // ∫ g^{2p} = (b-a)^{4p+1} (2p)!² / (4p+1)!
        let p = power as u32;
        let mut beta = 1.0;
        for k in 1..=2 * p {
            beta *= k as f64 / (2 * p + k) as f64;
        }
        beta /= (4 * p + 1) as f64;
        let int = (b - a).powi(4 * power + 1) * beta;
        Ok(Bump { a, b, power, norm: int.sqrt().recip() })
    }

    fn g(&self, r: f64) -> f64 {
        (r - self.a) * (self.b - r)
    }

    pub fn d1(&self, r: f64) -> f64 {
        if r <= self.a || r >= self.b {
            return 0.0;
        }
        let p = self.power as f64;
        self.norm * p * self.g(r).powi(self.power - 1) * (self.a + self.b - 2.0 * r)
    }
}

impl SmoothFunction for Bump {
    fn support(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    fn value(&self, r: f64) -> f64 {
        if r <= self.a || r >= self.b {
            return 0.0;
        }
        self.norm * self.g(r).powi(self.power)
    }

    fn d2(&self, r: f64) -> f64 {
        if r <= self.a || r >= self.b {
            return 0.0;
        }
        let p = self.power as f64;
        let g = self.g(r);
        let dg = self.a + self.b - 2.0 * r;
        self.norm * p * ((p - 1.0) * g.powi(self.power - 2) * dg * dg - 2.0 * g.powi(self.power - 1))
    }
}

/// Nodes and weights in `E` from Gauss–Legendre panels in `k = √E` on `[0, √e_max]`.
pub fn energy_grid(e_max: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(e_max > 0.0 && e_max.is_finite()) {
        return Err(Error::Validation(format!("e_max must be positive, got {e_max}")));
    }
    let k_max = e_max.sqrt();
    let first = K_PANEL_WIDTH.min(k_max);
    let mut edges = vec![0.0];
    edges.extend(graded_breaks(0.0, first, 12, 0.5));
    let panels = ((k_max - first) / K_PANEL_WIDTH).ceil() as usize;
    edges.push(first);
    for j in 1..=panels {
        edges.push(first + (k_max - first) * j as f64 / panels as f64);
    }
    let rule = FixedRule::gauss_legendre(K_NODES_PER_PANEL);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for e in edges.windows(2) {
        for (k, w) in rule.on(e[0], e[1]) {
            nodes.push(k * k);
            weights.push(2.0 * k * w);
        }
    }
    Ok((nodes, weights))
}

fn check_e_grid(e_grid: &[f64], measure: &SpectralMeasure) -> Result<()> {
    for &e in e_grid {
        if !(e > 0.0 && e.is_finite()) {
            return Err(Error::Validation(format!("energy nodes must be positive, got {e}")));
        }
    }
    if let Some(a) = measure.atom {
        if e_grid.contains(&a.energy) {
            return Err(Error::Validation("energy grid hits the bound state".into()));
        }
    }
    Ok(())
}

/// `u^κ_ϑ(E|r)` for real `E`.
pub fn kernel(p: ExtensionParams, e: f64, r: f64) -> Result<f64> {
    Ok(eval_u_theta(p, Complex64::new(e, 0.0), r)?.value.re)
}

/// `u^κ_ϑ(E_i|r_j)`, row-major in `E`.
#[derive(Debug, Clone)]
pub struct KernelMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl KernelMatrix {
    pub fn new(f: impl Fn(f64, f64) -> Result<f64> + Sync, energies: &[f64], radii: &[f64]) -> Result<Self> {
        let rows: Vec<Vec<f64>> = energies
            .par_iter()
            .map(|&e| radii.iter().map(|&r| f(e, r)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(KernelMatrix { rows: energies.len(), cols: radii.len(), data: rows.concat() })
    }

    pub fn for_params(p: ExtensionParams, energies: &[f64], radii: &[f64]) -> Result<Self> {
        Self::new(|e, r| kernel(p, e, r), energies, radii)
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// `Σ_j K_ij x_j`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.rows).map(|i| self.row(i).iter().zip(x).map(|(k, v)| k * v).sum()).collect()
    }

    /// `Σ_i K_ij y_i`.
    pub fn apply_transpose(&self, y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for (i, &yi) in y.iter().enumerate() {
            for (o, k) in out.iter_mut().zip(self.row(i)) {
                *o += k * yi;
            }
        }
        out
    }
}

fn weighted(psi: &GridFunction) -> Vec<f64> {
    psi.weights.iter().zip(&psi.values).map(|(w, v)| w * v).collect()
}

fn atom_coeff(p: ExtensionParams, measure: &SpectralMeasure, psi: &GridFunction) -> Result<Option<f64>> {
    let Some(atom) = measure.atom else {
        return Ok(None);
    };
    let mut s = 0.0;
    for ((&r, &w), &v) in psi.nodes.iter().zip(&psi.weights).zip(&psi.values) {
        s += w * v * kernel(p, atom.energy, r)?;
    }
    Ok(Some(s))
}

/// `(U_{κ,ϑ} ψ)(E) = ∫ u^κ_ϑ(E|r) ψ(r) dr` on `e_grid`, with unit weights.
///
/// `ψ` should be sampled with [`GridFunction::sample`] at an `e_max` covering the grid.
pub fn forward(p: ExtensionParams, psi: &GridFunction, e_grid: &[f64]) -> Result<SpectralFunction> {
    let w = vec![1.0; e_grid.len()];
    forward_weighted(p, psi, e_grid, &w)
}

/// [`forward`] on the quadrature grid returned by [`energy_grid`].
pub fn forward_grid(p: ExtensionParams, psi: &GridFunction, e_max: f64) -> Result<SpectralFunction> {
    let (e, w) = energy_grid(e_max)?;
    forward_weighted(p, psi, &e, &w)
}

fn forward_weighted(p: ExtensionParams, psi: &GridFunction, e_grid: &[f64], e_weights: &[f64]) -> Result<SpectralFunction> {
    let measure = build_measure(p)?;
    check_e_grid(e_grid, &measure)?;
    let km = KernelMatrix::for_params(p, e_grid, &psi.nodes)?;
    Ok(SpectralFunction {
        e_nodes: e_grid.to_vec(),
        e_weights: e_weights.to_vec(),
        values: km.apply(&weighted(psi)),
        atom_coeff: atom_coeff(p, &measure, psi)?,
    })
}

/// The Hankel transform `U_κ`, with `u^κ` in place of `u^κ_ϑ`.
pub fn forward_hankel(kappa: f64, psi: &GridFunction, e_grid: &[f64]) -> Result<Vec<f64>> {
    let km = KernelMatrix::new(|e, r| Ok(eval_u(kappa, Complex64::new(e, 0.0), r)?.value.re), e_grid, &psi.nodes)?;
    Ok(km.apply(&weighted(psi)))
}

/// `(U^{-1} φ)(r) = ∫ u^κ_ϑ(E|r) φ(E) dσ(E)` at each `r`.
pub fn inverse(p: ExtensionParams, phi: &SpectralFunction, r_grid: &[f64]) -> Result<Vec<f64>> {
    let measure = build_measure(p)?;
    let km = KernelMatrix::for_params(p, &phi.e_nodes, r_grid)?;
    inverse_with(p, &measure, &km, phi, r_grid)
}

fn inverse_with(
    p: ExtensionParams,
    measure: &SpectralMeasure,
    km: &KernelMatrix,
    phi: &SpectralFunction,
    r_grid: &[f64],
) -> Result<Vec<f64>> {
    let y: Vec<f64> = (0..phi.e_nodes.len())
        .map(|i| phi.e_weights[i] * measure.density(phi.e_nodes[i]) * phi.values[i])
        .collect();
    let mut out = km.apply_transpose(&y);
    if let (Some(atom), Some(c)) = (measure.atom, phi.atom_coeff) {
        for (o, &r) in out.iter_mut().zip(r_grid) {
            *o += atom.weight * c * kernel(p, atom.energy, r)?;
        }
    }
    Ok(out)
}

/// `-ψ'' + (κ² - 1/4) r⁻² ψ` at the nodes of `grid`.
pub fn apply_hamiltonian(kappa: f64, psi: &impl SmoothFunction, grid: &GridFunction) -> Result<GridFunction> {
    let q = kappa * kappa - 0.25;
    let values = grid.nodes.iter().map(|&r| -psi.d2(r) + q / (r * r) * psi.value(r)).collect();
    grid.with_values(values)
}

/// Outcome of a Parseval check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParsevalReport {
    /// Relative defect `|‖ψ‖² - ‖Uψ‖²_σ| / ‖ψ‖²`.
    pub defect: f64,
    /// Extrapolated relative mass above `e_max`.
    pub tail: f64,
}

impl ParsevalReport {
    pub fn inconclusive(&self) -> bool {
        self.tail > TAIL_TOLERANCE
    }
}

// geometric continuation of the last two dyadic shells
fn tail_estimate(phi: &SpectralFunction, measure: &SpectralMeasure, e_max: f64) -> f64 {
    let shell = |lo: f64, hi: f64| -> f64 {
        (0..phi.e_nodes.len())
            .filter(|&i| phi.e_nodes[i] > lo && phi.e_nodes[i] <= hi)
            .map(|i| phi.e_weights[i] * measure.density(phi.e_nodes[i]) * phi.values[i].powi(2))
            .sum()
    };
    let s1 = shell(0.25 * e_max, 0.5 * e_max);
    let s2 = shell(0.5 * e_max, e_max);
    if s2 == 0.0 {
        return 0.0;
    }
    let q = s2 / s1;
    if !(q < 1.0) {
        return f64::INFINITY;
    }
    s2 * q / (1.0 - q)
}

/// Relative Parseval defect of `ψ` with the spectral integral truncated at `e_max`.
pub fn parseval_defect(p: ExtensionParams, psi: &GridFunction, e_max: f64) -> Result<ParsevalReport> {
    let norm = psi.norm_sq();
    if norm == 0.0 {
        return Ok(ParsevalReport { defect: 0.0, tail: 0.0 });
    }
    let measure = build_measure(p)?;
    let phi = forward_grid(p, psi, e_max)?;
    let spec = phi.norm_sq(&measure);
    Ok(ParsevalReport { defect: (norm - spec).abs() / norm, tail: tail_estimate(&phi, &measure, e_max) / norm })
}

/// Relative defect of the bilinear form `⟨ψ₁, ψ₂⟩ = ∫ Uψ₁ Uψ₂ dσ`, scaled by `‖ψ₁‖ ‖ψ₂‖`.
pub fn polarization_defect(p: ExtensionParams, psi1: &GridFunction, psi2: &GridFunction, e_max: f64) -> Result<f64> {
    if psi1.nodes != psi2.nodes {
        return Err(Error::Validation("both functions must share one grid".into()));
    }
    let measure = build_measure(p)?;
    let (e, w) = energy_grid(e_max)?;
    let km = KernelMatrix::for_params(p, &e, &psi1.nodes)?;
    let spectral = |psi: &GridFunction| -> Result<SpectralFunction> {
        Ok(SpectralFunction {
            e_nodes: e.clone(),
            e_weights: w.clone(),
            values: km.apply(&weighted(psi)),
            atom_coeff: atom_coeff(p, &measure, psi)?,
        })
    };
    let (f1, f2) = (spectral(psi1)?, spectral(psi2)?);
    let scale = (psi1.norm_sq() * psi2.norm_sq()).sqrt();
    Ok((psi1.inner(psi2) - f1.inner(&f2, &measure)).abs() / scale)
}

/// `sup |U⁻¹Uψ - ψ|` over the nodes of `ψ` with the spectral integral truncated at `e_max`.
pub fn round_trip_defect(p: ExtensionParams, psi: &GridFunction, e_max: f64) -> Result<f64> {
    let measure = build_measure(p)?;
    let (e, w) = energy_grid(e_max)?;
    let km = KernelMatrix::for_params(p, &e, &psi.nodes)?;
    let phi = SpectralFunction {
        values: km.apply(&weighted(psi)),
        e_nodes: e,
        e_weights: w,
        atom_coeff: atom_coeff(p, &measure, psi)?,
    };
    let back = inverse_with(p, &measure, &km, &phi, &psi.nodes)?;
    Ok(back.iter().zip(&psi.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

/// `max_E |U(hψ)(E) - E Uψ(E)| / (1 + |E Uψ(E)|)` over `e_grid`.
pub fn diag_defect(p: ExtensionParams, psi: &impl SmoothFunction, e_grid: &[f64]) -> Result<f64> {
    let e_max = e_grid.iter().copied().fold(1.0, f64::max);
    let grid = GridFunction::from_smooth(psi, e_max)?;
    let h = apply_hamiltonian(p.kappa, psi, &grid)?;
    let km = KernelMatrix::for_params(p, e_grid, &grid.nodes)?;
    let a = km.apply(&weighted(&h));
    let b = km.apply(&weighted(&grid));
    Ok(e_grid
        .iter()
        .zip(a.iter().zip(&b))
        .map(|(&e, (x, y))| (x - e * y).abs() / (1.0 + (e * y).abs()))
        .fold(0.0, f64::max))
}

/// Cutoff radius where `e^{-2√|E| r}` drops below `1e-16`.
pub fn bound_state_cutoff(energy: f64) -> f64 {
    -(1e-16f64).ln() / (2.0 * energy.abs().sqrt())
}

/// `∫₀^∞ u^κ_ϑ(E_{κ,ϑ}|r)² dr`, or `None` without a bound state.
pub fn bound_state_norm(p: ExtensionParams) -> Result<Option<f64>> {
    let Some(atom) = build_measure(p)?.atom else {
        return Ok(None);
    };
    let rmax = bound_state_cutoff(atom.energy);
    let mut breaks = graded_breaks(0.0, 1.0_f64.min(0.5 * rmax), 30, 0.5);
    breaks.extend((1..16).map(|k| rmax * k as f64 / 16.0).filter(|&x| x > 1.0));
    let rule = Adaptive { abs_tol: 0.0, rel_tol: 1e-12, max_panels: 2000 };
    let mut err = None;
    let est = rule.integrate_on(
        |r: f64| match kernel(p, atom.energy, r) {
            Ok(u) => u * u,
            Err(e) => {
                err.get_or_insert(e);
                0.0
            }
        },
        0.0,
        rmax,
        &breaks,
    )?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(Some(est.value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pr(k: f64, t: f64) -> ExtensionParams {
        ExtensionParams::new(k, t).unwrap()
    }

    #[test]
    fn grid_function_validation() {
        let g = GridFunction::sample(1.0, 2.0, 100.0, |r| r).unwrap();
        assert!((g.weights.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        assert!(GridFunction::new((1.0, 2.0), vec![1.5], vec![0.5], vec![0.0]).is_err());
        assert!(GridFunction::new((0.0, 2.0), vec![1.0], vec![2.0], vec![0.0]).is_err());
        assert!(GridFunction::sample(-1.0, 2.0, 1.0, |r| r).is_err());
    }

    #[test]
    fn bump_is_normalized_with_exact_derivatives() {
        let b = Bump::new(1.0, 2.0, 3).unwrap();
        let g = GridFunction::from_smooth(&b, 1.0).unwrap();
        assert!((g.norm_sq() - 1.0).abs() < 1e-13);
        let h = 1e-4;
        for &r in &[1.2, 1.5, 1.9] {
            let fd = (b.value(r + h) - 2.0 * b.value(r) + b.value(r - h)) / (h * h);
            assert!((fd - b.d2(r)).abs() < 1e-4 * (1.0 + b.d2(r).abs()));
            let fd1 = (b.value(r + h) - b.value(r - h)) / (2.0 * h);
            assert!((fd1 - b.d1(r)).abs() < 1e-5 * (1.0 + b.d1(r).abs()));
        }
    }

    #[test]
    fn energy_grid_integrates_polynomials() {
        let (e, w) = energy_grid(400.0).unwrap();
        let s: f64 = w.iter().sum();
        assert!((s - 400.0).abs() < 1e-10);
        let s: f64 = e.iter().zip(&w).map(|(e, w)| e.sqrt() * w).sum();
        assert!((s - 2.0 / 3.0 * 8000.0).abs() < 1e-8);
    }

    #[test]
    fn forward_is_linear_and_vanishes_on_zero() {
        let p = pr(0.2, 0.9);
        let g = GridFunction::from_smooth(&Bump::new(1.0, 2.0, 3).unwrap(), 25.0).unwrap();
        let z = forward(p, &g.zero(), &[1.0, 4.0]).unwrap();
        assert!(z.values.iter().all(|&v| v == 0.0));
        assert_eq!(z.atom_coeff, Some(0.0));
        let g2 = g.with_values(g.values.iter().map(|v| 3.0 * v).collect()).unwrap();
        let a = forward(p, &g, &[1.0, 4.0]).unwrap();
        let b = forward(p, &g2, &[1.0, 4.0]).unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!((3.0 * x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn forward_against_fixed_rule() {
        let p = pr(0.0, PI / 2.0);
        let b = Bump::new(1.0, 2.0, 3).unwrap();
        let g = GridFunction::from_smooth(&b, 1.0).unwrap();
        let got = forward(p, &g, &[1.0]).unwrap().values[0];
        let rule = FixedRule::gauss_legendre(120);
        let oracle = rule.integrate(1.0, 2.0, |r| kernel(p, 1.0, r).unwrap() * b.value(r));
        assert!((got - oracle).abs() < 1e-9);
    }

    #[test]
    fn hankel_path_and_sine_kernel() {
        let b = Bump::new(1.0, 2.0, 3).unwrap();
        let g = GridFunction::from_smooth(&b, 100.0).unwrap();
        let es = [0.5, 3.0, 40.0];
        for &k in &[0.5, -0.4, 0.0] {
            let a = forward(ExtensionParams::hankel(k).unwrap(), &g, &es).unwrap();
            let h = forward_hankel(k, &g, &es).unwrap();
            for (x, y) in a.values.iter().zip(&h) {
                assert!((x - y).abs() < 1e-12);
            }
        }
        let a = forward(ExtensionParams::hankel(0.5).unwrap(), &g, &es).unwrap();
        let rule = FixedRule::gauss_legendre(200);
        for (i, &e) in es.iter().enumerate() {
            let k = e.sqrt();
            let s = rule.integrate(1.0, 2.0, |r| (2.0 / PI).sqrt() * (k * r).sin() / k * b.value(r));
            assert!((a.values[i] - s).abs() < 1e-9);
        }
    }

    #[test]
    fn theta_shift_flips_sign() {
        let b = GridFunction::from_smooth(&Bump::new(0.5, 1.5, 3).unwrap(), 25.0).unwrap();
        let a = forward(pr(0.3, 1.0), &b, &[0.7, 5.0]).unwrap();
        let c = forward(pr(0.3, 1.0 + PI), &b, &[0.7, 5.0]).unwrap();
        for (x, y) in a.values.iter().zip(&c.values) {
            assert!((x + y).abs() < 1e-12);
        }
        assert!((a.atom_coeff.unwrap() + c.atom_coeff.unwrap()).abs() < 1e-12);
    }

    #[test]
    fn pure_atom_inverse() {
        let p = pr(0.0, PI / 2.0);
        let m = build_measure(p).unwrap();
        let mut phi = SpectralFunction::zero(vec![1.0], vec![1.0], true);
        phi.atom_coeff = Some(1.0);
        let rs = [0.3, 1.0, 2.5];
        let got = inverse(p, &phi, &rs).unwrap();
        for (g, &r) in got.iter().zip(&rs) {
            let expect = m.atom.unwrap().weight * kernel(p, -1.0, r).unwrap();
            assert!((g - expect).abs() < 1e-14 * expect.abs());
        }
        phi.atom_coeff = Some(0.0);
        assert!(inverse(p, &phi, &rs).unwrap().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn hamiltonian_kernel_elements() {
        let b = Bump::new(1.0, 2.0, 3).unwrap();
        let g = GridFunction::from_smooth(&b, 1.0).unwrap();
        let h = apply_hamiltonian(0.5, &b, &g).unwrap();
        for (v, &r) in h.values.iter().zip(&g.nodes) {
            assert!((v + b.d2(r)).abs() < 1e-12 * (1.0 + b.d2(r).abs()));
        }
        struct Power(f64);
        impl SmoothFunction for Power {
            fn support(&self) -> (f64, f64) {
                (1.0, 3.0)
            }
            fn value(&self, r: f64) -> f64 {
                r.powf(0.5 + self.0)
            }
            fn d2(&self, r: f64) -> f64 {
                (0.5 + self.0) * (self.0 - 0.5) * r.powf(self.0 - 1.5)
            }
        }
        let f = Power(0.3);
        let g = GridFunction::from_smooth(&f, 1.0).unwrap();
        let h = apply_hamiltonian(0.3, &f, &g).unwrap();
        assert!(h.values.iter().all(|v| v.abs() < 1e-13));
    }

    #[test]
    fn parseval_of_zero() {
        let g = GridFunction::from_smooth(&Bump::new(1.0, 2.0, 3).unwrap(), 1.0).unwrap();
        let r = parseval_defect(pr(0.0, 1.0), &g.zero(), 100.0).unwrap();
        assert_eq!(r.defect, 0.0);
    }

    #[test]
    fn parseval_at_half_order() {
        let g = GridFunction::from_smooth(&Bump::new(1.0, 2.0, 3).unwrap(), 400.0).unwrap();
        let r = parseval_defect(ExtensionParams::hankel(0.5).unwrap(), &g, 400.0).unwrap();
        assert!(r.defect < 1e-4, "{r:?}");
        assert!(!r.inconclusive());
    }

    #[test]
    fn bound_state_norm_at_zero_kappa() {
        let n = bound_state_norm(pr(0.0, PI / 2.0)).unwrap().unwrap();
        assert!((n - 2.0 / (PI * PI)).abs() < 1e-8, "{n}");
    }
}
