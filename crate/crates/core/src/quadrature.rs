//! Gauss–Legendre rules and adaptive Gauss–Kronrod integration.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Values that can be integrated: reals and complex numbers.
pub trait Integrand: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
    fn real_part(self) -> f64;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn real_part(self) -> f64 {
        self
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn real_part(self) -> f64 {
        self.re
    }
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "rule needs at least one node");
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut t = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, t);
            dp = d;
            let dt = p / d;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, t);
        dp = if d != 0.0 { d } else { dp };
        let wi = 2.0 / ((1.0 - t * t) * dp * dp);
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

// P_n(t) and P_n'(t) by the three-term recurrence.
fn legendre(n: usize, t: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = t;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * t * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (t * p1 - p0) / (t * t - 1.0);
    (p1, d)
}

/// A fixed rule mapped onto `[a, b]`.
#[derive(Debug, Clone)]
pub struct FixedRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl FixedRule {
    pub fn gauss_legendre(n: usize) -> Self {
        let (nodes, weights) = gauss_legendre(n);
        FixedRule { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights on `[a, b]`.
    pub fn on(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        self.nodes.iter().zip(&self.weights).map(move |(&x, &w)| (c + h * x, h * w))
    }

    pub fn integrate<T: Integrand>(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> T) -> T {
        self.on(a, b).fold(T::zero(), |acc, (x, w)| acc + f(x) * w)
    }
}

// Kronrod 21-point nodes (non-negative half) and weights; odd indices are the 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_814_089_547,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// One G10/K21 panel: Kronrod estimate and `|K - G|`.
fn gk21<T: Integrand>(f: &mut impl FnMut(f64) -> T, a: f64, b: f64) -> (T, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[10];
    let mut g = T::zero();
    for j in 0..10 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k = k + s * WGK[j];
        if j % 2 == 1 {
            g = g + s * WG[j / 2];
        }
    }
    (k * h, (k - g).magnitude() * h.abs())
}

/// An integral estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub err: f64,
}

/// Settings for [`Adaptive`] integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Adaptive {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for Adaptive {
    fn default() -> Self {
        Adaptive { abs_tol: 1e-12, rel_tol: 1e-12, max_panels: 4000 }
    }
}

impl Adaptive {
    pub fn with_tol(abs_tol: f64) -> Self {
        Adaptive { abs_tol, rel_tol: 0.0, ..Default::default() }
    }

    /// Integrates over `[a, b]` split at `breaks` (sorted interior points).
    pub fn integrate_on<T: Integrand>(
        &self,
        mut f: impl FnMut(f64) -> T,
        a: f64,
        b: f64,
        breaks: &[f64],
    ) -> Result<Estimate<T>> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::Validation(format!("bad integration interval [{a}, {b}]")));
        }
        let mut edges = Vec::with_capacity(breaks.len() + 2);
        edges.push(a);
        edges.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
        edges.push(b);

        let mut panels: Vec<(f64, f64, T, f64)> = edges
            .windows(2)
            .map(|e| {
                let (v, err) = gk21(&mut f, e[0], e[1]);
                (e[0], e[1], v, err)
            })
            .collect();
        loop {
            let total = panels.iter().fold(T::zero(), |s, p| s + p.2);
            let err: f64 = panels.iter().map(|p| p.3).sum();
            if !err.is_finite() || !total.magnitude().is_finite() {
                return Err(Error::Domain("integrand is not finite".into()));
            }
            if err <= self.abs_tol.max(self.rel_tol * total.magnitude()) {
                return Ok(Estimate { value: total, err });
            }
            if panels.len() >= self.max_panels {
                return Err(Error::Accuracy { best: total.real_part(), err });
            }
            let (worst, _) = panels
                .iter()
                .enumerate()
                .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
                .expect("at least one panel");
            let (lo, hi, _, _) = panels.swap_remove(worst);
            let mid = 0.5 * (lo + hi);
            if !(mid > lo && mid < hi) {
                return Err(Error::Accuracy { best: total.real_part(), err });
            }
            let (v1, e1) = gk21(&mut f, lo, mid);
            let (v2, e2) = gk21(&mut f, mid, hi);
            panels.push((lo, mid, v1, e1));
            panels.push((mid, hi, v2, e2));
        }
    }

    pub fn integrate<T: Integrand>(&self, f: impl FnMut(f64) -> T, a: f64, b: f64) -> Result<Estimate<T>> {
        self.integrate_on(f, a, b, &[])
    }
}

/// Adaptive G10/K21 integration of a real function to absolute tolerance `tol`.
pub fn integrate(f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
    let est = Adaptive::with_tol(tol).integrate(f, a, b)?;
    Ok((est.value, est.err))
}

/// Breakpoints on `(a, b)` refined geometrically towards `a` with the given ratio.
pub fn graded_breaks(a: f64, b: f64, levels: usize, ratio: f64) -> Vec<f64> {
    let mut out: Vec<f64> = (1..=levels).map(|k| a + (b - a) * ratio.powi(k as i32)).collect();
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        for n in [1, 2, 5, 16, 40] {
            let rule = FixedRule::gauss_legendre(n);
            let wsum: f64 = rule.on(-1.0, 1.0).map(|(_, w)| w).sum();
            assert!((wsum - 2.0).abs() < 1e-14);
            let deg = 2 * n - 1;
            let got = rule.integrate(0.0, 1.0, |x| x.powi(deg as i32));
            assert!((got - 1.0 / (deg as f64 + 1.0)).abs() < 1e-14, "n = {n}");
        }
    }

    #[test]
    fn kronrod_panel_degrees() {
        let (k, _) = gk21(&mut |x: f64| x.powi(30), 0.0, 1.0);
        assert!((k - 1.0 / 31.0).abs() < 1e-15);
        let (k, e) = gk21(&mut |x: f64| x.powi(19), -1.0, 1.0);
        assert!(k.abs() < 1e-15 && e < 1e-15);
        let (k, e) = gk21(&mut |x: f64| x.powi(18), 0.0, 1.0);
        assert!((k - 1.0 / 19.0).abs() < 1e-15 && e < 1e-14);
    }

    #[test]
    fn simple_integrals() {
        let (v, _) = integrate(|r| r, 0.0, 1.0, 1e-14).unwrap();
        assert!((v - 0.5).abs() < 1e-15);
        let (v, _) = integrate(f64::sin, 0.0, PI, 1e-13).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn endpoint_singularity_with_graded_panels() {
        let breaks = graded_breaks(0.0, 1.0, 30, 0.25);
        let est = Adaptive::with_tol(1e-10).integrate_on(|r: f64| r.powf(-0.5), 0.0, 1.0, &breaks).unwrap();
        assert!((est.value - 2.0).abs() < 1e-8);
    }

    #[test]
    fn budget_exhaustion_reports_best_estimate() {
        let tight = Adaptive { abs_tol: 1e-300, rel_tol: 0.0, max_panels: 8 };
        match tight.integrate(|x: f64| (50.0 * x).sin(), 0.0, 10.0) {
            Err(Error::Accuracy { best, err }) => assert!(best.is_finite() && err > 0.0),
            other => panic!("expected accuracy failure, got {other:?}"),
        }
    }

    #[test]
    fn complex_integrand() {
        let est = Adaptive::default().integrate(|t: f64| Complex64::new(0.0, t).exp(), 0.0, PI).unwrap();
        assert!((est.value - Complex64::new(0.0, 2.0)).norm() < 1e-12);
    }
}
