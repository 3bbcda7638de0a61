//! Carleson squares, discrete measures, the box condition and the embedding
//! of Hardy spaces into L^{ap(·)}(μ).

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{carleson_test_function, AnalyticFunction, KernelParams};
use crate::equivalence::{is_growing, DEFAULT_THRESHOLD};
use crate::error::{Error, Result};
use crate::exponent::ComplexifiedExponent;
use crate::report::{Report, Row};
use crate::spaces::{dyadic_radii, Frozen, Norms};

/// S_{h,θ₀} = {z : 1 − h ≤ |z| < 1, |arg z − θ₀| < h/2 (mod 2π)}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CarlesonSquare {
    pub theta0: f64,
    pub h: f64,
}

impl CarlesonSquare {
    pub fn new(theta0: f64, h: f64) -> Result<Self> {
        if !(h > 0.0 && h <= TAU) || !theta0.is_finite() {
            return Err(Error::Domain(format!("square needs 0 < h <= 2pi, got h = {h}")));
        }
        Ok(Self { theta0, h })
    }

    pub fn contains(&self, z: Complex64) -> bool {
        let r = z.norm();
        if !(r >= 1.0 - self.h && r < 1.0) {
            return false;
        }
        if self.h >= TAU {
            return true;
        }
        let mut d = (z.arg() - self.theta0).rem_euclid(TAU);
        if d > PI {
            d -= TAU;
        }
        d.abs() < 0.5 * self.h
    }

    pub fn contains_square(&self, other: &CarlesonSquare) -> bool {
        let mut d = (other.theta0 - self.theta0).rem_euclid(TAU);
        if d > PI {
            d -= TAU;
        }
        other.h <= self.h && d.abs() + 0.5 * other.h <= 0.5 * self.h
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub at: Complex64,
    pub weight: f64,
}

/// A finite positive measure as weighted point masses in the open disc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteMeasure {
    atoms: Vec<Atom>,
    total: f64,
}

impl DiscreteMeasure {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        for a in &atoms {
            if !(a.at.norm() < 1.0) {
                return Err(Error::Domain(format!("atom {} lies outside the open disc", a.at)));
            }
            if !(a.weight > 0.0 && a.weight.is_finite()) {
                return Err(Error::Domain(format!("atom weight must be positive, got {}", a.weight)));
            }
        }
        let total = atoms.iter().map(|a| a.weight).sum();
        Ok(Self { atoms, total })
    }

    pub fn zero() -> Self {
        Self {
            atoms: Vec::new(),
            total: 0.0,
        }
    }

    pub fn point(at: Complex64, weight: f64) -> Result<Self> {
        Self::new(vec![Atom { at, weight }])
    }

    /// Normalized area measure dA/π on `rings` equal-area annuli times
    /// `angles` sectors, one atom per cell at its area midpoint.
    pub fn area_grid(rings: usize, angles: usize) -> Result<Self> {
        if rings == 0 || angles == 0 {
            return Err(Error::Domain("area grid needs at least one ring and one angle".into()));
        }
        let w = 1.0 / (rings * angles) as f64;
        let mut atoms = Vec::with_capacity(rings * angles);
        for i in 0..rings {
            let r = ((i as f64 + 0.5) / rings as f64).sqrt();
            for j in 0..angles {
                let th = TAU * (j as f64 + 0.5) / angles as f64;
                atoms.push(Atom {
                    at: Complex64::from_polar(r, th),
                    weight: w,
                });
            }
        }
        Self::new(atoms)
    }

    /// `count` equal atoms of total mass 1 on the circle of radius `rho`.
    pub fn circle(rho: f64, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::Domain("circle measure needs at least one atom".into()));
        }
        let w = 1.0 / count as f64;
        Self::new(
            (0..count)
                .map(|k| Atom {
                    at: Complex64::from_polar(rho, TAU * k as f64 / count as f64),
                    weight: w,
                })
                .collect(),
        )
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

/// μ(S).
pub fn square_mass(mu: &DiscreteMeasure, s: &CarlesonSquare) -> f64 {
    mu.atoms.iter().filter(|a| s.contains(a.at)).map(|a| a.weight).sum()
}

/// h = 2^{-k}, k = 1..=16.
pub fn default_h_grid() -> Vec<f64> {
    (1..=16).map(|k| 0.5f64.powi(k)).collect()
}

/// 64 equispaced θ₀.
pub fn default_theta_grid() -> Vec<f64> {
    (0..64).map(|k| TAU * k as f64 / 64.0).collect()
}

/// sup of μ(S_{h,θ₀})/h^a over the grids.
///
/// One row per h (the sup over θ₀), the overall sup with its square, and a
/// growth flag along decreasing h. Passes when the sup stays below the
/// threshold and the values do not grow toward small h.
pub fn box_condition_sup(mu: &DiscreteMeasure, a: f64, h_grid: &[f64], theta_grid: &[f64]) -> Result<Report> {
    if !(a >= 1.0) {
        return Err(Error::Domain(format!("box exponent must satisfy a >= 1, got {a}")));
    }
    if h_grid.is_empty() || theta_grid.is_empty() {
        return Err(Error::Domain("empty square grid".into()));
    }
    let mut h_sorted = h_grid.to_vec();
    h_sorted.sort_by(|x, y| y.total_cmp(x));
    let per_h: Vec<(f64, f64)> = h_sorted
        .par_iter()
        .map(|&h| {
            let mut best = (0.0, theta_grid[0]);
            for &t in theta_grid {
                let s = CarlesonSquare::new(t, h)?;
                let v = square_mass(mu, &s) / h.powf(a);
                if v > best.0 {
                    best = (v, t);
                }
            }
            Ok(best)
        })
        .collect::<Result<_>>()?;
    let mut report = Report::new(format!("box condition a={a}"));
    let (mut sup, mut arg) = (0.0, (h_sorted[0], theta_grid[0]));
    for (&h, &(v, t)) in h_sorted.iter().zip(&per_h) {
        report.push(Row::info(format!("h={h}"), v));
        if v > sup {
            sup = v;
            arg = (h, t);
        }
    }
    let values: Vec<f64> = per_h.iter().map(|x| x.0).collect();
    report.push(Row::le("sup", sup, DEFAULT_THRESHOLD, 0.0).with_note(format!("attained at h = {}, theta0 = {}", arg.0, arg.1)));
    report.push(Row::flag("no growth", !is_growing(&values)));
    Ok(report)
}

/// inf{λ > 0 : Σ w |f(z)/λ|^{a p(z)} ≤ 1} over the atoms.
pub fn measure_norm(mu: &DiscreteMeasure, f: &AnalyticFunction, p: &ComplexifiedExponent, a: f64) -> Result<f64> {
    let mut frozen = Frozen::default();
    for atom in &mu.atoms {
        let v = f.try_eval(atom.at)?.norm();
        frozen.push(atom.weight, a * p.p().eval_z(atom.at), v);
    }
    if frozen.is_empty() {
        return Ok(0.0);
    }
    frozen.solve()
}

/// Test functions at z0 ∈ {0.9, 0.99, 0.999} × {1, i} and kernels
/// K_{λ,2,2} for λ ∈ {0, 0.5, 0.9}.
pub fn default_embedding_suite(p: &ComplexifiedExponent) -> Result<Vec<AnalyticFunction>> {
    let mut suite = Vec::new();
    for rho in [0.9, 0.99, 0.999] {
        for dir in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)] {
            suite.push(carleson_test_function(p, rho * dir)?);
        }
    }
    for l in [0.0, 0.5, 0.9] {
        suite.push(AnalyticFunction::kernel(KernelParams::new(Complex64::new(l, 0.0), 2.0, 2.0)?)?);
    }
    Ok(suite)
}

/// max over the suite of ‖f‖_{L^{ap(·)}(μ)}/‖f‖_{H,p(·)}, the Hardy norm
/// being the integral mean at r = 1 − 2^{-k_max}.
pub fn embedding_sup(
    mu: &DiscreteMeasure,
    p: &ComplexifiedExponent,
    a: f64,
    suite: &[AnalyticFunction],
    k_max: u32,
) -> Result<Report> {
    if suite.is_empty() {
        return Err(Error::Domain("empty test suite".into()));
    }
    let norms = Norms::default();
    let radii = dyadic_radii(k_max);
    let mut report = Report::new(format!("embedding a={a}"));
    let mut max: f64 = 0.0;
    let mut arg = String::new();
    for f in suite {
        let num = measure_norm(mu, f, p, a)?;
        let h = norms.hardy_norm(f, p.p(), &radii)?;
        if let Some(w) = &h.warning {
            report.warn(format!("{}: {w}", f.label()));
        }
        let ratio = num / h.lim_norm;
        report.push(Row::info(f.label().to_string(), ratio));
        if ratio > max || ratio.is_nan() {
            max = ratio;
            arg = f.label().to_string();
        }
    }
    report.push(Row::le("sup", max, DEFAULT_THRESHOLD, 0.0).with_note(format!("attained by {arg}")));
    Ok(report)
}

/// Single atom of mass 1 at 1 − 2^{-k} against the test function centred
/// there; the embedding ratio should increase with k.
pub fn necessity_trend(p: &ComplexifiedExponent, a: f64, ks: &[u32], k_max: u32) -> Result<Report> {
    let norms = Norms::default();
    let radii = dyadic_radii(k_max);
    let ratios: Vec<f64> = ks
        .par_iter()
        .map(|&k| {
            let z0 = Complex64::new(1.0 - 0.5f64.powi(k as i32), 0.0);
            let mu = DiscreteMeasure::point(z0, 1.0)?;
            let g = carleson_test_function(p, z0)?;
            Ok(measure_norm(&mu, &g, p, a)? / norms.hardy_norm(&g, p.p(), &radii)?.lim_norm)
        })
        .collect::<Result<_>>()?;
    let mut report = Report::new(format!("necessity trend a={a}"));
    for (i, (&k, &r)) in ks.iter().zip(&ratios).enumerate() {
        if i == 0 {
            report.push(Row::info(format!("k={k}"), r));
        } else {
            report.push(Row::check(format!("k={k}"), r, crate::report::Relation::Ge, ratios[i - 1], 0.0).with_note("increase over previous k"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn membership() {
        let mu = DiscreteMeasure::point(Complex64::new(0.95, 0.0), 1.0).unwrap();
        assert_eq!(square_mass(&mu, &CarlesonSquare::new(0.0, 0.1).unwrap()), 1.0);
        assert_eq!(square_mass(&mu, &CarlesonSquare::new(PI, 0.1).unwrap()), 0.0);
        let wrap = DiscreteMeasure::point(Complex64::from_polar(0.99, -0.01), 1.0).unwrap();
        assert_eq!(square_mass(&wrap, &CarlesonSquare::new(TAU - 0.005, 0.1).unwrap()), 1.0);
        assert!(DiscreteMeasure::point(Complex64::new(1.0, 0.0), 1.0).is_err());
    }

    #[test]
    fn area_grid_mass() {
        let mu = DiscreteMeasure::area_grid(100, 100).unwrap();
        assert_abs_diff_eq!(mu.total(), 1.0, epsilon = 1e-12);
        let h: f64 = 0.25;
        let exact = h / TAU * (1.0 - (1.0 - h) * (1.0 - h));
        let m = square_mass(&mu, &CarlesonSquare::new(0.0, h).unwrap());
        assert!((m / exact - 1.0).abs() < 0.02, "{m} vs {exact}");
    }

    #[test]
    fn box_condition_examples() {
        let (h, t) = (default_h_grid(), default_theta_grid());
        let atom = DiscreteMeasure::point(Complex64::new(1.0 - 1e-3, 0.0), 1.0).unwrap();
        let rep = box_condition_sup(&atom, 2.0, &h, &t).unwrap();
        assert_abs_diff_eq!(rep.row("sup").unwrap().value, 2f64.powi(18), epsilon = 1e-6);
        assert!(!rep.passed());
        let rep = box_condition_sup(&DiscreteMeasure::zero(), 2.0, &h, &t).unwrap();
        assert_eq!(rep.row("sup").unwrap().value, 0.0);
        let area = DiscreteMeasure::area_grid(100, 100).unwrap();
        assert!(box_condition_sup(&area, 2.0, &h, &t).unwrap().passed());
    }

    #[test]
    fn origin_atom_and_circle() {
        let p = ComplexifiedExponent::constant(2.0).unwrap();
        let mu = DiscreteMeasure::point(Complex64::new(0.0, 0.0), 1.0).unwrap();
        let one = AnalyticFunction::constant(Complex64::new(1.0, 0.0));
        let rep = embedding_sup(&mu, &p, 1.0, &[one], 8).unwrap();
        assert_abs_diff_eq!(rep.row("sup").unwrap().value, 1.0, epsilon = 1e-12);
        // Means increase with r, so the circle measure never beats the Hardy norm.
        let circle = DiscreteMeasure::circle(0.8, 256).unwrap();
        let k = AnalyticFunction::kernel(KernelParams::new(Complex64::new(0.5, 0.0), 2.0, 2.0).unwrap()).unwrap();
        let rep = embedding_sup(&circle, &p, 1.0, &[k.clone()], 20).unwrap();
        let expect = Norms::default().integral_mean(&k, p.p(), 0.8).unwrap() / crate::spaces::hardy_norm(&k, p.p()).unwrap().lim_norm;
        assert_abs_diff_eq!(rep.row("sup").unwrap().value, expect, epsilon = 1e-9);
        assert!(expect < 1.0);
    }
}
