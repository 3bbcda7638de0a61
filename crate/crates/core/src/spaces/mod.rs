//! Modulars, Luxemburg–Nakano norms and integral means.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::AnalyticFunction;
use crate::error::{Error, Result};
use crate::exponent::VariableExponent;
use crate::numerics::{
    bisect_monotone, bracket_decreasing, BergmanWeight, CircleRule, DiscRule, Polar, RadialRule,
};

/// ρ_{p(·)}(f) together with its quadrature diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Modular {
    pub value: f64,
    pub converged: bool,
    pub tail: f64,
    pub divergent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HardyNorm {
    pub sup_norm: f64,
    pub lim_norm: f64,
    pub radii: Vec<f64>,
    pub means: Vec<f64>,
    pub warning: Option<String>,
}

impl HardyNorm {
    /// sup/lim; bounded for log-Hölder exponents with an unspecified constant.
    pub fn ratio(&self) -> f64 {
        self.sup_norm / self.lim_norm
    }
}

/// r_k = 1 − 2^{−k}, k = 0..=k_max.
pub fn dyadic_radii(k_max: u32) -> Vec<f64> {
    (0..=k_max).map(|k| 1.0 - 0.5f64.powi(k as i32)).collect()
}

/// Node set of a quadrature rule frozen as (weight, exponent, log|f|), so
/// that λ ↦ Σ w |f/λ|^p can be re-evaluated without touching f.
#[derive(Debug, Clone, Default)]
pub(crate) struct Frozen {
    w: Vec<f64>,
    p: Vec<f64>,
    lf: Vec<f64>,
}

impl Frozen {
    pub(crate) fn push(&mut self, w: f64, p: f64, modulus: f64) {
        if w != 0.0 && modulus > 0.0 {
            self.w.push(w);
            self.p.push(p);
            self.lf.push(modulus.ln());
        }
    }

    pub(crate) fn modular(&self, lambda: f64) -> f64 {
        let ll = lambda.ln();
        self.w
            .iter()
            .zip(&self.p)
            .zip(&self.lf)
            .map(|((w, p), lf)| w * (p * (lf - ll)).exp())
            .sum()
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub(crate) fn solve(&self) -> Result<f64> {
        let h = |l: f64| self.modular(l);
        let pm = self.p.iter().copied().fold(f64::INFINITY, f64::min);
        let start = h(1.0).powf(1.0 / pm).clamp(1e-200, 1e200);
        let (lo, hi) = bracket_decreasing(&|l| Ok(h(l)), start, 1.0, 2000)?;
        bisect_monotone(h, lo, hi, 1.0, 1e-14)
    }
}

/// Quadrature rules used by the norm computations.
#[derive(Debug, Clone, PartialEq)]
pub struct Norms {
    pub disc: DiscRule,
    pub circle: CircleRule,
    pub interval: RadialRule,
    /// Accepted |ρ(f/λ*) − 1| after rebuilding nodes at the solution.
    pub modular_tol: f64,
}

impl Default for Norms {
    fn default() -> Self {
        Self {
            disc: DiscRule::default(),
            circle: CircleRule::default().with_max_nodes(1 << 14),
            interval: RadialRule::default(),
            modular_tol: 1e-9,
        }
    }
}

fn modulus_power(f: &AnalyticFunction, p: &VariableExponent, pt: Polar, scale: f64) -> f64 {
    let v = f.eval(pt.z()).norm() / scale;
    if v == 0.0 {
        0.0
    } else {
        (p.eval_polar(pt) * v.ln()).exp()
    }
}

impl Norms {
    /// ∫_𝔻 |f|^{p} dA_α.
    pub fn bergman_modular(&self, f: &AnalyticFunction, p: &VariableExponent, w: BergmanWeight) -> Result<Modular> {
        let d = self.disc.integrate(|pt| modulus_power(f, p, pt, 1.0), w, p.breakpoints())?;
        Ok(Modular {
            value: d.value,
            converged: d.converged && !d.divergent && d.tail <= 1e-3 * d.value.abs(),
            tail: d.tail,
            divergent: d.divergent,
        })
    }

    /// inf{λ > 0 : ρ(f/λ) ≤ 1} against dA_α.
    pub fn luxemburg_norm(&self, f: &AnalyticFunction, p: &VariableExponent, w: BergmanWeight) -> Result<f64> {
        if f.is_identically_zero() {
            return Ok(0.0);
        }
        let mut scale = 1.0;
        let mut last = f64::NAN;
        for _ in 0..4 {
            let d = self
                .disc
                .integrate_keep_nodes(|pt| modulus_power(f, p, pt, scale), w, p.breakpoints())?;
            if d.divergent || !d.value.is_finite() {
                return Err(Error::NotInSpace(format!(
                    "{}: modular diverges against dA_alpha, alpha = {}",
                    f.label(),
                    w.alpha()
                )));
            }
            if d.value == 0.0 {
                return Ok(0.0);
            }
            if (d.value - 1.0).abs() <= self.modular_tol {
                return Ok(scale);
            }
            let mut frozen = Frozen::default();
            for panel in &d.nodes {
                for &(pt, wt) in panel {
                    frozen.push(wt, p.eval_polar(pt), f.eval(pt.z()).norm());
                }
            }
            if d.tail > 0.0 {
                let edge: Vec<f64> = d.nodes.last().map(|v| v.iter().map(|(pt, _)| p.eval_polar(*pt)).collect()).unwrap_or_default();
                let pe = edge.iter().sum::<f64>() / edge.len().max(1) as f64;
                // The tail scales like λ^{-p} with p near its boundary value.
                let m = d.tail * scale.powf(pe);
                frozen.w.push(1.0);
                frozen.p.push(pe);
                frozen.lf.push(m.ln() / pe);
            }
            if frozen.is_empty() {
                return Ok(0.0);
            }
            let lambda = frozen.solve()?;
            if (lambda - last).abs() <= 1e-13 * lambda {
                return Ok(lambda);
            }
            last = lambda;
            scale = lambda;
        }
        Ok(scale)
    }

    /// M_{p(·)}(r, f): Luxemburg norm on the circle of radius r, normalized
    /// arclength.
    pub fn integral_mean(&self, f: &AnalyticFunction, p: &VariableExponent, r: f64) -> Result<f64> {
        check_radius(r)?;
        self.integral_mean_gap(f, p, 1.0 - r)
    }

    /// As [`Norms::integral_mean`], parametrized by the gap t = 1 − r.
    pub fn integral_mean_gap(&self, f: &AnalyticFunction, p: &VariableExponent, gap: f64) -> Result<f64> {
        if f.is_identically_zero() {
            return Ok(0.0);
        }
        let mut scale = 1.0;
        let mut last = f64::NAN;
        for _ in 0..4 {
            let c = self
                .circle
                .mean_with_nodes(|th| modulus_power(f, p, Polar::new(gap, th), scale))?;
            if c.value == 0.0 {
                return Ok(0.0);
            }
            if (c.value - 1.0).abs() <= self.modular_tol {
                return Ok(scale);
            }
            let mut frozen = Frozen::default();
            for &(th, wt) in &c.nodes {
                let pt = Polar::new(gap, th);
                frozen.push(wt, p.eval_polar(pt), f.eval(pt.z()).norm());
            }
            if frozen.is_empty() {
                return Ok(0.0);
            }
            let lambda = frozen.solve()?;
            if (lambda - last).abs() <= 1e-13 * lambda {
                return Ok(lambda);
            }
            last = lambda;
            scale = lambda;
        }
        Ok(scale)
    }

    /// M^{p(·)}_{p(·)}(r, f) = (1/2π)∫ |f(re^{iθ})|^{p(re^{iθ})} dθ.
    pub fn integral_mean_modular(&self, f: &AnalyticFunction, p: &VariableExponent, r: f64) -> Result<f64> {
        check_radius(r)?;
        let gap = 1.0 - r;
        Ok(self.circle.mean(|th| modulus_power(f, p, Polar::new(gap, th), 1.0))?.value)
    }

    /// sup and limit of M_{p(·)}(r, f) over an increasing radius grid.
    pub fn hardy_norm(&self, f: &AnalyticFunction, p: &VariableExponent, radii: &[f64]) -> Result<HardyNorm> {
        if radii.is_empty() {
            return Err(Error::Domain("empty radius grid".into()));
        }
        if radii.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Domain("radius grid must be strictly increasing".into()));
        }
        for &r in radii {
            check_radius(r)?;
        }
        let means: Vec<f64> = radii
            .par_iter()
            .map(|&r| self.integral_mean_gap(f, p, 1.0 - r))
            .collect::<Result<_>>()?;
        let sup_norm = means.iter().copied().fold(0.0, f64::max);
        let lim_norm = *means.last().unwrap_or(&0.0);
        let warning = cauchy_warning(&means);
        Ok(HardyNorm {
            sup_norm,
            lim_norm,
            radii: radii.to_vec(),
            means,
            warning,
        })
    }

    /// Luxemburg norm of f on (−1, 1) with Lebesgue measure, using p(1) for
    /// x > 0 and p(−1) for x < 0.
    pub fn interval_norm(&self, f: &AnalyticFunction, p: &VariableExponent) -> Result<f64> {
        if f.is_identically_zero() {
            return Ok(0.0);
        }
        let sides = [(1.0, p.boundary(0.0)), (-1.0, p.boundary(std::f64::consts::PI))];
        let mut parts = Vec::with_capacity(2);
        for (sign, q) in sides {
            let g = |t: f64| -> Result<f64> {
                let v = f.try_eval(num_complex::Complex64::new(sign * (1.0 - t), 0.0))?.norm();
                Ok(if v == 0.0 { 0.0 } else { (q * v.ln()).exp() })
            };
            let mut m = self.interval.integrate_with(1.0, &[], g)?;
            if m.divergent || !m.value.is_finite() {
                return Err(Error::NotInSpace(format!("{}: not in L^p on (-1, 1)", f.label())));
            }
            m.value = m.value.max(0.0);
            parts.push((m.value, q));
        }
        let h = |l: f64| parts.iter().map(|&(a, q)| a * l.powf(-q)).sum::<f64>();
        if h(1.0) == 0.0 {
            return Ok(0.0);
        }
        let (lo, hi) = bracket_decreasing(&|l| Ok(h(l)), 1.0, 1.0, 2000)?;
        bisect_monotone(h, lo, hi, 1.0, 1e-14)
    }
}

fn check_radius(r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::Domain(format!("radius must satisfy 0 <= r < 1, got {r}")))
    }
}

/// Warns unless the last increments shrink and the final one is small.
fn cauchy_warning(means: &[f64]) -> Option<String> {
    if means.len() < 3 {
        return None;
    }
    let n = means.len();
    let d1 = (means[n - 2] - means[n - 3]).abs();
    let d2 = (means[n - 1] - means[n - 2]).abs();
    let scale = means[n - 1].abs().max(1e-300);
    if d2 <= 1e-12 * scale || (d2 <= d1 * (1.0 + 1e-9) && d2 <= 1e-3 * scale) {
        None
    } else {
        Some(format!(
            "integral means not settled: last increments {d1:e}, {d2:e} at value {}",
            means[n - 1]
        ))
    }
}

pub fn bergman_modular(f: &AnalyticFunction, p: &VariableExponent, w: BergmanWeight) -> Result<Modular> {
    Norms::default().bergman_modular(f, p, w)
}

pub fn luxemburg_norm(f: &AnalyticFunction, p: &VariableExponent, w: BergmanWeight) -> Result<f64> {
    Norms::default().luxemburg_norm(f, p, w)
}

pub fn integral_mean(f: &AnalyticFunction, p: &VariableExponent, r: f64) -> Result<f64> {
    Norms::default().integral_mean(f, p, r)
}

pub fn integral_mean_modular(f: &AnalyticFunction, p: &VariableExponent, r: f64) -> Result<f64> {
    Norms::default().integral_mean_modular(f, p, r)
}

/// Hardy norms on the default grid r_k = 1 − 2^{−k}, k ≤ 20.
pub fn hardy_norm(f: &AnalyticFunction, p: &VariableExponent) -> Result<HardyNorm> {
    Norms::default().hardy_norm(f, p, &dyadic_radii(20))
}

pub fn interval_norm(f: &AnalyticFunction, p: &VariableExponent) -> Result<f64> {
    Norms::default().interval_norm(f, p)
}
