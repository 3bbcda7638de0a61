//! Normalized circle averages (1/2π)∫₀^{2π} f(θ) dθ.

use std::f64::consts::TAU;

use rayon::prelude::*;

use super::gauss::adaptive_kronrod;
use crate::error::{Error, Result};

/// Trapezoid rule with doubling, falling back to adaptive Gauss–Kronrod
/// when the node cap is reached before the doubling sequence settles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleRule {
    pub initial_nodes: usize,
    pub max_nodes: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub fallback: bool,
    pub max_kronrod_panels: usize,
}

impl Default for CircleRule {
    fn default() -> Self {
        Self {
            initial_nodes: 16,
            max_nodes: 1 << 20,
            rel_tol: 1e-9,
            abs_tol: 0.0,
            fallback: true,
            max_kronrod_panels: 4000,
        }
    }
}

impl CircleRule {
    pub fn with_max_nodes(mut self, max_nodes: usize) -> Self {
        self.max_nodes = max_nodes.max(self.initial_nodes);
        self
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    /// Trapezoid nodes θ_k = 2πk/N.
    pub fn trapezoid_nodes(n: usize) -> impl Iterator<Item = f64> {
        (0..n).map(move |k| TAU * k as f64 / n as f64)
    }

    /// Average of `f` over [0, 2π), together with the quadrature nodes used
    /// (angle, normalized weight) so callers can re-evaluate related
    /// integrands on the same rule.
    pub fn mean_with_nodes<F>(&self, f: F) -> Result<CircleMean>
    where
        F: Fn(f64) -> f64 + Sync,
    {
        self.run(f, true)
    }

    pub fn mean<F>(&self, f: F) -> Result<CircleMean>
    where
        F: Fn(f64) -> f64 + Sync,
    {
        self.run(f, false)
    }

    fn run<F>(&self, f: F, keep: bool) -> Result<CircleMean>
    where
        F: Fn(f64) -> f64 + Sync,
    {
        let uniform = |n: usize| -> Vec<(f64, f64)> {
            if keep {
                let w = 1.0 / n as f64;
                (0..n).map(|k| (TAU * k as f64 / n as f64, w)).collect()
            } else {
                Vec::new()
            }
        };
        let n0 = self.initial_nodes.max(8);
        let mut n = n0;
        let mut sum: f64 = sample(&f, (0..n).map(|k| TAU * k as f64 / n as f64))?
            .iter()
            .sum();
        let mut prev = sum / n as f64;
        let mut agreements = 0;
        while 2 * n <= self.max_nodes {
            let odd = sample(&f, (0..n).map(|k| TAU * (2 * k + 1) as f64 / (2 * n) as f64))?;
            sum += odd.iter().sum::<f64>();
            n *= 2;
            let cur = sum / n as f64;
            let close = (cur - prev).abs() <= self.abs_tol.max(self.rel_tol * cur.abs());
            prev = cur;
            agreements = if close { agreements + 1 } else { 0 };
            // Two consecutive agreements guard against an isolated peak that
            // the coarse grids straddle.
            if agreements >= 2 {
                return Ok(CircleMean {
                    value: cur,
                    nodes: uniform(n),
                    converged: true,
                    warning: None,
                });
            }
        }
        if self.fallback {
            let res = adaptive_kronrod(
                &f,
                0.0,
                TAU,
                16,
                self.rel_tol,
                self.abs_tol * TAU,
                self.max_kronrod_panels,
            );
            if !res.value.is_finite() {
                return Err(Error::Evaluation(
                    "non-finite circle integrand in adaptive fallback".into(),
                ));
            }
            let nodes = if keep {
                res.panels
                    .iter()
                    .flat_map(|(panel, _)| panel.points.iter().map(|&(x, w)| (x, w / TAU)))
                    .collect()
            } else {
                Vec::new()
            };
            let warning = (!res.converged).then(|| {
                format!(
                    "circle mean not converged: adaptive error {:e} on value {:e}",
                    res.error / TAU,
                    res.value / TAU
                )
            });
            return Ok(CircleMean {
                value: res.value / TAU,
                nodes,
                converged: res.converged,
                warning,
            });
        }
        Ok(CircleMean {
            value: prev,
            nodes: uniform(n),
            converged: false,
            warning: Some(format!(
                "circle mean not converged at node cap {}",
                self.max_nodes
            )),
        })
    }
}

/// Result of a circle average.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleMean {
    pub value: f64,
    pub nodes: Vec<(f64, f64)>,
    pub converged: bool,
    pub warning: Option<String>,
}

const PARALLEL_THRESHOLD: usize = 4096;

pub(crate) fn sample<F, I>(f: &F, thetas: I) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64 + Sync,
    I: Iterator<Item = f64>,
{
    let thetas: Vec<f64> = thetas.collect();
    let values: Vec<f64> = if thetas.len() >= PARALLEL_THRESHOLD {
        thetas.par_iter().map(|&t| f(t)).collect()
    } else {
        thetas.iter().map(|&t| f(t)).collect()
    };
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::Evaluation(format!(
            "non-finite circle integrand at theta = {}",
            thetas[i]
        )));
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    #[test]
    fn constant_is_exact() {
        let m = CircleRule::default().mean(|_| 2.5).unwrap();
        assert_eq!(m.value, 2.5);
        assert!(m.converged);
    }

    #[test]
    fn poisson_square_mean() {
        let f = |t: f64| (Complex64::new(1.0, 0.0) - Complex64::from_polar(0.5, t)).norm_sqr().recip();
        let m = CircleRule::default().mean(f).unwrap();
        assert_relative_eq!(m.value, 1.0 / 0.75, max_relative = 1e-12);
    }

    #[test]
    fn trigonometric_polynomial_exact() {
        let f = |t: f64| 1.0 + (3.0 * t).cos() + 0.5 * (7.0 * t).sin();
        let m = CircleRule::default().mean(f).unwrap();
        assert_relative_eq!(m.value, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn fallback_handles_sharp_peak() {
        let r = 0.9999;
        let f = |t: f64| (Complex64::new(1.0, 0.0) - Complex64::from_polar(r, t)).norm_sqr().recip();
        let rule = CircleRule::default().with_max_nodes(256);
        let m = rule.mean_with_nodes(f).unwrap();
        assert!(m.converged);
        assert_relative_eq!(m.value, 1.0 / (1.0 - r * r), max_relative = 1e-8);
        let resum: f64 = m.nodes.iter().map(|&(t, w)| w * f(t)).sum();
        assert_relative_eq!(resum, m.value, max_relative = 1e-12);
    }

    #[test]
    fn non_finite_is_rejected() {
        let err = CircleRule::default().mean(|t| if t == 0.0 { f64::NAN } else { 1.0 });
        assert!(matches!(err, Err(Error::Evaluation(_))));
    }
}
