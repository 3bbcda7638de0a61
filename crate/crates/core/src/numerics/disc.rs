//! Integrals over the disc against dA_α = (α+1)(1−|z|²)^α dA.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::circle::CircleRule;
use super::radial::{RadialIntegral, RadialRule};
use crate::error::{Error, Result};

/// Point of the closed disc in gap/angle form: z = (1 − gap)·e^{iθ}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polar {
    pub gap: f64,
    pub theta: f64,
}

impl Polar {
    pub fn new(gap: f64, theta: f64) -> Self {
        Self { gap, theta }
    }

    pub fn from_radius(r: f64, theta: f64) -> Self {
        Self { gap: 1.0 - r, theta }
    }

    pub fn from_z(z: Complex64) -> Self {
        let (r, theta) = z.to_polar();
        let theta = if theta < 0.0 { theta + std::f64::consts::TAU } else { theta };
        Self { gap: 1.0 - r, theta }
    }

    pub fn r(&self) -> f64 {
        1.0 - self.gap
    }

    pub fn z(&self) -> Complex64 {
        Complex64::from_polar(1.0 - self.gap, self.theta)
    }
}

/// Reference measure: α > −1 gives the weighted area measure, α = −1 is
/// the sentinel for the Hardy (boundary) case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BergmanWeight {
    alpha: f64,
}

impl BergmanWeight {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha >= -1.0) || !alpha.is_finite() {
            return Err(Error::Domain(format!("weight exponent must be >= -1, got {alpha}")));
        }
        Ok(Self { alpha })
    }

    pub fn area() -> Self {
        Self { alpha: 0.0 }
    }

    pub fn hardy() -> Self {
        Self { alpha: -1.0 }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn is_hardy(&self) -> bool {
        self.alpha == -1.0
    }

    /// Radial density of dA_α in the gap variable: (α+1)(t(2−t))^α · 2(1−t).
    pub fn density(&self, gap: f64) -> f64 {
        let a = self.alpha;
        if a == 0.0 {
            2.0 * (1.0 - gap)
        } else {
            (a + 1.0) * (gap * (2.0 - gap)).powf(a) * 2.0 * (1.0 - gap)
        }
    }
}

/// Tensor rule on the disc: radial panels in the outer variable, adaptive
/// circle averages inside.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscRule {
    pub circle: CircleRule,
    pub radial: RadialRule,
}

impl Default for DiscRule {
    fn default() -> Self {
        Self {
            circle: CircleRule {
                max_nodes: 1024,
                max_kronrod_panels: 400,
                ..CircleRule::default()
            },
            radial: RadialRule::default(),
        }
    }
}

/// Value of a disc integral; `nodes` is filled only on request and holds
/// per radial panel the (point, weight) pairs of the tensor rule.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscIntegral {
    pub value: f64,
    pub tail: f64,
    pub divergent: bool,
    pub converged: bool,
    pub warnings: Vec<String>,
    pub panel_sums: Vec<f64>,
    pub nodes: Vec<Vec<(Polar, f64)>>,
}

impl DiscRule {
    /// ∫_𝔻 F dA_α. `breakpoints` are gaps where F has radial jumps.
    pub fn integrate<F>(&self, f: F, w: BergmanWeight, breakpoints: &[f64]) -> Result<DiscIntegral>
    where
        F: Fn(Polar) -> f64 + Sync,
    {
        self.run(&f, w, breakpoints, false)
    }

    /// As [`DiscRule::integrate`] but also returns the frozen node set.
    pub fn integrate_keep_nodes<F>(
        &self,
        f: F,
        w: BergmanWeight,
        breakpoints: &[f64],
    ) -> Result<DiscIntegral>
    where
        F: Fn(Polar) -> f64 + Sync,
    {
        self.run(&f, w, breakpoints, true)
    }

    fn run<F>(&self, f: &F, w: BergmanWeight, breakpoints: &[f64], keep: bool) -> Result<DiscIntegral>
    where
        F: Fn(Polar) -> f64 + Sync,
    {
        if w.is_hardy() {
            return Err(Error::Domain("disc integral needs alpha > -1".into()));
        }
        let mut sums = Vec::new();
        let mut warnings = Vec::new();
        let mut converged = true;
        let mut nodes = Vec::new();
        let mut total = 0.0;
        let mut quiet = 0;
        let mut hi = 1.0;
        while sums.len() < self.radial.max_panels {
            let lo = 0.5 * hi;
            let panel = self.radial.panel(lo, hi, breakpoints);
            let circles: Vec<Result<_>> = panel
                .nodes
                .par_iter()
                .map(|&(t, _)| {
                    let rule = if keep {
                        self.circle.mean_with_nodes(|th| f(Polar::new(t, th)))
                    } else {
                        self.circle.mean(|th| f(Polar::new(t, th)))
                    };
                    rule.map_err(|e| match e {
                        Error::Evaluation(m) => Error::Evaluation(format!("{m} (gap {t:e})")),
                        other => other,
                    })
                })
                .collect();
            let mut s = 0.0;
            let mut panel_nodes = Vec::new();
            for (c, &(t, wr)) in circles.into_iter().zip(&panel.nodes) {
                let c = c?;
                let radial_w = wr * w.density(t);
                s += radial_w * c.value;
                if !c.converged {
                    converged = false;
                    if let Some(msg) = c.warning {
                        if warnings.len() < 8 {
                            warnings.push(format!("{msg} (gap {t:e})"));
                        }
                    }
                }
                if keep {
                    panel_nodes.extend(c.nodes.into_iter().map(|(th, wc)| (Polar::new(t, th), radial_w * wc)));
                }
            }
            if keep {
                nodes.push(panel_nodes);
            }
            total += s;
            sums.push(s);
            hi = lo;
            if s.abs() <= self.radial.negligible * total.abs() {
                quiet += 1;
                if quiet >= self.radial.quiet_panels {
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        let RadialIntegral {
            value,
            tail,
            panel_sums,
            divergent,
        } = RadialIntegral::from_panel_sums(sums);
        Ok(DiscIntegral {
            value,
            tail,
            divergent,
            converged,
            warnings,
            panel_sums,
            nodes,
        })
    }
}
