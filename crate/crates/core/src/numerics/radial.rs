//! Radial integrals concentrated at the boundary.
//!
//! Everything here is parametrized by the gap t = 1 − r, so that panels as
//! thin as 2^{-70} next to r = 1 stay representable.

use rayon::prelude::*;

use super::gauss::GaussLegendre;
use crate::error::{Error, Result};

/// Composite Gauss–Legendre rule on dyadic panels [x·2^{-j-1}, x·2^{-j}] in
/// the gap variable, j = 0..J−1, with a geometric tail estimate for (0, x·2^{-J}).
#[derive(Debug, Clone, PartialEq)]
pub struct RadialRule {
    pub nodes_per_panel: usize,
    pub max_panels: usize,
    /// Stop early once this many consecutive panels contribute less than
    /// `negligible` relative to the running total.
    pub negligible: f64,
    pub quiet_panels: usize,
    gauss: GaussLegendre,
}

impl Default for RadialRule {
    fn default() -> Self {
        Self::new(16, 40)
    }
}

impl RadialRule {
    pub fn new(nodes_per_panel: usize, max_panels: usize) -> Self {
        Self {
            nodes_per_panel,
            max_panels: max_panels.max(3),
            negligible: 1e-17,
            quiet_panels: 3,
            gauss: GaussLegendre::new(nodes_per_panel.max(1)),
        }
    }

    fn gauss(&self) -> &GaussLegendre {
        &self.gauss
    }

    /// Dyadic panels covering gaps (x·2^{-J}, x], split further at every
    /// breakpoint that falls strictly inside a panel.
    pub fn panels(&self, x: f64, breakpoints: &[f64]) -> Vec<RadialPanel> {
        let mut out = Vec::with_capacity(self.max_panels);
        let mut hi = x;
        for _ in 0..self.max_panels {
            let lo = 0.5 * hi;
            out.push(self.panel(lo, hi, breakpoints));
            hi = lo;
        }
        out
    }

    /// Gauss nodes (gap, weight) on [lo, hi] split at interior breakpoints.
    pub fn panel(&self, lo: f64, hi: f64, breakpoints: &[f64]) -> RadialPanel {
        let mut cuts: Vec<f64> = breakpoints
            .iter()
            .copied()
            .filter(|&b| b > lo && b < hi && (b - lo) > 1e-15 * hi && (hi - b) > 1e-15 * hi)
            .collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut edges = Vec::with_capacity(cuts.len() + 2);
        edges.push(lo);
        edges.extend(cuts);
        edges.push(hi);
        let mut nodes = Vec::with_capacity(self.nodes_per_panel * (edges.len() - 1));
        for w in edges.windows(2) {
            nodes.extend(self.gauss().mapped(w[0], w[1]));
        }
        RadialPanel { lo, hi, nodes }
    }

    /// ∫₀^x g(t) dt with g given in the gap variable.
    pub fn integrate<G>(&self, x: f64, breakpoints: &[f64], g: G) -> Result<RadialIntegral>
    where
        G: Fn(f64) -> f64 + Sync,
    {
        self.integrate_with(x, breakpoints, |t| Ok(g(t)))
    }

    /// Like [`RadialRule::integrate`] with a fallible integrand.
    pub fn integrate_with<G>(&self, x: f64, breakpoints: &[f64], g: G) -> Result<RadialIntegral>
    where
        G: Fn(f64) -> Result<f64> + Sync,
    {
        if !(x > 0.0 && x <= 1.0) {
            return Err(Error::Domain(format!("radial gap range must be in (0, 1], got {x}")));
        }
        let mut sums = Vec::with_capacity(self.max_panels);
        let mut total = 0.0;
        let mut quiet = 0;
        let mut hi = x;
        while sums.len() < self.max_panels {
            let lo = 0.5 * hi;
            let panel = self.panel(lo, hi, breakpoints);
            let s = panel.integrate_with(&g)?;
            total += s;
            sums.push(s);
            hi = lo;
            if s.abs() <= self.negligible * total.abs() {
                quiet += 1;
                if quiet >= self.quiet_panels {
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        Ok(RadialIntegral::from_panel_sums(sums))
    }

    /// Plain composite rule on a closed gap interval [lo, hi] (no tail).
    pub fn integrate_interval<G>(&self, lo: f64, hi: f64, breakpoints: &[f64], g: G) -> Result<f64>
    where
        G: Fn(f64) -> f64 + Sync,
    {
        if !(lo >= 0.0 && lo < hi) {
            return Err(Error::Domain(format!("invalid gap interval [{lo}, {hi}]")));
        }
        // Dyadic sub-panels keep the rule graded toward the smaller endpoint.
        let mut total = 0.0;
        let mut top = hi;
        let floor = if lo > 0.0 { lo } else { hi * 0.5f64.powi(self.max_panels as i32) };
        while top > floor {
            let bottom = (0.5 * top).max(floor);
            total += self.panel(bottom, top, breakpoints).integrate_with(&|t| Ok(g(t)))?;
            top = bottom;
        }
        Ok(total)
    }
}

/// Nodes (gap, weight) of one dyadic panel.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialPanel {
    pub lo: f64,
    pub hi: f64,
    pub nodes: Vec<(f64, f64)>,
}

impl RadialPanel {
    pub fn integrate_with<G>(&self, g: &G) -> Result<f64>
    where
        G: Fn(f64) -> Result<f64> + Sync,
    {
        let values: Vec<Result<f64>> = if self.nodes.len() >= 8 {
            self.nodes.par_iter().map(|&(t, _)| g(t)).collect()
        } else {
            self.nodes.iter().map(|&(t, _)| g(t)).collect()
        };
        let mut s = 0.0;
        for (v, &(t, w)) in values.into_iter().zip(&self.nodes) {
            let v = v?;
            if !v.is_finite() {
                return Err(Error::Evaluation(format!("non-finite radial integrand at gap {t:e}")));
            }
            s += w * v;
        }
        Ok(s)
    }
}

/// Composite value with separately reported tail.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialIntegral {
    /// Panel sum plus tail estimate.
    pub value: f64,
    pub tail: f64,
    pub panel_sums: Vec<f64>,
    pub divergent: bool,
}

impl RadialIntegral {
    pub fn from_panel_sums(panel_sums: Vec<f64>) -> Self {
        let body: f64 = panel_sums.iter().sum();
        let (tail, divergent) = geometric_tail(&panel_sums);
        Self {
            value: if divergent { f64::INFINITY } else { body + tail },
            tail,
            panel_sums,
            divergent,
        }
    }

    /// Panel sum without the tail.
    pub fn body(&self) -> f64 {
        self.panel_sums.iter().sum()
    }
}

/// Tail beyond the last panel, extrapolated from the ratio of the last two
/// panel contributions; non-decreasing contributions over the final three
/// panels flag divergence.
pub fn geometric_tail(sums: &[f64]) -> (f64, bool) {
    let n = sums.len();
    if n < 3 {
        return (0.0, false);
    }
    let (a, b, c) = (sums[n - 3], sums[n - 2], sums[n - 1]);
    if c > 0.0 && c >= b && b >= a {
        return (f64::INFINITY, true);
    }
    if b.abs() <= f64::MIN_POSITIVE || c == 0.0 {
        return (0.0, false);
    }
    let ratio = c / b;
    if ratio > 0.0 && ratio < 1.0 {
        (c * ratio / (1.0 - ratio), false)
    } else {
        // Irregular decay: one more panel's worth is the honest guess.
        (c.abs(), false)
    }
}
