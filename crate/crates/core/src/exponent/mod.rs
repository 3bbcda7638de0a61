//! Variable exponents on the closed disc.

mod construct;
mod harmonic;
mod holder;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Polar;

pub use construct::limsup_block_gap;
pub use harmonic::{cauchy_riemann_residual, FourierModes};
pub use holder::{log_holder_estimate, radial_log_holder_estimate};

pub(crate) type GapFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
pub(crate) type MapFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExponentKind {
    Constant,
    Radial,
    Boundary,
    HarmonicExtended,
    /// Anything else, e.g. compositions p∘ω or exponents given by formula.
    General,
}

/// An exponent p(z) with 0 < p_− ≤ p ≤ p_+ < ∞.
///
/// The primitive evaluation is [`VariableExponent::eval_gap`] in the gap
/// variable t = 1 − |z|, which keeps boundary layers thinner than machine
/// epsilon in r resolvable.
#[derive(Clone)]
pub struct VariableExponent {
    kind: ExponentKind,
    eval: GapFn,
    p_minus: f64,
    p_plus: f64,
    log_holder: Option<f64>,
    modes: Option<Arc<FourierModes>>,
    breakpoints: Arc<Vec<f64>>,
    label: String,
}

impl fmt::Debug for VariableExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VariableExponent")
            .field("kind", &self.kind)
            .field("label", &self.label)
            .field("p_minus", &self.p_minus)
            .field("p_plus", &self.p_plus)
            .field("log_holder", &self.log_holder)
            .finish()
    }
}

impl VariableExponent {
    /// Wraps an arbitrary exponent given in gap/angle form. The declared
    /// bounds are checked on a sample grid.
    pub fn from_gap_fn<F>(kind: ExponentKind, label: impl Into<String>, p_minus: f64, p_plus: f64, eval: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        let p = Self::unchecked(kind, label.into(), p_minus, p_plus, Arc::new(eval));
        p.validate()?;
        Ok(p)
    }

    pub(crate) fn unchecked(kind: ExponentKind, label: String, p_minus: f64, p_plus: f64, eval: GapFn) -> Self {
        Self {
            kind,
            eval,
            p_minus,
            p_plus,
            log_holder: None,
            modes: None,
            breakpoints: Arc::new(Vec::new()),
            label,
        }
    }

    pub(crate) fn with_breakpoints(mut self, breakpoints: Vec<f64>) -> Self {
        self.breakpoints = Arc::new(breakpoints);
        self
    }

    pub(crate) fn with_modes(mut self, modes: FourierModes) -> Self {
        self.modes = Some(Arc::new(modes));
        self
    }

    pub fn with_log_holder(mut self, c: f64) -> Self {
        self.log_holder = Some(c);
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Checks bounds and finiteness on a polar grid including the boundary.
    pub fn validate(&self) -> Result<()> {
        if !(self.p_minus > 0.0 && self.p_minus <= self.p_plus && self.p_plus.is_finite()) {
            return Err(Error::Domain(format!(
                "exponent bounds must satisfy 0 < p_- <= p_+ < inf, got [{}, {}]",
                self.p_minus, self.p_plus
            )));
        }
        let slack = 1e-9 * self.p_plus;
        for i in 0..=24 {
            let gap = if i == 24 { 0.0 } else { 0.5f64.powi(i) };
            for k in 0..16 {
                let theta = std::f64::consts::TAU * k as f64 / 16.0;
                let v = self.try_eval_gap(gap, theta)?;
                if v < self.p_minus - slack || v > self.p_plus + slack {
                    return Err(Error::Domain(format!(
                        "exponent value {v} at gap {gap:e}, theta {theta} outside declared [{}, {}]",
                        self.p_minus, self.p_plus
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> ExponentKind {
        self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn p_minus(&self) -> f64 {
        self.p_minus
    }

    pub fn p_plus(&self) -> f64 {
        self.p_plus
    }

    pub fn log_holder_constant(&self) -> Option<f64> {
        self.log_holder
    }

    pub fn modes(&self) -> Option<&FourierModes> {
        self.modes.as_deref()
    }

    /// Gaps at which the exponent jumps or kinks radially.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn is_radial(&self) -> bool {
        matches!(self.kind, ExponentKind::Constant | ExponentKind::Radial)
    }

    /// The value when the exponent is constant.
    pub fn constant_value(&self) -> Option<f64> {
        (self.kind == ExponentKind::Constant).then_some(self.p_minus)
    }

    pub fn eval_gap(&self, gap: f64, theta: f64) -> f64 {
        (self.eval)(gap, theta)
    }

    pub fn try_eval_gap(&self, gap: f64, theta: f64) -> Result<f64> {
        let v = self.eval_gap(gap, theta);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation(format!(
                "exponent {} is {v} at gap {gap:e}, theta {theta}",
                self.label
            )))
        }
    }

    /// p(re^{iθ}).
    pub fn eval(&self, r: f64, theta: f64) -> f64 {
        self.eval_gap(1.0 - r, theta)
    }

    pub fn eval_polar(&self, p: Polar) -> f64 {
        self.eval_gap(p.gap, p.theta)
    }

    pub fn eval_z(&self, z: Complex64) -> f64 {
        self.eval_polar(Polar::from_z(z))
    }

    /// Boundary trace p(e^{iθ}).
    pub fn boundary(&self, theta: f64) -> f64 {
        self.eval_gap(0.0, theta)
    }

    /// Radial profile p(r) of a radial exponent in the gap variable.
    pub fn radial_gap(&self, gap: f64) -> f64 {
        self.eval_gap(gap, 0.0)
    }

    /// p̂(re^{iθ}) = p(e^{iθ}).
    pub fn constantize_radially(&self) -> VariableExponent {
        match self.kind {
            ExponentKind::Constant | ExponentKind::Boundary => self.clone(),
            ExponentKind::Radial => {
                let q = self.boundary(0.0);
                VariableExponent::constant(q)
                    .unwrap_or_else(|_| self.clone())
                    .with_label(format!("boundary trace of {}", self.label))
            }
            _ => {
                let inner = self.eval.clone();
                let mut p = VariableExponent::unchecked(
                    ExponentKind::Boundary,
                    format!("boundary trace of {}", self.label),
                    self.p_minus,
                    self.p_plus,
                    Arc::new(move |_, theta| inner(0.0, theta)),
                );
                p.log_holder = self.log_holder;
                p
            }
        }
    }

    /// p∘ω for an analytic self-map ω of the disc.
    pub fn compose<W>(&self, omega: W, label: impl Into<String>) -> VariableExponent
    where
        W: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        self.compose_arc(Arc::new(omega), label.into())
    }

    pub(crate) fn compose_arc(&self, omega: MapFn, label: String) -> VariableExponent {
        let inner = self.clone();
        let kind = if self.kind == ExponentKind::Constant {
            ExponentKind::Constant
        } else {
            ExponentKind::General
        };
        VariableExponent::unchecked(
            kind,
            label,
            self.p_minus,
            self.p_plus,
            Arc::new(move |gap, theta| inner.eval_z(omega(Polar::new(gap, theta).z()))),
        )
    }
}

/// A harmonic exponent p together with its conjugate p̃ (p̃(0) = 0), so
/// that p̂ = p + i p̃ is analytic.
#[derive(Clone)]
pub struct ComplexifiedExponent {
    p: VariableExponent,
    hat: MapFn,
    tilde_sup: f64,
    modes: usize,
    residual: f64,
}

impl fmt::Debug for ComplexifiedExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ComplexifiedExponent")
            .field("p", &self.p)
            .field("tilde_sup", &self.tilde_sup)
            .field("modes", &self.modes)
            .field("residual", &self.residual)
            .finish()
    }
}

impl ComplexifiedExponent {
    pub fn p(&self) -> &VariableExponent {
        &self.p
    }

    /// p̂(z) = p(z) + i p̃(z).
    pub fn hat(&self, z: Complex64) -> Complex64 {
        (self.hat)(z)
    }

    pub fn tilde(&self, z: Complex64) -> f64 {
        self.hat(z).im
    }

    /// Estimate of ‖p̃‖_∞ from a boundary grid.
    pub fn tilde_sup_norm(&self) -> f64 {
        self.tilde_sup
    }

    /// Fourier truncation order.
    pub fn modes(&self) -> usize {
        self.modes
    }

    /// Cauchy–Riemann residual observed when the conjugate was built.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub(crate) fn hat_fn(&self) -> MapFn {
        self.hat.clone()
    }

    /// Complexification of a constant exponent (p̃ ≡ 0).
    pub fn constant(q: f64) -> Result<Self> {
        let p = VariableExponent::constant(q)?;
        Ok(Self {
            p,
            hat: Arc::new(move |_| Complex64::new(q, 0.0)),
            tilde_sup: 0.0,
            modes: 0,
            residual: 0.0,
        })
    }

    /// (p∘ω)^ = p̂∘ω, still analytic.
    pub fn compose<W>(&self, omega: W, label: impl Into<String>) -> ComplexifiedExponent
    where
        W: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        let omega: MapFn = Arc::new(omega);
        let p = self.p.compose_arc(omega.clone(), label.into());
        let hat = self.hat.clone();
        ComplexifiedExponent {
            p,
            hat: Arc::new(move |z| hat(omega(z))),
            tilde_sup: self.tilde_sup,
            modes: self.modes,
            residual: self.residual,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn compose_evaluates_through_map() {
        let p = VariableExponent::harmonic_from_trig(2.0, &[(1, 1.0, 0.0)]).unwrap();
        let pw = p.compose(|z| z * z, "p(z^2)");
        let z = Complex64::new(0.3, 0.4);
        assert_abs_diff_eq!(pw.eval_z(z), 2.0 + (z * z).re, epsilon = 1e-12);
    }

    #[test]
    fn declared_bounds_are_enforced() {
        let bad = VariableExponent::from_gap_fn(ExponentKind::Radial, "bad", 2.0, 2.5, |t, _| 2.0 + t);
        assert!(matches!(bad, Err(Error::Domain(_))));
    }
}
