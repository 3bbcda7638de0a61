//! Explicit exponent constructions.

use std::sync::Arc;

use super::{ExponentKind, VariableExponent};
use crate::error::{Error, Result};

/// Deepest block for which jump locations are listed as quadrature
/// breakpoints; deeper blocks are still evaluated exactly.
const LISTED_BLOCKS: i32 = 80;

/// Gap at which block n of the limsup construction switches from P back to
/// q: on the gaps (g_n, 2^{-n+1}] the exponent is P and
/// ∫ t^{2(q−P)/q} dt over that range equals 2^{-n-1}.
pub fn limsup_block_gap(q: f64, big_p: f64, n: i32) -> f64 {
    let beta = 2.0 * (q - big_p) / q;
    let top = 0.5f64.powi(n - 1);
    // budget / top^{β+1} with budget 2^{-n-1}
    let eps = ((n - 1) as f64 * beta - 2.0).exp2();
    let log_ratio = if (beta + 1.0).abs() < 1e-12 {
        -eps
    } else {
        (-(beta + 1.0) * eps).ln_1p() / (beta + 1.0)
    };
    (top * log_ratio.exp()).max(0.5 * top)
}

impl VariableExponent {
    pub fn constant(q: f64) -> Result<Self> {
        if !(q > 0.0) || !q.is_finite() {
            return Err(Error::Domain(format!("constant exponent must be positive and finite, got {q}")));
        }
        Ok(
            Self::unchecked(ExponentKind::Constant, format!("const {q}"), q, q, Arc::new(move |_, _| q))
                .with_log_holder(0.0),
        )
    }

    /// Radial exponent from its profile in the gap variable.
    pub fn radial<F>(label: impl Into<String>, p_minus: f64, p_plus: f64, breakpoints: Vec<f64>, profile: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let p = Self::unchecked(
            ExponentKind::Radial,
            label.into(),
            p_minus,
            p_plus,
            Arc::new(move |gap, _| profile(gap)),
        )
        .with_breakpoints(breakpoints);
        p.validate()?;
        Ok(p)
    }

    /// p(r) = q + c/(−log(1−r)) for r ≥ r0, frozen at its r0 value below.
    /// Its radial log-Hölder constant is exactly c.
    pub fn log_decay(q: f64, c: f64, r0: f64) -> Result<Self> {
        if !(q > 0.0 && c >= 0.0 && r0 > 0.0 && r0 < 1.0) {
            return Err(Error::Domain(format!(
                "log-decay exponent needs q > 0, c >= 0, 0 < r0 < 1; got q={q}, c={c}, r0={r0}"
            )));
        }
        let t0 = 1.0 - r0;
        let top = q + c / (-t0.ln());
        let p = Self::radial(format!("logdecay q={q} c={c} r0={r0}"), q, top, vec![t0], move |t| {
            if t <= 0.0 {
                q
            } else if t <= t0 {
                q + c / (-t.ln())
            } else {
                top
            }
        })?;
        Ok(p.with_log_holder(c))
    }

    /// p(r) = q + (1 − r).
    pub fn linear_gap(q: f64) -> Result<Self> {
        if !(q > 0.0) {
            return Err(Error::Domain(format!("q must be positive, got {q}")));
        }
        Self::radial(format!("lineargap q={q}"), q, q + 1.0, vec![], move |t| q + t.clamp(0.0, 1.0))
    }

    /// Radial step exponent equal to P on an initial piece of each dyadic
    /// block (2^{-n}, 2^{-n+1}] and q on the rest, so that limsup p = P
    /// while the boundary weight condition stays bounded.
    pub fn limsup(q: f64, big_p: f64) -> Result<Self> {
        if !(q > 0.0 && big_p > q && big_p.is_finite()) {
            return Err(Error::Domain(format!("limsup exponent needs 0 < q < P < inf, got q={q}, P={big_p}")));
        }
        let mut breaks = Vec::with_capacity(2 * LISTED_BLOCKS as usize);
        for n in 1..=LISTED_BLOCKS {
            breaks.push(0.5f64.powi(n - 1));
            breaks.push(limsup_block_gap(q, big_p, n));
        }
        Self::radial(format!("limsup q={q} P={big_p}"), q, big_p, breaks, move |t| {
            if !(t > 0.0) {
                return q;
            }
            let n = ((-t.log2()).floor() as i32 + 1).max(1);
            if t > limsup_block_gap(q, big_p, n) {
                big_p
            } else {
                q
            }
        })
    }

    /// p(r) = q + (q/2)(−log(1−r))^{-1/2} for r > 1 − e^{-1}, capped at its
    /// value 3q/2 there.
    pub fn sqrt_log(q: f64) -> Result<Self> {
        if !(q > 0.0) || !q.is_finite() {
            return Err(Error::Domain(format!("sqrt-log exponent needs q > 0, got {q}")));
        }
        let edge = (-1.0f64).exp();
        Self::radial(format!("sqrtlog q={q}"), q, 1.5 * q, vec![edge], move |t| {
            if !(t > 0.0) {
                q
            } else if t < edge {
                q + 0.5 * q / (-t.ln()).sqrt()
            } else {
                1.5 * q
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sqrt_log_values() {
        let p = VariableExponent::sqrt_log(2.0).unwrap();
        assert_abs_diff_eq!(p.radial_gap((-4.0f64).exp()), 2.5, epsilon = 1e-14);
        let t = (-25.0f64).exp();
        let w = (-2.0 * (p.radial_gap(t) - 2.0) / 2.0 * t.ln()).exp();
        assert_abs_diff_eq!(w, 5f64.exp(), epsilon = 1e-2);
        let mut last = f64::INFINITY;
        for k in 1..200 {
            let v = p.radial_gap((-(k as f64) * 0.5).exp() * 0.36);
            assert!(v > 2.0 && v <= last);
            last = v;
        }
    }

    #[test]
    fn limsup_budget_is_half() {
        let (q, big_p) = (2.0, 4.0);
        let beta = 2.0 * (q - big_p) / q;
        for n in 1..=20 {
            let g = limsup_block_gap(q, big_p, n);
            let top = 0.5f64.powi(n - 1);
            assert!(g > 0.5 * top && g < top);
            let integral = (top.powf(beta + 1.0) - g.powf(beta + 1.0)) / (beta + 1.0);
            assert_abs_diff_eq!(integral, 0.5f64.powi(n + 1), epsilon = 1e-9 * 0.5f64.powi(n + 1));
        }
    }

    #[test]
    fn limsup_near_critical_exponent() {
        let (q, big_p) = (1.0, 1.0 + 1e-6);
        for n in 1..=20 {
            let g = limsup_block_gap(q, big_p, n);
            assert!(g.is_finite() && g < 0.5f64.powi(n - 1));
        }
    }

    #[test]
    fn limsup_takes_both_values_in_every_block() {
        let p = VariableExponent::limsup(2.0, 4.0).unwrap();
        // Below 2^{-26} the P-piece is narrower than one ulp of the gap.
        for n in 1..=24 {
            let top = 0.5f64.powi(n - 1);
            assert_eq!(p.radial_gap(top), 4.0);
            assert_eq!(p.radial_gap(0.75 * top), 2.0);
        }
        assert_eq!(p.radial_gap(0.0), 2.0);
    }

    #[test]
    fn log_decay_values() {
        let p = VariableExponent::log_decay(2.0, 1.0, 0.5).unwrap();
        assert_abs_diff_eq!(p.eval(0.9, 1.0), 2.0 + 1.0 / (-(0.1f64).ln()), epsilon = 1e-12);
        assert_abs_diff_eq!(p.eval(0.2, 0.0), 2.0 + 1.0 / 2f64.ln(), epsilon = 1e-12);
    }
}
