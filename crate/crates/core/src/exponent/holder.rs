//! Empirical log-Hölder constants.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::VariableExponent;
use crate::error::{Error, Result};

fn halton(mut i: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// The k-th point of a fixed low-discrepancy sequence on the closed disc,
/// denser toward the circle; every eighth point lies on the circle.
fn sample_point(k: usize) -> (f64, f64) {
    let u = halton(k + 1, 2);
    let theta = TAU * halton(k + 1, 3);
    let gap = if k % 8 == 7 { 0.0 } else { u * u };
    (gap, theta)
}

/// sup of |p(z) − p(w)|·log(1/|z − w|) over pairs among the first
/// `sample_count` points of a fixed sequence, restricted to |z − w| ≤ 1/2.
///
/// Point sets are nested, so the estimate is nondecreasing in `sample_count`.
pub fn log_holder_estimate(p: &VariableExponent, sample_count: usize) -> Result<f64> {
    if sample_count < 2 {
        return Err(Error::Domain(format!("need at least two sample points, got {sample_count}")));
    }
    let mut pts = Vec::with_capacity(sample_count);
    for k in 0..sample_count {
        let (gap, theta) = sample_point(k);
        let v = p.try_eval_gap(gap, theta)?;
        pts.push((Complex64::from_polar(1.0 - gap, theta), v));
    }
    let mut best: f64 = 0.0;
    for i in 0..pts.len() {
        let (zi, vi) = pts[i];
        for &(zj, vj) in &pts[i + 1..] {
            let d = (zi - zj).norm();
            if d > 0.0 && d <= 0.5 {
                best = best.max((vi - vj).abs() * (1.0 / d).ln());
            }
        }
    }
    Ok(best)
}

/// sup of |p(re^{iθ}) − p(e^{iθ})|·(−log(1−r)) over R ≤ r < 1, sampled on
/// log-spaced gaps from 1 − R down to 1e-100.
pub fn radial_log_holder_estimate(p: &VariableExponent, big_r: f64, sample_count: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&big_r) {
        return Err(Error::Domain(format!("radius must satisfy 0 <= R < 1, got {big_r}")));
    }
    let n_theta = if p.is_radial() { 1 } else { 32 };
    let n_gap = (sample_count / n_theta).max(2);
    let top = (1.0 - big_r).ln();
    let bottom = (1e-100f64).ln();
    let mut best: f64 = 0.0;
    for j in 0..n_theta {
        let theta = TAU * j as f64 / n_theta as f64;
        let edge = p.try_eval_gap(0.0, theta)?;
        for i in 0..n_gap {
            let lt = top + (bottom - top) * i as f64 / (n_gap - 1) as f64;
            let v = p.try_eval_gap(lt.exp(), theta)?;
            best = best.max((v - edge).abs() * (-lt));
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn constant_has_zero_constant() {
        let p = VariableExponent::constant(2.0).unwrap();
        assert_eq!(log_holder_estimate(&p, 200).unwrap(), 0.0);
        assert_eq!(radial_log_holder_estimate(&p, 0.0, 100).unwrap(), 0.0);
    }

    #[test]
    fn radial_closed_forms() {
        let p = VariableExponent::log_decay(2.0, 1.0, 0.5).unwrap();
        assert_abs_diff_eq!(radial_log_holder_estimate(&p, 0.5, 4000).unwrap(), 1.0, epsilon = 1e-3);
        let p = VariableExponent::linear_gap(2.0).unwrap();
        let e = (-1.0f64).exp();
        assert_abs_diff_eq!(radial_log_holder_estimate(&p, 0.0, 10_000).unwrap(), e, epsilon = 1e-3);
        assert!(radial_log_holder_estimate(&p, 1.0, 10).is_err());
    }

    #[test]
    fn boundary_constantized_is_zero() {
        let p = VariableExponent::harmonic_from_trig(2.0, &[(1, 1.0, 0.0)]).unwrap();
        let hat = p.constantize_radially();
        assert_eq!(radial_log_holder_estimate(&hat, 0.0, 1000).unwrap(), 0.0);
    }

    #[test]
    fn refinement_is_monotone() {
        let p = VariableExponent::harmonic_from_trig(2.0, &[(1, 1.0, 0.0)]).unwrap();
        let mut last = 0.0;
        for n in [10, 40, 160, 640] {
            let v = log_holder_estimate(&p, n).unwrap();
            assert!(v >= last);
            last = v;
        }
    }
}
