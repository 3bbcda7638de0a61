use std::sync::Arc;

use num_complex::Complex64;

use super::AnalyticFunction;
use crate::error::{Error, Result};
use crate::exponent::ComplexifiedExponent;

/// f^{s p̂} = exp(s p̂ log f) for zero-free f with a continuous logarithm.
///
/// |f^{s p̂}| = |f|^{s p} e^{−s p̃ arg f}.
pub fn complex_power(f: &AnalyticFunction, p: &ComplexifiedExponent, s: f64) -> Result<AnalyticFunction> {
    let label = format!("({})^({s} p^)", f.label());
    if f.is_identically_zero() {
        if s > 0.0 {
            return Ok(AnalyticFunction::zero().with_label(label));
        }
        return Err(Error::Singularity(format!("{}: non-positive power of zero", f.label())));
    }
    if let Some(zs) = f.zeros() {
        if !zs.is_empty() {
            return Err(Error::Domain(format!("{}: complex power needs a zero-free function", f.label())));
        }
    }
    // Fails early with a branch error when no logarithm is available.
    f.log(Complex64::new(0.0, 0.0))?;
    let hat = p.hat_fn();
    let base = f.clone();
    let log = {
        let hat = hat.clone();
        let base = base.clone();
        move |z: Complex64| -> Result<Complex64> {
            let l = base.log(z)?;
            if !(l.re.is_finite() && l.im.is_finite()) {
                return Err(Error::Singularity(format!("{} vanishes at {z}", base.label())));
            }
            Ok(s * hat(z) * l)
        }
    };
    let log = Arc::new(log);
    let eval_log = log.clone();
    Ok(AnalyticFunction::from_fallible(label, move |z| Ok(eval_log(z)?.exp()))
        .with_zeros(Vec::new())
        .with_log(move |z| log(z))
        .with_boundary_regular(f.is_boundary_regular()))
}

/// f^{1/n} on the branch continuing the principal value at 0 along rays.
pub fn nth_root(f: &AnalyticFunction, n: u32) -> Result<AnalyticFunction> {
    if n == 0 {
        return Err(Error::Domain("root order must be positive".into()));
    }
    if n == 1 {
        return Ok(f.clone());
    }
    if f.is_identically_zero() {
        return Ok(AnalyticFunction::zero());
    }
    if let Some(zs) = f.zeros() {
        if !zs.is_empty() {
            return Err(Error::Domain(format!("{}: root needs a zero-free function", f.label())));
        }
    }
    let base = f.clone();
    let log: Arc<dyn Fn(Complex64) -> Result<Complex64> + Send + Sync> = if f.has_log() || f.arg_bound().is_some_and(|b| b < std::f64::consts::PI) {
        Arc::new(move |z| base.log(z))
    } else {
        Arc::new(move |z| continued_log(&base, z))
    };
    let inv = 1.0 / n as f64;
    let eval_log = log.clone();
    Ok(
        AnalyticFunction::from_fallible(format!("({})^(1/{n})", f.label()), move |z| Ok((inv * eval_log(z)?).exp()))
            .with_zeros(Vec::new())
            .with_log(move |z| Ok(inv * log(z)?))
            .with_boundary_regular(f.is_boundary_regular()),
    )
}

/// log f(z) by continuation along [0, z], refining where the argument of
/// consecutive ratios exceeds π/4.
pub(crate) fn continued_log(f: &AnalyticFunction, z: Complex64) -> Result<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let f0 = f.try_eval(zero)?;
    if f0.norm() == 0.0 {
        return Err(Error::Singularity(format!("{} vanishes at 0", f.label())));
    }
    let mut acc = f0.ln();
    let mut prev = f0;
    let mut t: f64 = 0.0;
    let mut step: f64 = 1.0 / 16.0;
    while t < 1.0 {
        let next_t = (t + step).min(1.0);
        let v = f.try_eval(z * next_t)?;
        if v.norm() == 0.0 {
            return Err(Error::Singularity(format!("{} vanishes at {}", f.label(), z * next_t)));
        }
        let ratio = v / prev;
        if ratio.arg().abs() > std::f64::consts::FRAC_PI_4 && step > 1e-12 {
            step *= 0.5;
            continue;
        }
        acc += ratio.ln();
        prev = v;
        t = next_t;
        if ratio.arg().abs() < 0.05 {
            step = (2.0 * step).min(0.25);
        }
    }
    // Re-anchor the modulus to avoid accumulated drift.
    acc.re = prev.norm().ln();
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::VariableExponent;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn modulus_identity() {
        let p = VariableExponent::harmonic_from_trig(2.0, &[(1, 0.5, 0.0)]).unwrap().conjugate().unwrap();
        let f = AnalyticFunction::one_minus_power(-1.0).product(&AnalyticFunction::constant(c(2.0, 0.0)));
        // f = 2(1 − z), arg bound π/2.
        let g = complex_power(&f, &p, 0.5).unwrap();
        for &z in &[c(0.0, 0.0), c(0.3, 0.4), c(-0.7, 0.1), c(0.5, -0.8)] {
            let fz = f.eval(z);
            let expect = fz.norm().powf(0.5 * p.p().eval_z(z)) * (-0.5 * p.tilde(z) * fz.arg()).exp();
            assert_abs_diff_eq!(g.eval(z).norm(), expect, epsilon = 1e-12 * expect.max(1.0));
        }
    }

    #[test]
    fn rejects_zeros_and_unbounded_arguments() {
        let p = ComplexifiedExponent::constant(2.0).unwrap();
        let z = AnalyticFunction::monomial(c(1.0, 0.0), 1);
        assert!(matches!(complex_power(&z, &p, 0.5), Err(Error::Domain(_))));
        let wild = AnalyticFunction::new("e^{4z}", |z| (4.0 * z).exp()).with_zeros(vec![]).with_arg_bound(4.0);
        assert!(matches!(complex_power(&wild, &p, 0.5), Err(Error::Branch(_))));
        let zero = AnalyticFunction::zero();
        assert!(complex_power(&zero, &p, 0.5).unwrap().is_identically_zero());
    }

    #[test]
    fn roots_follow_continuation() {
        let f = AnalyticFunction::new("(1+z/2)^2", |z| (1.0 + 0.5 * z) * (1.0 + 0.5 * z)).with_zeros(vec![]);
        let h = nth_root(&f, 2).unwrap();
        for &z in &[c(0.9, 0.0), c(-0.9, 0.2), c(0.1, -0.99)] {
            assert_abs_diff_eq!((h.eval(z) - (1.0 + 0.5 * z)).norm(), 0.0, epsilon = 1e-12);
        }
        let e = AnalyticFunction::new("e^{4z}", |z| (4.0 * z).exp()).with_zeros(vec![]);
        let l = continued_log(&e, c(-0.9, 0.9)).unwrap();
        assert_abs_diff_eq!((l - 4.0 * c(-0.9, 0.9)).norm(), 0.0, epsilon = 1e-12);
    }
}
