use num_complex::Complex64;
use rayon::prelude::*;

use crate::analytic::{check_subordination, sample_grid, subordinate, AnalyticFunction};
use crate::error::{Error, Result};
use crate::exponent::ComplexifiedExponent;
use crate::numerics::BergmanWeight;
use crate::report::{Report, Row};
use crate::spaces::Norms;

/// ((1+|λ|)/(1−|λ|))^{(α+2)/q}: the norm of f ↦ f∘φ_λ on A^q_α, from
/// 1 − |φ_λ(z)|² = (1−|λ|²)(1−|z|²)/|1 − λ̄z|².
pub fn mobius_jacobian_bound(lambda_modulus: f64, alpha: f64, q: f64) -> f64 {
    ((1.0 + lambda_modulus) / (1.0 - lambda_modulus)).powf((alpha + 2.0) / q)
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    }
}

/// M_{p∘ω}(r, F∘ω)/M_p(r, F) over `radii`.
///
/// Rows: the ratio per radius (bounded by 1 when p is constant), the
/// maximum, and stability: max ≤ 2·median.
pub fn littlewood_check(
    big_f: &AnalyticFunction,
    omega: &AnalyticFunction,
    p: &ComplexifiedExponent,
    radii: &[f64],
) -> Result<Report> {
    if radii.is_empty() {
        return Err(Error::Domain("empty radius grid".into()));
    }
    let f = subordinate(big_f, omega)?;
    let om = omega.clone();
    let p_omega = p.p().compose(move |z| om.eval(z), format!("{} o omega", p.p().label()));
    let norms = Norms::default();
    let ratios: Vec<f64> = radii
        .par_iter()
        .map(|&r| Ok(norms.integral_mean(&f, &p_omega, r)? / norms.integral_mean(big_f, p.p(), r)?))
        .collect::<Result<_>>()?;
    let constant = p.p().constant_value().is_some();
    let mut report = Report::new(format!("littlewood {} o {}", big_f.label(), omega.label()));
    for (&r, &q) in radii.iter().zip(&ratios) {
        if constant {
            report.push(Row::le(format!("r={r}"), q, 1.0, 1e-6));
        } else {
            report.push(Row::info(format!("r={r}"), q));
        }
    }
    let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let med = median(&ratios);
    report.push(Row::flag("max finite", max.is_finite()).with_note(format!("max ratio {max}")));
    report.push(Row::le("stable", max, 2.0 * med, 0.0));
    Ok(report)
}

/// ‖f∘φ‖_{A^{p∘φ}_α}/‖f‖_{A^p_α} over `suite`, with λ = φ(0).
///
/// φ is split as φ_λ∘ω with ω = φ_λ∘φ fixing 0; for constant p = q the
/// maximum is compared with [`mobius_jacobian_bound`].
pub fn composition_check(
    phi: &AnalyticFunction,
    p: &ComplexifiedExponent,
    w: BergmanWeight,
    suite: &[AnalyticFunction],
) -> Result<Report> {
    if suite.is_empty() {
        return Err(Error::Domain("empty function suite".into()));
    }
    for z in sample_grid(25, 40, 0.999) {
        let v = phi.try_eval(z)?;
        if !(v.norm() < 1.0) {
            return Err(Error::Domain(format!("{} is not a self-map: |phi({z})| = {}", phi.label(), v.norm())));
        }
    }
    let lambda = phi.try_eval(Complex64::new(0.0, 0.0))?;
    let omega = AnalyticFunction::mobius(lambda)?.compose(phi);
    check_subordination(&omega)?;
    let ph = phi.clone();
    let p_phi = p.p().compose(move |z| ph.eval(z), format!("{} o phi", p.p().label()));
    let norms = Norms::default();
    let mut report = Report::new(format!("composition {}", phi.label()));
    report.push(Row::info("lambda modulus", lambda.norm()));
    report.push(Row::info("lambda arg", lambda.arg()));
    let mut max: f64 = 0.0;
    for f in suite {
        let num = norms.luxemburg_norm(&f.compose(phi), &p_phi, w)?;
        let den = norms.luxemburg_norm(f, p.p(), w)?;
        let ratio = num / den;
        max = max.max(ratio);
        report.push(Row::info(format!("ratio {}", f.label()), ratio));
    }
    report.push(Row::flag("max finite", max.is_finite()).with_note(format!("max ratio {max}")));
    if let Some(q) = p.p().constant_value() {
        let bound = mobius_jacobian_bound(lambda.norm(), w.alpha(), q);
        report.push(Row::le("max ratio <= jacobian bound", max, bound, 1e-6));
        report.push(Row::info("max ratio / jacobian bound", max / bound));
    } else {
        report.push(Row::info("max ratio", max));
    }
    Ok(report)
}
