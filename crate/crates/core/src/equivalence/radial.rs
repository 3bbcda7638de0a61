use num_complex::Complex64;
use rayon::prelude::*;

use super::{Condition, ConditionReport, RadialEquivParams};
use crate::analytic::{AnalyticFunction, KernelParams};
use crate::error::{Error, Result};
use crate::exponent::VariableExponent;
use crate::numerics::{BergmanWeight, RadialRule};
use crate::spaces::Norms;

fn check_radial(p: &VariableExponent, q: f64) -> Result<()> {
    if !p.is_radial() {
        return Err(Error::Domain(format!("{} is not radial", p.label())));
    }
    if p.p_minus() < q - 1e-12 {
        return Err(Error::Domain(format!(
            "need q <= p, got q = {q} and p_- = {}",
            p.p_minus()
        )));
    }
    Ok(())
}

/// (1 − r)^{−2(p(r)−q)/q} as a function of the gap t = 1 − r.
pub fn exponent_weight(p: &VariableExponent, q: f64) -> impl Fn(f64) -> f64 + Send + Sync + Clone + '_ {
    move |t: f64| {
        if t <= 0.0 {
            return 1.0;
        }
        let e = -2.0 * (p.radial_gap(t) - q) / q;
        if e == 0.0 {
            1.0
        } else {
            (e * t.ln()).exp()
        }
    }
}

/// sup over the x-grid of (1/x)∫_{1−x}^1 (1−r)^{−2(p(r)−q)/q} dr.
pub fn condition_v(p: &VariableExponent, params: &RadialEquivParams) -> Result<ConditionReport> {
    params.validate()?;
    check_radial(p, params.q)?;
    let rule = RadialRule::default();
    let w = exponent_weight(p, params.q);
    let values: Vec<f64> = params
        .x_grid
        .par_iter()
        .map(|&x| {
            let i = rule.integrate(x, p.breakpoints(), &w)?;
            Ok(if i.divergent { f64::INFINITY } else { i.value / x })
        })
        .collect::<Result<_>>()?;
    Ok(ConditionReport::from_values(Condition::V, params.x_grid.clone(), values, params.threshold))
}

/// sup over the x-grid of (2/x)∫_{1−x}^{1−x/2} (1−r)^{−2(p(r)−q)/q} dr.
pub fn condition_vi(p: &VariableExponent, params: &RadialEquivParams) -> Result<ConditionReport> {
    params.validate()?;
    check_radial(p, params.q)?;
    let rule = RadialRule::default();
    let w = exponent_weight(p, params.q);
    let values: Vec<f64> = params
        .x_grid
        .par_iter()
        .map(|&x| Ok(2.0 / x * rule.integrate_interval(0.5 * x, x, p.breakpoints(), &w)?))
        .collect::<Result<_>>()?;
    Ok(ConditionReport::from_values(Condition::Vi, params.x_grid.clone(), values, params.threshold))
}

fn kernel_modulars(norms: &Norms, p: &VariableExponent, q: f64, a: f64, lambdas: &[f64]) -> Result<Vec<f64>> {
    lambdas
        .iter()
        .map(|&l| {
            let k = AnalyticFunction::kernel(KernelParams::new(Complex64::new(l, 0.0), a, q)?)?;
            let m = norms.bergman_modular(&k, p, BergmanWeight::area())?;
            Ok(if m.divergent { f64::INFINITY } else { m.value })
        })
        .collect()
}

/// sup over the λ-grid of ∫_𝔻 |K_{λ,a,q}|^{p} dA.
///
/// For radial p the modular depends on |λ| only, so λ is taken real.
pub fn condition_vii(p: &VariableExponent, params: &RadialEquivParams) -> Result<ConditionReport> {
    condition_vii_with(&Norms::default(), p, params)
}

pub(crate) fn condition_vii_with(norms: &Norms, p: &VariableExponent, params: &RadialEquivParams) -> Result<ConditionReport> {
    params.validate()?;
    check_radial(p, params.q)?;
    let values = kernel_modulars(norms, p, params.q, params.a, &params.lambda_grid)?;
    Ok(ConditionReport::from_values(
        Condition::Vii,
        params.lambda_grid.clone(),
        values,
        params.threshold,
    ))
}

/// Condition (vii) for every a in `a_values`; the report holds, per λ, the
/// maximum over a.
pub fn condition_viii(p: &VariableExponent, params: &RadialEquivParams, a_values: &[f64]) -> Result<ConditionReport> {
    if a_values.is_empty() {
        return Err(Error::Domain("need at least one kernel exponent a".into()));
    }
    params.validate()?;
    check_radial(p, params.q)?;
    let norms = Norms::default();
    let mut best = vec![0.0f64; params.lambda_grid.len()];
    for &a in a_values {
        let sub = RadialEquivParams { a, ..params.clone() };
        sub.validate()?;
        let v = kernel_modulars(&norms, p, params.q, a, &params.lambda_grid)?;
        for (b, v) in best.iter_mut().zip(v) {
            *b = b.max(v);
        }
    }
    Ok(ConditionReport::from_values(
        Condition::Viii,
        params.lambda_grid.clone(),
        best,
        params.threshold,
    ))
}
