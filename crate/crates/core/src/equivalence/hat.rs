use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::is_growing;
use crate::analytic::AnalyticFunction;
use crate::error::{Error, Result};
use crate::exponent::{radial_log_holder_estimate, VariableExponent};
use crate::numerics::BergmanWeight;
use crate::report::{Report, Row};
use crate::spaces::{dyadic_radii, Norms};

const TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HatEquivalenceOptions {
    /// R in |p(re^{iθ}) − p(e^{iθ})| ≤ C/(−log(1−r)), R ≤ r < 1.
    pub holder_radius: f64,
    pub holder_samples: usize,
    /// Known constant C; estimated from samples when absent.
    pub holder_constant: Option<f64>,
    /// Hardy case: radii 1 − 2^{-k}, k = 1..=hardy_k_max.
    pub hardy_k_max: u32,
}

impl Default for HatEquivalenceOptions {
    fn default() -> Self {
        Self {
            holder_radius: 0.0,
            holder_samples: 4096,
            holder_constant: None,
            hardy_k_max: 12,
        }
    }
}

/// Compares the spaces of p and of its boundary trace p̂(re^{iθ}) = p(e^{iθ}).
///
/// Bergman case: for f normalized in the p-norm,
/// ρ_{p̂}(f) ≤ e^{(2+α)C/p_−} ρ_p(f) + 1, and symmetrically with p̂_− for f
/// normalized in the p̂-norm; the induced norm bounds are checked as well.
/// Hardy case (α = −1): M_p(r,f) ≤ (e^{C/p_−}+1) M_{p̂}(r,f) and
/// M_{p̂}(r,f) ≤ (e^{C/p̂_−}+1) M_p(r,f) at r = 1 − 2^{-k}.
pub fn hat_equivalence_check(
    f: &AnalyticFunction,
    p: &VariableExponent,
    w: BergmanWeight,
    opts: HatEquivalenceOptions,
) -> Result<Report> {
    let c = match opts.holder_constant {
        Some(c) if c >= 0.0 && c.is_finite() => c,
        Some(c) => return Err(Error::Domain(format!("log-Holder constant must be finite and nonnegative, got {c}"))),
        None => radial_log_holder_estimate(p, opts.holder_radius, opts.holder_samples)?,
    };
    let ph = p.constantize_radially();
    let (pm, phm) = (p.p_minus(), ph.p_minus());
    let norms = Norms::default();
    let mut report = Report::new(format!("hat-equivalence {} alpha={}", f.label(), w.alpha()));
    report.push(Row::info("C", c));

    if w.is_hardy() {
        let k_p = (c / pm).exp() + 1.0;
        let k_h = (c / phm).exp() + 1.0;
        for k in 1..=opts.hardy_k_max {
            let r = 1.0 - 0.5f64.powi(k as i32);
            let mp = norms.integral_mean(f, p, r)?;
            let mh = norms.integral_mean(f, &ph, r)?;
            report.push(Row::le(format!("k={k} M_p <= K M_phat"), mp, k_p * mh, TOL));
            report.push(Row::le(format!("k={k} M_phat <= K M_p"), mh, k_h * mp, TOL));
        }
        return Ok(report);
    }

    let e_p = ((2.0 + w.alpha()) * c / pm).exp();
    let e_h = ((2.0 + w.alpha()) * c / phm).exp();
    let np = norms.luxemburg_norm(f, p, w)?;
    let nh = norms.luxemburg_norm(f, &ph, w)?;
    if !(np > 0.0 && nh > 0.0) {
        return Err(Error::Domain(format!("{} has zero norm", f.label())));
    }
    let fp = f.scale(Complex64::new(1.0 / np, 0.0));
    let fh = f.scale(Complex64::new(1.0 / nh, 0.0));
    let rho_p = norms.bergman_modular(&fp, p, w)?.value;
    let rho_hp = norms.bergman_modular(&fp, &ph, w)?.value;
    let rho_h = norms.bergman_modular(&fh, &ph, w)?.value;
    let rho_ph = norms.bergman_modular(&fh, p, w)?.value;
    report.push(Row::info("norm p", np));
    report.push(Row::info("norm phat", nh));
    report.push(Row::le("rho_phat(f/|f|_p)", rho_hp, e_p * rho_p + 1.0, TOL));
    report.push(Row::le("rho_p(f/|f|_phat)", rho_ph, e_h * rho_h + 1.0, TOL));
    report.push(Row::le("norm phat <= K norm p", nh, (e_p + 1.0) * np, TOL));
    report.push(Row::le("norm p <= K norm phat", np, (e_h + 1.0) * nh, TOL));
    Ok(report)
}

/// f(z) = (1 − z)^{−(2+α)/s} with s = (p+q)/2 lies in A^q_α but not in A^p_α.
///
/// For α = −1 the Hardy means M_q^q(r, f) settle while M_p^p(r, f) keep
/// growing along r = 1 − 2^{-k}, k ≤ 20.
pub fn separation_witness(p_on_d: f64, q_on_d: f64, w: BergmanWeight) -> Result<(AnalyticFunction, Report)> {
    if !(q_on_d > 0.0 && q_on_d < p_on_d && p_on_d.is_finite()) {
        return Err(Error::Domain(format!("need 0 < q < p, got q = {q_on_d}, p = {p_on_d}")));
    }
    let s = 0.5 * (p_on_d + q_on_d);
    let gamma = (2.0 + w.alpha()) / s;
    let f = AnalyticFunction::one_minus_power(gamma);
    let pq = VariableExponent::constant(q_on_d)?;
    let pp = VariableExponent::constant(p_on_d)?;
    let norms = Norms::default();
    let mut report = Report::new(format!("separation p={p_on_d} q={q_on_d} alpha={}", w.alpha()));
    report.push(Row::info("s", s));
    if w.is_hardy() {
        let radii = dyadic_radii(20);
        let mean = |e: &VariableExponent| -> Result<Vec<f64>> {
            radii.iter().map(|&r| norms.integral_mean_modular(&f, e, r)).collect()
        };
        let mq = mean(&pq)?;
        let mp = mean(&pp)?;
        report.push(Row::info("M_q^q at last radius", *mq.last().unwrap()));
        report.push(Row::info("M_p^p at last radius", *mp.last().unwrap()));
        report.push(Row::flag("rho_q finite", !is_growing(&mq)));
        report.push(Row::flag("rho_p divergent", is_growing(&mp)));
    } else {
        let mq = norms.bergman_modular(&f, &pq, w)?;
        let mp = norms.bergman_modular(&f, &pp, w)?;
        report.push(Row::info("rho_q", mq.value));
        report.push(Row::flag("rho_q finite", !mq.divergent && mq.value.is_finite()));
        report.push(Row::flag("rho_p divergent", mp.divergent || !mp.value.is_finite()));
    }
    Ok((f, report))
}
