use num_complex::Complex64;
use rayon::prelude::*;

use crate::analytic::{AnalyticFunction, KernelParams};
use crate::error::{Error, Result};
use crate::exponent::VariableExponent;
use crate::numerics::{ln_gamma, poisson_sharp_constant, BergmanWeight, CircleRule, Polar};
use crate::report::{Report, Row};
use crate::spaces::Norms;

/// Tolerance of the quadrature comparisons, relative.
const QUAD_TOL: f64 = 1e-8;

/// (1/2π)∫|1 − re^{iθ}|^{-s} dθ, using |1 − re^{iθ}|² = (1−r)² + 4r sin²(θ/2).
fn poisson_mean(rule: &CircleRule, s: f64, r: f64) -> Result<(f64, Option<String>)> {
    let c = rule.mean(|th| {
        let h = (0.5 * th).sin();
        let d2 = (1.0 - r) * (1.0 - r) + 4.0 * r * h * h;
        (-0.5 * s * d2.ln()).exp()
    })?;
    Ok((c.value, c.warning))
}

/// (1−r²)^{1−s} ≤ (1/2π)∫|1 − re^{iθ}|^{-s} dθ ≤ Γ(s−1)/Γ(s/2)² (1−r²)^{1−s}
/// on the lattice `s_values × r_values`, with the sharpness trend: the
/// quotient by the upper bound is nondecreasing along increasing r, and at
/// s = 2 both bounds coincide with the mean.
pub fn poisson_lemma_check(s_values: &[f64], r_values: &[f64]) -> Result<Report> {
    if r_values.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Domain("radii must be strictly increasing".into()));
    }
    if let Some(r) = r_values.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
        return Err(Error::Domain(format!("radius must lie in (0, 1), got {r}")));
    }
    let rule = CircleRule::default();
    let mut report = Report::new("lemma-poisson");
    for &s in s_values {
        let gamma = poisson_sharp_constant(s)?;
        let means: Vec<(f64, Option<String>)> = r_values
            .par_iter()
            .map(|&r| poisson_mean(&rule, s, r))
            .collect::<Result<_>>()?;
        let mut prev_quotient: Option<f64> = None;
        for (&r, (mean, warning)) in r_values.iter().zip(means) {
            if let Some(w) = warning {
                report.warn(format!("s={s} r={r}: {w}"));
            }
            let base = (1.0 - r * r).powf(1.0 - s);
            let upper = gamma * base;
            report.push(Row::ge(format!("s={s} r={r} lower"), mean, base, QUAD_TOL));
            report.push(Row::le(format!("s={s} r={r} upper"), mean, upper, QUAD_TOL));
            let quotient = mean / upper;
            if let Some(pq) = prev_quotient {
                report.push(Row::ge(format!("s={s} r={r} quotient nondecreasing"), quotient, pq, QUAD_TOL));
            }
            prev_quotient = Some(quotient);
            if (s - 2.0).abs() < 1e-12 {
                report.push(Row::eq(format!("s={s} r={r} equality"), mean / base, 1.0, 1e-9));
            }
        }
    }
    Ok(report)
}

/// M_p^p(ρ, K_r) for K_r = K_{r,a,q} against the model
/// (1−r²)^{(aq−2)p/q}/(1−rρ)^{ap−1}.
///
/// With R = rρ and s = ap the quotient lies in
/// [(1+R)^{1−s}, Γ(s−1)/Γ(s/2)² (1+R)^{1−s}]; the mean normalized by
/// (1−r²)^{(a−2/q)p}(1−R²)^{1−s} lies in [1, Γ(s−1)/Γ(s/2)²].
pub fn kernel_mean_check(r: f64, rho: f64, p_val: f64, q: f64, a: f64) -> Result<Report> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::Domain(format!("rho must lie in [0, 1), got {rho}")));
    }
    let s = a * p_val;
    if !(s > 1.0) {
        return Err(Error::Domain(format!("need a*p > 1, got {s}")));
    }
    let kernel = AnalyticFunction::kernel(KernelParams::new(Complex64::new(r, 0.0), a, q)?)?;
    let c = CircleRule::default().mean(|th| {
        let v = kernel.eval(Polar::from_radius(rho, th).z()).norm();
        (p_val * v.ln()).exp()
    })?;
    let mean = c.value;
    let big_r = r * rho;
    let gamma = poisson_sharp_constant(s)?;
    let model = (1.0 - r * r).powf((a * q - 2.0) * p_val / q) / (1.0 - big_r).powf(s - 1.0);
    let quotient = mean / model;
    let low = (1.0 + big_r).powf(1.0 - s);
    let normalized = mean / ((1.0 - r * r).powf((a - 2.0 / q) * p_val) * (1.0 - big_r * big_r).powf(1.0 - s));

    let mut report = Report::new(format!("kernel-mean r={r} rho={rho} p={p_val} q={q} a={a}"));
    if let Some(w) = c.warning {
        report.warn(w);
    }
    report.push(Row::info("mean", mean));
    report.push(Row::info("model", model));
    report.push(Row::ge("quotient lower", quotient, low, QUAD_TOL));
    report.push(Row::le("quotient upper", quotient, gamma * low, QUAD_TOL));
    report.push(Row::ge("normalized lower", normalized, 1.0, QUAD_TOL));
    report.push(Row::le("normalized upper", normalized, gamma, QUAD_TOL));
    Ok(report)
}

/// M_p^p(r, f) ≤ M_q^q(r, f)(1−r)^{−2(p−q)/q} for f normalized in A^q.
pub fn growth_lemma_check(f: &AnalyticFunction, q: f64, p_val: f64, radii: &[f64]) -> Result<Report> {
    if !(q > 0.0 && q <= p_val) {
        return Err(Error::Domain(format!("need 0 < q <= p, got q = {q}, p = {p_val}")));
    }
    let norms = Norms::default();
    let pq = VariableExponent::constant(q)?;
    let pp = VariableExponent::constant(p_val)?;
    let n = norms.luxemburg_norm(f, &pq, BergmanWeight::area())?;
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::NotInSpace(format!("{}: cannot normalize in A^{q}, norm {n}", f.label())));
    }
    let g = f.scale(Complex64::new(1.0 / n, 0.0));
    let mut report = Report::new(format!("growth-lemma q={q} p={p_val}"));
    report.push(Row::info("A^q norm", n));
    let mut max_ratio: f64 = 0.0;
    for &r in radii {
        let lhs = norms.integral_mean_modular(&g, &pp, r)?;
        let rhs = norms.integral_mean_modular(&g, &pq, r)? * (1.0 - r).powf(-2.0 * (p_val - q) / q);
        max_ratio = max_ratio.max(lhs / rhs);
        report.push(Row::le(format!("r={r}"), lhs, rhs, QUAD_TOL));
    }
    report.push(Row::le("max ratio", max_ratio, 1.0, QUAD_TOL));
    Ok(report)
}

/// I_{α,β}(r)(1 − r²)^β with I_{α,β}(z) = ∫(1−|w|²)^α |1 − z w̄|^{−(2+α+β)} dA(w).
///
/// The product increases to Γ(1+α)Γ(β)/Γ(1 + (α+β)/2)² as r → 1, which is
/// used as the explicit bound.
pub fn iab_check(alpha: f64, beta: f64, radii: &[f64]) -> Result<Report> {
    if !(alpha > -1.0 && beta > 0.0) {
        return Err(Error::Domain(format!("need alpha > -1 and beta > 0, got {alpha}, {beta}")));
    }
    let w = BergmanWeight::new(alpha)?;
    let c = 0.5 * (2.0 + alpha + beta);
    let limit = (ln_gamma(1.0 + alpha)? + ln_gamma(beta)? - 2.0 * ln_gamma(c)?).exp();
    let disc = Norms::default().disc;
    let mut report = Report::new(format!("iab alpha={alpha} beta={beta}"));
    let mut values = Vec::with_capacity(radii.len());
    for &r in radii {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::Domain(format!("radius must lie in [0, 1), got {r}")));
        }
        let d = disc.integrate(
            |pt| {
                let z = pt.z();
                let d2 = (Complex64::new(1.0, 0.0) - r * z.conj()).norm_sqr();
                (-c * d2.ln()).exp()
            },
            w,
            &[],
        )?;
        let v = d.value / (alpha + 1.0) * (1.0 - r * r).powf(beta);
        values.push(v);
        report.push(Row::le(format!("r={r}"), v, limit, QUAD_TOL));
    }
    let sup = values.iter().copied().fold(0.0, f64::max);
    report.push(Row::info("limit", limit));
    report.push(Row::le("sup", sup, limit, QUAD_TOL));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn poisson_small_lattice() {
        let rep = poisson_lemma_check(&[1.5, 2.0, 4.0], &[0.5, 0.9, 0.99]).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn kernel_mean_windows() {
        let rep = kernel_mean_check(0.5, 0.5, 2.0, 2.0, 2.0).unwrap();
        assert!(rep.passed(), "{:?}", rep.rows);
        let q = rep.row("mean").unwrap().value / rep.row("model").unwrap().value;
        // Outside [1, 2]: the model drops the factor (1+R)^{1−s}.
        assert!(q < 1.0);
        let rep = kernel_mean_check(0.0, 0.7, 3.0, 2.0, 2.0).unwrap();
        assert_abs_diff_eq!(rep.row("mean").unwrap().value, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.row("model").unwrap().value, 1.0, epsilon = 1e-12);
        assert!(kernel_mean_check(0.5, 0.5, 0.4, 2.0, 2.0).is_err());
    }

    #[test]
    fn growth_lemma_monomial() {
        let z = AnalyticFunction::monomial(Complex64::new(1.0, 0.0), 1);
        let rep = growth_lemma_check(&z, 2.0, 4.0, &[0.5]).unwrap();
        assert!(rep.passed());
        assert_abs_diff_eq!(rep.row("A^q norm").unwrap().value, 0.5f64.sqrt(), epsilon = 1e-9);
        let r = rep.row("r=0.5").unwrap();
        assert_abs_diff_eq!(r.value, 0.25, epsilon = 1e-9);
        assert_abs_diff_eq!(r.bound.unwrap(), 2.0, epsilon = 1e-8);
    }

    #[test]
    fn iab_bounded() {
        let rep = iab_check(0.0, 1.0, &[0.0, 0.5, 0.9, 0.99]).unwrap();
        assert!(rep.passed(), "{:?}", rep.rows);
        assert_abs_diff_eq!(rep.row("limit").unwrap().value, 4.0 / std::f64::consts::PI, epsilon = 1e-12);
        assert_abs_diff_eq!(rep.row("r=0").unwrap().value, 1.0, epsilon = 1e-9);
    }
}
