use std::f64::consts::{FRAC_PI_3, TAU};

use approx::assert_relative_eq;
use num_complex::Complex64;
use vxs_core::analytic::{complex_power, sample_grid, AnalyticFunction, KernelParams};
use vxs_core::exponent::{cauchy_riemann_residual, log_holder_estimate, VariableExponent};
use vxs_core::numerics::{bisect_monotone, BergmanWeight, CircleRule, DiscRule};
use vxs_core::spaces::Norms;
use vxs_core::verify::cosine_exponent;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Σ ((γ)_n/n!)² x^n.
fn squared_binomial_series(gamma: f64, x: f64) -> f64 {
    let (mut term, mut sum, mut n) = (1.0f64, 1.0f64, 0.0);
    while term > 1e-18 * sum || n < 10.0 {
        term *= ((gamma + n) / (n + 1.0)).powi(2) * x;
        sum += term;
        n += 1.0;
    }
    sum
}

#[test]
fn hardy_mean_of_one_minus_power() {
    let f = AnalyticFunction::one_minus_power(0.4);
    let two = VariableExponent::constant(2.0).unwrap();
    let norms = Norms::default();
    for r in [0.5, 0.9, 0.99, 0.999] {
        let m = norms.integral_mean(&f, &two, r).unwrap();
        assert_relative_eq!(m * m, squared_binomial_series(0.4, r * r), max_relative = 1e-8);
    }
}

#[test]
fn monomial_bergman_norms() {
    let norms = Norms::default();
    for k in 1..=3u32 {
        let f = AnalyticFunction::monomial(c(1.0, 0.0), k);
        for q in [1.5, 2.0, 3.0] {
            let p = VariableExponent::constant(q).unwrap();
            let x = k as f64 * q / 2.0;
            let area = norms.luxemburg_norm(&f, &p, BergmanWeight::area()).unwrap();
            assert_relative_eq!(area, (1.0 / (x + 1.0)).powf(1.0 / q), max_relative = 1e-8);
            let weighted = norms.luxemburg_norm(&f, &p, BergmanWeight::new(1.0).unwrap()).unwrap();
            assert_relative_eq!(weighted, (2.0 / ((x + 1.0) * (x + 2.0))).powf(1.0 / q), max_relative = 1e-8);
        }
    }
}

#[test]
fn weighted_area_is_a_probability() {
    let rule = DiscRule::default();
    for alpha in [-0.5, 0.0, 1.0, 3.0] {
        let d = rule.integrate(|_| 1.0, BergmanWeight::new(alpha).unwrap(), &[]).unwrap();
        assert_relative_eq!(d.value, 1.0, max_relative = 1e-8);
    }
}

#[test]
fn mobius_change_of_variables() {
    let lambda = c(0.5, 0.3);
    let phi = AnalyticFunction::mobius(lambda).unwrap();
    let dphi = AnalyticFunction::mobius_derivative(lambda).unwrap();
    let rule = DiscRule::default();
    let area = BergmanWeight::area();
    let one = rule.integrate(|pt| dphi.eval(pt.z()).norm_sqr(), area, &[]).unwrap();
    assert_relative_eq!(one.value, 1.0, max_relative = 1e-6);
    let sq = rule
        .integrate(|pt| phi.eval(pt.z()).norm_sqr() * dphi.eval(pt.z()).norm_sqr(), area, &[])
        .unwrap();
    assert_relative_eq!(sq.value, 0.5, max_relative = 1e-6);
}

#[test]
fn blaschke_modulus() {
    let b = AnalyticFunction::blaschke(&[c(0.5, 0.0), c(-0.2, 0.7), c(0.0, 0.0)]).unwrap();
    for z in sample_grid(10, 20, 0.999) {
        assert!(b.eval(z).norm() < 1.0);
    }
    for k in 0..64 {
        let z = Complex64::from_polar(1.0, TAU * k as f64 / 64.0);
        assert!((b.eval(z).norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn circle_mean_of_trigonometric_polynomial() {
    let m = CircleRule::default().mean(|t| (3.0 * t).cos().powi(2) + t.sin() + 0.25).unwrap();
    assert_relative_eq!(m.value, 0.75, max_relative = 1e-14);
}

#[test]
fn bisection_bracket_independence() {
    let h = |l: f64| 4.0 / (l * l);
    let a = bisect_monotone(h, 0.1, 10.0, 1.0, 1e-12).unwrap();
    let b = bisect_monotone(h, 1.5, 2.5, 1.0, 1e-12).unwrap();
    assert!((a - b).abs() <= 2.0 * 1e-12 * 2.0 + 1e-12);
    assert_relative_eq!(a, 2.0, max_relative = 1e-10);
}

#[test]
fn harmonic_exponent_oracles() {
    let p = VariableExponent::harmonic_from_trig(2.0, &[(2, 1.0, 0.0), (1, 0.0, 0.3)]).unwrap();
    let cp = p.conjugate().unwrap();
    let (r, t) = (0.5, FRAC_PI_3);
    let z = Complex64::from_polar(r, t);
    assert!((cp.tilde(z) - (r * r * (2.0 * t).sin() - 0.3 * r * t.cos())).abs() < 1e-10);
    let res = cauchy_riemann_residual(|z| cp.hat(z).re, |z| cp.hat(z).im, 0.99);
    assert!(res < 1e-8, "residual {res}");

    let boundary = |t: f64| 2.0 + 0.5 * t.cos() - 0.2 * (3.0 * t).sin();
    let q = VariableExponent::harmonic_extend(boundary, 16).unwrap();
    for k in 0..50 {
        let t = TAU * k as f64 / 50.0;
        assert!((q.boundary(t) - boundary(t)).abs() < 1e-10);
    }
    let hat = q.constantize_radially();
    let twice = hat.constantize_radially();
    for z in sample_grid(5, 9, 0.99) {
        assert_eq!(hat.eval_z(z), twice.eval_z(z));
    }
}

#[test]
fn log_holder_refinement_is_monotone() {
    let p = VariableExponent::log_decay(2.0, 1.0, 0.5).unwrap();
    let mut prev = 0.0;
    for n in [64, 256, 1024] {
        let e = log_holder_estimate(&p, n).unwrap();
        assert!(e >= prev);
        prev = e;
    }
}

#[test]
fn complex_power_modulus_identity() {
    let p = cosine_exponent(0.5).unwrap();
    let f = AnalyticFunction::kernel(KernelParams::new(c(0.5, 0.3), 2.0, 2.0).unwrap()).unwrap();
    let g = complex_power(&f, &p, 0.5).unwrap();
    for z in sample_grid(6, 12, 0.99) {
        let fz = f.eval(z);
        let expect = fz.norm().powf(0.5 * p.p().eval_z(z)) * (-0.5 * p.tilde(z) * fz.arg()).exp();
        assert_relative_eq!(g.eval(z).norm(), expect, max_relative = 1e-10);
    }
}
