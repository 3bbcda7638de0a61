use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::AnalyticFunction;
use crate::error::{Error, Result};
use crate::exponent::ComplexifiedExponent;

/// g(z) = (1 − |z_0|²)^{1/p(ζ_0)} (1 − z̄_0 z)^{−2/p̂(z)} with ζ_0 = z_0/|z_0|.
///
/// The argument bound is 2(p_+ π/2 + ‖p̃‖ max(−log(1−|z_0|), log 2))/p_−².
pub fn carleson_test_function(p: &ComplexifiedExponent, z0: Complex64) -> Result<AnalyticFunction> {
    let rho = z0.norm();
    if !(rho < 1.0) {
        return Err(Error::Domain(format!("test function centre must lie in the disc, |z0| = {rho}")));
    }
    let theta0 = if rho == 0.0 { 0.0 } else { z0.arg() };
    let p0 = p.p().boundary(theta0);
    let ln_c = (1.0 - rho * rho).ln() / p0;
    let hat = p.hat_fn();
    let zc = z0.conj();
    let log = move |z: Complex64| -> Result<Complex64> {
        let ph = hat(z);
        Ok(ln_c - 2.0 / ph * (Complex64::new(1.0, 0.0) - zc * z).ln())
    };
    let (pm, pp) = (p.p().p_minus(), p.p().p_plus());
    let ell = (-(1.0 - rho).ln()).max(std::f64::consts::LN_2);
    let bound = 2.0 * (pp * FRAC_PI_2 + p.tilde_sup_norm() * ell) / (pm * pm);
    let eval_log = log.clone();
    Ok(
        AnalyticFunction::from_fallible(format!("carleson test function at {z0}"), move |z| Ok(eval_log(z)?.exp()))
            .with_zeros(Vec::new())
            .with_arg_bound(bound)
            .with_log(log)
            .with_boundary_regular(true),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::VariableExponent;
    use approx::assert_abs_diff_eq;

    #[test]
    fn constant_exponent_closed_form() {
        let p = ComplexifiedExponent::constant(2.0).unwrap();
        let z0 = Complex64::new(0.0, 0.5);
        let g = carleson_test_function(&p, z0).unwrap();
        let z = Complex64::new(0.3, -0.2);
        let expect = 0.75f64.sqrt() / (Complex64::new(1.0, 0.0) - z0.conj() * z);
        assert_abs_diff_eq!((g.eval(z) - expect).norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn argument_bound_holds() {
        let p = VariableExponent::harmonic_from_trig(2.0, &[(1, 0.5, 0.0)]).unwrap().conjugate().unwrap();
        let g = carleson_test_function(&p, Complex64::from_polar(0.999, 1.0)).unwrap();
        g.check_certificates().unwrap();
    }
}
