use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;

use super::{AnalyticFunction, Zero};
use crate::error::{Error, Result};

/// g = f/B for the Blaschke product B over the listed zeros of f.
pub fn divide_out_zeros(f: &AnalyticFunction) -> Result<(AnalyticFunction, AnalyticFunction)> {
    divide_out_zeros_with(f, true)
}

/// Like [`divide_out_zeros`]. Near a listed zero, g is evaluated as the mean
/// of g over a small circle around the point when `fallback` is set, and
/// reported as a singularity otherwise.
pub fn divide_out_zeros_with(f: &AnalyticFunction, fallback: bool) -> Result<(AnalyticFunction, AnalyticFunction)> {
    let zeros: Vec<Zero> = f
        .zeros()
        .ok_or_else(|| Error::Domain(format!("{}: zero list is not known", f.label())))?
        .to_vec();
    if f.is_identically_zero() {
        return Err(Error::Domain("cannot divide out the zeros of the zero function".into()));
    }
    let mut expanded = Vec::new();
    for z in &zeros {
        if !(z.at.norm() < 1.0) {
            return Err(Error::Domain(format!("zero {} is not inside the disc", z.at)));
        }
        expanded.extend(std::iter::repeat(z.at).take(z.multiplicity));
    }
    let b = AnalyticFunction::blaschke(&expanded)?;
    let fe = f.eval_fn();
    let be = b.eval_fn();
    let zs = Arc::new(zeros);
    let quotient = {
        let (fe, be) = (fe.clone(), be.clone());
        move |z: Complex64| -> Result<Complex64> { Ok(fe(z)? / be(z)?) }
    };
    let g = AnalyticFunction::from_fallible(format!("({})/B", f.label()), move |z| {
        let near = zs
            .iter()
            .filter_map(|zero| {
                let d = (z - zero.at).norm();
                let limit = if zero.multiplicity == 1 { 1e-7 } else { 1e-4 };
                (d < limit).then_some((zero, d))
            })
            .next();
        match near {
            None => quotient(z),
            Some((zero, _)) if fallback => {
                let clearance = zs
                    .iter()
                    .filter(|o| o.at != zero.at)
                    .map(|o| (o.at - z).norm())
                    .fold(1.0 - z.norm(), f64::min);
                let mut rho: f64 = if zero.multiplicity == 1 { 1e-6 } else { 1e-3 };
                rho = rho.min(0.25 * clearance);
                let n = 16;
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += quotient(z + Complex64::from_polar(rho, TAU * (k as f64 + 0.5) / n as f64))?;
                }
                Ok(acc / n as f64)
            }
            Some(_) => Err(Error::Singularity(format!("quotient evaluated at listed zero near {z}"))),
        }
    })
    .with_zeros(Vec::new())
    .with_boundary_regular(f.is_boundary_regular());
    Ok((b, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn divides_simple_zero() {
        let f = AnalyticFunction::from_roots(c(1.0, 0.0), vec![c(0.5, 0.0), c(-3.0, 0.0)]);
        let (b, g) = divide_out_zeros(&f).unwrap();
        let z = c(0.1, 0.6);
        assert_abs_diff_eq!((b.eval(z) * g.eval(z) - f.eval(z)).norm(), 0.0, epsilon = 1e-13);
        // g(1/2) = f'(1/2)/B'(1/2) with B = (1/2 − z)/(1 − z/2).
        let expect = 3.5 / (-1.0 / 0.75);
        assert_abs_diff_eq!((g.eval(c(0.5, 0.0)) - c(expect, 0.0)).norm(), 0.0, epsilon = 1e-8);
        let (_, strict) = divide_out_zeros_with(&f, false).unwrap();
        assert!(matches!(strict.try_eval(c(0.5, 0.0)), Err(Error::Singularity(_))));
    }

    #[test]
    fn divides_double_zero_at_origin() {
        let f = AnalyticFunction::monomial(c(2.0, 0.0), 2).product(&AnalyticFunction::one_minus_power(-1.0));
        let (_, g) = divide_out_zeros(&f).unwrap();
        assert_abs_diff_eq!((g.eval(c(0.0, 0.0)) - c(2.0, 0.0)).norm(), 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!((g.eval(c(0.3, 0.0)) - c(1.4, 0.0)).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn requires_zero_list() {
        let f = AnalyticFunction::new("z", |z| z);
        assert!(divide_out_zeros(&f).is_err());
    }
}
