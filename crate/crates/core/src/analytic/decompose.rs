use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{divide_out_zeros, nth_root, riesz_split, sample_grid, AnalyticFunction};
use crate::error::{Error, Result};
use crate::numerics::binomial;

const RECONSTRUCTION_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecompositionOrder {
    /// n = 1 when p_− > 1, otherwise the least n with n p_− ≥ 2.
    Auto,
    Fixed(u32),
}

impl DecompositionOrder {
    pub fn resolve(self, p_minus: f64) -> Result<u32> {
        match self {
            Self::Fixed(0) => Err(Error::Domain("decomposition order must be at least 1".into())),
            Self::Fixed(n) => Ok(n),
            Self::Auto if !(p_minus > 0.0) => Err(Error::Domain(format!("p_- must be positive, got {p_minus}"))),
            Self::Auto if p_minus > 1.0 => Ok(1),
            Self::Auto => Ok((2.0 / p_minus - 1e-12).ceil().max(1.0) as u32),
        }
    }
}

/// f = B Σ_j (−1)^j f_j with f_j = C(n,j) g_1^{n−j} g_2^j, where B carries
/// the zeros of f and g_1 − g_2 is the Riesz split of (f/B)^{1/n}.
/// Every f_j has |arg f_j| ≤ nπ/2.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub blaschke: AnalyticFunction,
    pub parts: Vec<AnalyticFunction>,
    pub signs: Vec<f64>,
    pub order: u32,
    /// max |B Σ ± f_j − f| / max(1, |f|) on interior test points.
    pub residual: f64,
}

impl Decomposition {
    pub fn reconstruct(&self, z: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (f, s) in self.parts.iter().zip(&self.signs) {
            acc += *s * f.try_eval(z)?;
        }
        Ok(self.blaschke.try_eval(z)? * acc)
    }
}

fn power(f: &AnalyticFunction, k: u32) -> AnalyticFunction {
    let mut acc = AnalyticFunction::constant(Complex64::new(1.0, 0.0));
    for _ in 0..k {
        acc = acc.product(f);
    }
    acc
}

pub fn bounded_arg_decompose(
    f: &AnalyticFunction,
    p_minus: f64,
    order: DecompositionOrder,
    resolution: usize,
) -> Result<Decomposition> {
    let n = order.resolve(p_minus)?;
    let (b, g) = divide_out_zeros(f)?;
    let h = nth_root(&g, n)?;
    let split = riesz_split(&h, resolution)?;
    let mut parts = Vec::with_capacity(n as usize + 1);
    let mut signs = Vec::with_capacity(n as usize + 1);
    for j in 0..=n {
        let c = binomial(n as usize, j as usize);
        let part = if split.f2.is_identically_zero() && j > 0 || split.f1.is_identically_zero() && j < n {
            AnalyticFunction::zero()
        } else {
            power(&split.f1, n - j).product(&power(&split.f2, j)).scale(Complex64::new(c, 0.0))
        };
        parts.push(part.with_label(format!("part {j} of {}", f.label())));
        signs.push(if j % 2 == 0 { 1.0 } else { -1.0 });
    }
    let mut d = Decomposition {
        blaschke: b,
        parts,
        signs,
        order: n,
        residual: 0.0,
    };
    let r_max = if f.is_boundary_regular() { 0.99 } else { 0.95 };
    for z in sample_grid(6, 16, r_max) {
        let fz = f.try_eval(z)?;
        d.residual = d.residual.max((d.reconstruct(z)? - fz).norm() / fz.norm().max(1.0));
    }
    if !(d.residual <= RECONSTRUCTION_TOLERANCE) {
        return Err(Error::Accuracy {
            what: format!("decomposition of {}", f.label()),
            residual: d.residual,
            tolerance: RECONSTRUCTION_TOLERANCE,
        });
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::KernelParams;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn order_rule() {
        assert_eq!(DecompositionOrder::Auto.resolve(1.5).unwrap(), 1);
        assert_eq!(DecompositionOrder::Auto.resolve(1.0).unwrap(), 2);
        assert_eq!(DecompositionOrder::Auto.resolve(0.5).unwrap(), 4);
        assert_eq!(DecompositionOrder::Auto.resolve(0.6).unwrap(), 4);
        assert!(DecompositionOrder::Fixed(0).resolve(1.0).is_err());
    }

    #[test]
    fn trivial_function() {
        let one = AnalyticFunction::constant(c(1.0, 0.0));
        let d = bounded_arg_decompose(&one, 2.0, DecompositionOrder::Fixed(1), 256).unwrap();
        assert_eq!(d.parts.len(), 2);
        assert!(d.parts[1].is_identically_zero());
        assert_abs_diff_eq!((d.parts[0].eval(c(0.3, 0.3)) - c(1.0, 0.0)).norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!((d.blaschke.eval(c(0.3, 0.3)) - c(1.0, 0.0)).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn zeros_and_square_root() {
        let f = AnalyticFunction::from_roots(c(1.0, 0.0), vec![c(0.0, 0.0), c(-2.0, 0.0)]).scale(c(0.0, 1.0));
        let d = bounded_arg_decompose(&f, 1.0, DecompositionOrder::Auto, 1024).unwrap();
        assert_eq!(d.order, 2);
        assert_eq!(d.parts.len(), 3);
        assert!(d.residual < 1e-8);
        for part in &d.parts {
            for z in sample_grid(6, 12, 0.999) {
                let v = part.eval(z);
                if v.norm() > 0.0 {
                    assert!(v.arg().abs() <= 2.0 * FRAC_PI_2 + 1e-8);
                }
            }
        }
    }

    #[test]
    fn kernel_reconstruction() {
        let k = AnalyticFunction::kernel(KernelParams::new(c(0.6, 0.3), 2.0, 2.0).unwrap()).unwrap();
        let f = k.product(&AnalyticFunction::blaschke(&[c(0.2, -0.5)]).unwrap());
        let d = bounded_arg_decompose(&f, 1.5, DecompositionOrder::Auto, 4096).unwrap();
        assert_eq!(d.order, 1);
        let z = c(-0.4, 0.85);
        assert_abs_diff_eq!((d.reconstruct(z).unwrap() - f.eval(z)).norm(), 0.0, epsilon = 1e-8);
    }
}
