//! Analytic functions on the disc and the constructions built from them.

mod decompose;
mod power;
mod riesz;
mod testfn;
mod zeros;

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use decompose::{bounded_arg_decompose, Decomposition, DecompositionOrder};
pub use power::{complex_power, nth_root};
pub use riesz::{riesz_split, RieszSplit};
pub use testfn::carleson_test_function;
pub use zeros::{divide_out_zeros, divide_out_zeros_with};

pub(crate) type CFn = Arc<dyn Fn(Complex64) -> Result<Complex64> + Send + Sync>;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A zero of finite multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Zero {
    pub at: Complex64,
    pub multiplicity: usize,
}

/// An analytic function on the open disc, with optional certificates: a
/// complete zero list, a bound on |arg f|, and a continuous logarithm.
#[derive(Clone)]
pub struct AnalyticFunction {
    eval: CFn,
    log: Option<CFn>,
    zeros: Option<Arc<Vec<Zero>>>,
    arg_bound: Option<f64>,
    boundary_regular: bool,
    identically_zero: bool,
    label: String,
}

impl fmt::Debug for AnalyticFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticFunction")
            .field("label", &self.label)
            .field("zeros", &self.zeros)
            .field("arg_bound", &self.arg_bound)
            .field("boundary_regular", &self.boundary_regular)
            .finish()
    }
}

/// (1−|λ|²)^{a−2/q} (1−λ̄z)^{-a}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    pub lambda: Complex64,
    pub a: f64,
    pub q: f64,
}

impl KernelParams {
    pub fn new(lambda: Complex64, a: f64, q: f64) -> Result<Self> {
        let k = Self { lambda, a, q };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda.norm() < 1.0) {
            return Err(Error::Domain(format!("kernel needs |lambda| < 1, got {}", self.lambda.norm())));
        }
        if !(self.q > 0.0 && self.a * self.q > 2.0) {
            return Err(Error::Domain(format!(
                "kernel needs a*q > 2, got a = {}, q = {}",
                self.a, self.q
            )));
        }
        Ok(())
    }
}

impl AnalyticFunction {
    /// Wraps a closure; no certificates are attached.
    pub fn new<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        Self::from_fallible(label, move |z| Ok(f(z)))
    }

    pub fn from_fallible<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(Complex64) -> Result<Complex64> + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(f),
            log: None,
            zeros: None,
            arg_bound: None,
            boundary_regular: false,
            identically_zero: false,
            label: label.into(),
        }
    }

    pub fn with_zeros(mut self, zeros: Vec<Zero>) -> Self {
        self.zeros = Some(Arc::new(merge_zeros(zeros)));
        self
    }

    pub fn with_arg_bound(mut self, bound: f64) -> Self {
        self.arg_bound = Some(bound);
        self
    }

    /// Declares a continuous branch of log f on the disc.
    pub fn with_log<F>(mut self, log: F) -> Self
    where
        F: Fn(Complex64) -> Result<Complex64> + Send + Sync + 'static,
    {
        self.log = Some(Arc::new(log));
        self
    }

    /// Declares that f extends continuously to, and can be sampled on, the
    /// unit circle.
    pub fn with_boundary_regular(mut self, regular: bool) -> Self {
        self.boundary_regular = regular;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn zeros(&self) -> Option<&[Zero]> {
        self.zeros.as_deref().map(|v| v.as_slice())
    }

    pub fn arg_bound(&self) -> Option<f64> {
        self.arg_bound
    }

    pub fn is_boundary_regular(&self) -> bool {
        self.boundary_regular
    }

    pub fn is_identically_zero(&self) -> bool {
        self.identically_zero
    }

    pub fn has_log(&self) -> bool {
        self.log.is_some()
    }

    /// f(z), NaN if the evaluation fails.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.eval)(z).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }

    pub fn try_eval(&self, z: Complex64) -> Result<Complex64> {
        let v = (self.eval)(z)?;
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation(format!("{} is not finite at {z}", self.label)))
        }
    }

    /// A continuous logarithm: the declared branch, else the principal
    /// branch when |arg f| < π is certified.
    pub fn log(&self, z: Complex64) -> Result<Complex64> {
        if let Some(log) = &self.log {
            return log(z);
        }
        match self.arg_bound {
            Some(b) if b < PI => {
                let v = self.try_eval(z)?;
                if v == Complex64::new(0.0, 0.0) {
                    return Err(Error::Singularity(format!("{} vanishes at {z}", self.label)));
                }
                Ok(v.ln())
            }
            Some(b) => Err(Error::Branch(format!(
                "{}: argument bound {b} is not below pi and no continuous logarithm is known",
                self.label
            ))),
            None => Err(Error::Branch(format!(
                "{}: no argument bound or continuous logarithm",
                self.label
            ))),
        }
    }

    pub(crate) fn eval_fn(&self) -> CFn {
        self.eval.clone()
    }

    /// Checks the attached certificates on a polar grid of the open disc.
    pub fn check_certificates(&self) -> Result<()> {
        let pts = sample_grid(24, 48, 0.999);
        if let Some(b) = self.arg_bound {
            for &z in &pts {
                let v = self.try_eval(z)?;
                if v.norm() == 0.0 || v.arg().abs() > b + 1e-6 {
                    return Err(Error::Branch(format!(
                        "{}: |arg f({z})| = {} exceeds certified bound {b}",
                        self.label,
                        v.arg().abs()
                    )));
                }
            }
        }
        if let Some(zs) = self.zeros() {
            let scale = pts.iter().map(|&z| self.eval(z).norm()).fold(0.0, f64::max).max(1e-300);
            for zero in zs {
                let v = self.try_eval(zero.at)?;
                if v.norm() > 1e-8 * scale {
                    return Err(Error::Domain(format!(
                        "{}: listed zero {} has |f| = {:e}",
                        self.label,
                        zero.at,
                        v.norm()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn constant(c: Complex64) -> Self {
        let mut f = Self::new(format!("const {c}"), move |_| c).with_boundary_regular(true);
        if c == Complex64::new(0.0, 0.0) {
            f.identically_zero = true;
        } else {
            let lc = c.ln();
            f = f
                .with_zeros(Vec::new())
                .with_arg_bound(c.arg().abs())
                .with_log(move |_| Ok(lc));
        }
        f
    }

    pub fn zero() -> Self {
        Self::constant(Complex64::new(0.0, 0.0))
    }

    /// c·z^k.
    pub fn monomial(c: Complex64, k: u32) -> Self {
        if k == 0 {
            return Self::constant(c);
        }
        Self::new(format!("{c} z^{k}"), move |z| c * z.powu(k))
            .with_zeros(vec![Zero {
                at: Complex64::new(0.0, 0.0),
                multiplicity: k as usize,
            }])
            .with_boundary_regular(true)
    }

    /// Σ c_k z^k.
    pub fn polynomial(coeffs: Vec<Complex64>) -> Self {
        let label = format!("polynomial of degree {}", coeffs.len().saturating_sub(1));
        let zero = coeffs.iter().all(|c| c.norm() == 0.0);
        let mut f = Self::new(label, move |z| horner(&coeffs, z)).with_boundary_regular(true);
        f.identically_zero = zero;
        f
    }

    /// lead·Π (z − r_k), zeros inside the disc are recorded.
    pub fn from_roots(lead: Complex64, roots: Vec<Complex64>) -> Self {
        let inside: Vec<Zero> = roots
            .iter()
            .filter(|r| r.norm() < 1.0)
            .map(|&at| Zero { at, multiplicity: 1 })
            .collect();
        let label = format!("{lead} * prod(z - r_k), {} roots", roots.len());
        Self::new(label, move |z| roots.iter().fold(lead, |acc, &r| acc * (z - r)))
            .with_zeros(inside)
            .with_boundary_regular(true)
    }

    /// P/Q from coefficient lists; Q must not vanish on the closed disc.
    pub fn rational(num: Vec<Complex64>, den: Vec<Complex64>) -> Result<Self> {
        if den.iter().all(|c| c.norm() == 0.0) {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        let den_check = den.clone();
        for z in sample_grid(32, 64, 1.0) {
            if horner(&den_check, z).norm() < 1e-12 {
                return Err(Error::Domain(format!("denominator vanishes near {z} in the closed disc")));
            }
        }
        let label = format!("rational {}/{}", num.len().saturating_sub(1), den.len().saturating_sub(1));
        let zero = num.iter().all(|c| c.norm() == 0.0);
        let mut f = Self::new(label, move |z| horner(&num, z) / horner(&den, z)).with_boundary_regular(true);
        f.identically_zero = zero;
        Ok(f)
    }

    /// (1 − z)^{-γ} on the principal branch; arg bound |γ|π/2.
    pub fn one_minus_power(gamma: f64) -> Self {
        Self::from_fallible(format!("(1-z)^(-{gamma})"), move |z| {
            let w = ONE - z;
            if w.norm() == 0.0 {
                return Err(Error::Singularity("(1-z)^(-gamma) at z = 1".into()));
            }
            Ok((-gamma * w.ln()).exp())
        })
        .with_zeros(Vec::new())
        .with_arg_bound(gamma.abs() * FRAC_PI_2)
        .with_log(move |z| Ok(-gamma * (ONE - z).ln()))
    }

    /// K_{λ,a,q}(z) = (1−|λ|²)^{a−2/q} (1−λ̄z)^{−a}.
    pub fn kernel(params: KernelParams) -> Result<Self> {
        params.validate()?;
        let KernelParams { lambda, a, q } = params;
        let lc = lambda.conj();
        let ln_c = (a - 2.0 / q) * (1.0 - lambda.norm_sqr()).ln();
        let label = format!("kernel lambda={lambda} a={a} q={q}");
        Ok(Self::new(label, move |z| (ln_c - a * (ONE - lc * z).ln()).exp())
            .with_zeros(Vec::new())
            .with_arg_bound(a * FRAC_PI_2)
            .with_log(move |z| Ok(ln_c - a * (ONE - lc * z).ln()))
            .with_boundary_regular(true))
    }

    /// Finite Blaschke product Π (|a|/a)(a − z)/(1 − āz), with z for a = 0.
    pub fn blaschke(zeros: &[Complex64]) -> Result<Self> {
        if let Some(a) = zeros.iter().find(|a| !(a.norm() < 1.0)) {
            return Err(Error::Domain(format!("Blaschke zero {a} is not inside the disc")));
        }
        let zs = zeros.to_vec();
        let label = format!("blaschke {} zeros", zs.len());
        let list = zs.iter().map(|&at| Zero { at, multiplicity: 1 }).collect();
        let f = Self::new(label, move |z| {
            zs.iter().fold(ONE, |acc, &a| {
                if a.norm() == 0.0 {
                    acc * z
                } else {
                    acc * (a.norm() / a) * (a - z) / (ONE - a.conj() * z)
                }
            })
        })
        .with_zeros(list)
        .with_boundary_regular(true);
        if zeros.is_empty() {
            Ok(f.with_arg_bound(0.0).with_log(|_| Ok(Complex64::new(0.0, 0.0))))
        } else {
            Ok(f)
        }
    }

    /// φ_λ(z) = (λ − z)/(1 − λ̄z).
    pub fn mobius(lambda: Complex64) -> Result<Self> {
        if !(lambda.norm() < 1.0) {
            return Err(Error::Domain(format!("mobius map needs |lambda| < 1, got {}", lambda.norm())));
        }
        Ok(Self::new(format!("mobius {lambda}"), move |z| mobius_eval(lambda, z))
            .with_zeros(vec![Zero { at: lambda, multiplicity: 1 }])
            .with_boundary_regular(true))
    }

    /// φ_λ'(z) = −(1 − |λ|²)/(1 − λ̄z)².
    pub fn mobius_derivative(lambda: Complex64) -> Result<Self> {
        if !(lambda.norm() < 1.0) {
            return Err(Error::Domain(format!("mobius map needs |lambda| < 1, got {}", lambda.norm())));
        }
        let c = 1.0 - lambda.norm_sqr();
        Ok(Self::new(format!("mobius' {lambda}"), move |z| {
            let d = ONE - lambda.conj() * z;
            -c / (d * d)
        })
        .with_zeros(Vec::new())
        .with_boundary_regular(true))
    }

    /// Pointwise product; certificates combine when both factors carry them.
    pub fn product(&self, other: &AnalyticFunction) -> AnalyticFunction {
        let (f, g) = (self.eval.clone(), other.eval.clone());
        let mut out = Self::from_fallible(format!("({})*({})", self.label, other.label), move |z| Ok(f(z)? * g(z)?));
        out.boundary_regular = self.boundary_regular && other.boundary_regular;
        out.identically_zero = self.identically_zero || other.identically_zero;
        if let (Some(a), Some(b)) = (&self.zeros, &other.zeros) {
            out = out.with_zeros(a.iter().chain(b.iter()).copied().collect());
        }
        if let (Some(a), Some(b)) = (self.arg_bound, other.arg_bound) {
            out.arg_bound = Some(a + b);
        }
        if let (Some(lf), Some(lg)) = (self.log_fn(), other.log_fn()) {
            out.log = Some(Arc::new(move |z| Ok(lf(z)? + lg(z)?)));
        }
        out
    }

    /// c·f.
    pub fn scale(&self, c: Complex64) -> AnalyticFunction {
        if c == Complex64::new(0.0, 0.0) {
            return Self::zero();
        }
        self.product(&Self::constant(c)).with_label(format!("{c}*({})", self.label))
    }

    /// f∘ω; zeros and argument bounds are not propagated, but an argument
    /// bound and logarithm of f carry over verbatim.
    pub fn compose(&self, omega: &AnalyticFunction) -> AnalyticFunction {
        let (f, w) = (self.eval.clone(), omega.eval.clone());
        let mut out = Self::from_fallible(format!("({})o({})", self.label, omega.label), move |z| f(w(z)?));
        out.arg_bound = self.arg_bound;
        out.identically_zero = self.identically_zero;
        out.boundary_regular = self.boundary_regular && omega.boundary_regular;
        if let Some(l) = self.log.clone() {
            let w = omega.eval.clone();
            out.log = Some(Arc::new(move |z| l(w(z)?)));
        }
        if self.zeros.as_ref().is_some_and(|z| z.is_empty()) {
            out = out.with_zeros(Vec::new());
        }
        out
    }

    /// Log branch usable for products: declared, or principal under a
    /// certified argument bound below π.
    fn log_fn(&self) -> Option<CFn> {
        if let Some(l) = &self.log {
            return Some(l.clone());
        }
        match self.arg_bound {
            Some(b) if b < PI => {
                let f = self.eval.clone();
                Some(Arc::new(move |z| Ok(f(z)?.ln())))
            }
            _ => None,
        }
    }
}

/// F∘ω after checking |ω(z)| ≤ |z| + 1e-10 on a 10³-point grid.
pub fn subordinate(big_f: &AnalyticFunction, omega: &AnalyticFunction) -> Result<AnalyticFunction> {
    check_subordination(omega)?;
    Ok(big_f.compose(omega))
}

pub fn check_subordination(omega: &AnalyticFunction) -> Result<()> {
    let origin = omega.try_eval(Complex64::new(0.0, 0.0))?;
    if origin.norm() > 1e-10 {
        return Err(Error::Subordination {
            z: "0".into(),
            image_modulus: origin.norm(),
            modulus: 0.0,
        });
    }
    for z in sample_grid(25, 40, 0.999) {
        let w = omega.try_eval(z)?;
        if w.norm() > z.norm() + 1e-10 {
            return Err(Error::Subordination {
                z: format!("{z}"),
                image_modulus: w.norm(),
                modulus: z.norm(),
            });
        }
    }
    Ok(())
}

pub(crate) fn mobius_eval(lambda: Complex64, z: Complex64) -> Complex64 {
    (lambda - z) / (ONE - lambda.conj() * z)
}

pub(crate) fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn merge_zeros(mut zeros: Vec<Zero>) -> Vec<Zero> {
    let mut out: Vec<Zero> = Vec::with_capacity(zeros.len());
    zeros.retain(|z| z.multiplicity > 0);
    for z in zeros {
        if let Some(e) = out.iter_mut().find(|e| (e.at - z.at).norm() <= 1e-14) {
            e.multiplicity += z.multiplicity;
        } else {
            out.push(z);
        }
    }
    out
}

/// Polar grid with `nr` radii in (0, r_max] and `nt` angles, plus the origin.
pub fn sample_grid(nr: usize, nt: usize, r_max: f64) -> Vec<Complex64> {
    let mut pts = vec![Complex64::new(0.0, 0.0)];
    for i in 1..=nr {
        let r = r_max * i as f64 / nr as f64;
        for k in 0..nt {
            pts.push(Complex64::from_polar(r, TAU * (k as f64 + 0.5 * (i % 2) as f64) / nt as f64));
        }
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kernel_values() {
        let k0 = AnalyticFunction::kernel(KernelParams::new(c(0.0, 0.0), 2.0, 2.0).unwrap()).unwrap();
        assert_abs_diff_eq!((k0.eval(c(0.3, 0.2)) - ONE).norm(), 0.0, epsilon = 1e-15);
        let k = AnalyticFunction::kernel(KernelParams::new(c(0.5, 0.0), 2.0, 2.0).unwrap()).unwrap();
        assert_abs_diff_eq!(k.eval(c(0.5, 0.0)).re, 1.0 / 0.75, epsilon = 1e-13);
        assert!(KernelParams::new(c(0.5, 0.0), 1.0, 2.0).is_err());
        assert!(KernelParams::new(c(1.0, 0.0), 2.0, 2.0).is_err());
        k.check_certificates().unwrap();
    }

    #[test]
    fn blaschke_unimodular() {
        let b = AnalyticFunction::blaschke(&[c(0.5, 0.0), c(0.0, -0.3)]).unwrap();
        let v = b.eval(Complex64::from_polar(1.0, PI / 7.0));
        assert_abs_diff_eq!(v.norm(), 1.0, epsilon = 1e-12);
        for z in sample_grid(10, 16, 0.99) {
            assert!(b.eval(z).norm() < 1.0);
        }
        b.check_certificates().unwrap();
        let id = AnalyticFunction::blaschke(&[c(0.0, 0.0)]).unwrap();
        assert_abs_diff_eq!(id.eval(c(0.5, 0.0)).norm(), 0.5, epsilon = 1e-15);
        let one = AnalyticFunction::blaschke(&[]).unwrap();
        assert_eq!(one.eval(c(0.4, 0.1)), ONE);
        assert!(AnalyticFunction::blaschke(&[c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn mobius_properties() {
        let phi0 = AnalyticFunction::mobius(c(0.0, 0.0)).unwrap();
        assert_eq!(phi0.eval(c(0.3, 0.1)), c(-0.3, -0.1));
        let phi = AnalyticFunction::mobius(c(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!((phi.eval(c(0.0, 0.0)) - c(0.5, 0.0)).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(phi.eval(c(0.5, 0.0)).norm(), 0.0, epsilon = 1e-15);
        let lam = c(0.3, 0.4);
        let z = c(0.2, -0.6);
        let w = mobius_eval(lam, z);
        let rhs = (1.0 - lam.norm_sqr()) * (1.0 - z.norm_sqr()) / (ONE - lam.conj() * z).norm_sqr();
        assert_abs_diff_eq!(1.0 - w.norm_sqr(), rhs, epsilon = 1e-12);
        assert_abs_diff_eq!((mobius_eval(lam, w) - z).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn subordination_checks() {
        let f = AnalyticFunction::new("F", |z| ONE / (ONE - 0.5 * z));
        let sq = AnalyticFunction::new("z^2", |z| z * z);
        assert!(subordinate(&f, &sq).is_ok());
        let avg = AnalyticFunction::new("(z^2+z)/2", |z| 0.5 * (z * z + z));
        assert!(check_subordination(&avg).is_ok());
        let bad = AnalyticFunction::new("2z", |z| 2.0 * z);
        assert!(matches!(subordinate(&f, &bad), Err(Error::Subordination { .. })));
    }

    #[test]
    fn product_combines_certificates() {
        let k = AnalyticFunction::kernel(KernelParams::new(c(0.3, 0.0), 2.0, 2.0).unwrap()).unwrap();
        let m = AnalyticFunction::monomial(ONE, 2);
        let p = m.product(&k);
        assert_eq!(p.zeros().unwrap().len(), 1);
        assert_eq!(p.zeros().unwrap()[0].multiplicity, 2);
        assert!(!p.has_log());
        let kk = k.product(&k);
        assert!(kk.has_log());
        let z = c(0.2, 0.5);
        assert_abs_diff_eq!((kk.log(z).unwrap().exp() - kk.eval(z)).norm(), 0.0, epsilon = 1e-12);
    }
}
