//! Splitting an analytic function into two with nonnegative real part.
//!
//! Each part is the Schwarz integral of max(±Re f, 0) over the circle,
//! evaluated with a positive-weight rule: composite Gauss–Legendre panels
//! split at the sign changes of Re f and graded toward the pole of the
//! Schwarz kernel. Positive weights keep Re f_j ≥ 0 exactly, and sharing the
//! node set between the parts makes f_1 − f_2 reproduce f to quadrature
//! accuracy.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::sync::Arc;

use num_complex::Complex64;

use super::{AnalyticFunction, CFn};
use crate::error::{Error, Result};
use crate::numerics::GaussLegendre;

const PANEL_NODES: usize = 16;
const RESIDUAL_TOLERANCE: f64 = 1e-8;

/// Radius used for functions that cannot be sampled on the circle itself.
pub const INTERIOR_SAMPLING_RADIUS: f64 = 1.0 - 1.0 / 1_048_576.0;

#[derive(Debug, Clone)]
pub struct RieszSplit {
    pub f1: AnalyticFunction,
    pub f2: AnalyticFunction,
    /// max |f_1 − f_2 − f| / max(1, |f|) on interior test points.
    pub residual: f64,
    pub sampling_radius: f64,
    pub sign_changes: Vec<f64>,
}

#[derive(Clone, Copy)]
struct Node {
    zeta: Complex64,
    w: f64,
    u: f64,
}

struct Panel {
    a: f64,
    b: f64,
    start: usize,
    end: usize,
}

struct Schwarz {
    g: CFn,
    rho: f64,
    imag0: f64,
    gl: Vec<(f64, f64)>,
    panels: Vec<Panel>,
    nodes: Vec<Node>,
    kinks: Vec<f64>,
}

impl Schwarz {
    fn u(&self, theta: f64) -> Result<f64> {
        let v = (self.g)(Complex64::from_polar(self.rho, theta))?;
        if v.re.is_finite() {
            Ok(v.re)
        } else {
            Err(Error::Evaluation(format!("boundary real part not finite at theta = {theta}")))
        }
    }

    fn add_panel(&self, a: f64, b: f64, sign: f64, w: Complex64, acc: &mut Complex64) -> Result<()> {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for &(x, wt) in &self.gl {
            let th = mid + half * x;
            let v = (sign * self.u(th)?).max(0.0);
            if v > 0.0 {
                let zeta = Complex64::from_polar(1.0, th);
                *acc += (half * wt / TAU * v) * (zeta + w) / (zeta - w);
            }
        }
        Ok(())
    }

    /// (1/2π)∫ (ζ+w)/(ζ−w) max(sign·u, 0) dθ for |w| < 1.
    fn integral(&self, w: Complex64, sign: f64) -> Result<Complex64> {
        let r = w.norm();
        if !(r < 1.0) {
            return Err(Error::Domain(format!(
                "Riesz part evaluated at |z| = {} outside its sampling radius {}",
                r * self.rho,
                self.rho
            )));
        }
        let d = (1.0 - r).max(1e-300);
        let phi = if r == 0.0 { 0.0 } else { w.arg().rem_euclid(TAU) };
        let mut acc = Complex64::new(0.0, 0.0);
        for p in &self.panels {
            let half = 0.5 * (p.b - p.a);
            let mid = 0.5 * (p.a + p.b);
            let mut off = (phi - mid).rem_euclid(TAU);
            if off > PI {
                off -= TAU;
            }
            let ang = (off.abs() - half).max(0.0);
            if ang.hypot(d) >= half {
                for node in &self.nodes[p.start..p.end] {
                    let v = (sign * node.u).max(0.0);
                    if v > 0.0 {
                        acc += (node.w * v) * (node.zeta + w) / (node.zeta - w);
                    }
                }
                continue;
            }
            // Graded panels around the kernel peak at mid + off.
            let centre = mid + off;
            let mut edges = vec![p.a, p.b];
            if centre > p.a && centre < p.b {
                edges.push(centre);
            }
            let mut s = d;
            while s < 2.0 * half + off.abs() {
                for e in [centre - s, centre + s] {
                    if e > p.a && e < p.b {
                        edges.push(e);
                    }
                }
                s *= 2.0;
            }
            edges.sort_by(f64::total_cmp);
            edges.dedup_by(|x, y| (*x - *y).abs() <= 1e-15 * (1.0 + y.abs()));
            for pair in edges.windows(2) {
                self.add_panel(pair[0], pair[1], sign, w, &mut acc)?;
            }
        }
        Ok(acc)
    }
}

fn find_sign_changes<F: Fn(f64) -> Result<f64>>(u: F, samples: usize) -> Result<(Vec<f64>, bool, bool)> {
    let thetas: Vec<f64> = (0..samples).map(|k| TAU * k as f64 / samples as f64).collect();
    let vals: Vec<f64> = thetas.iter().map(|&t| u(t)).collect::<Result<_>>()?;
    let any_pos = vals.iter().any(|&v| v > 0.0);
    let any_neg = vals.iter().any(|&v| v < 0.0);
    let mut roots = Vec::new();
    for k in 0..samples {
        let (a, b) = (thetas[k], if k + 1 == samples { TAU } else { thetas[k + 1] });
        let (ua, ub) = (vals[k], vals[(k + 1) % samples]);
        if (ua > 0.0) != (ub > 0.0) {
            let (mut lo, mut hi) = (a, b);
            let lo_pos = ua > 0.0;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if (u(mid)? > 0.0) == lo_pos {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|x, y| (*x - *y).abs() < 1e-14);
    Ok((roots, any_pos, any_neg))
}

/// Riesz split f = f_1 − f_2 with Re f_1 = max(Re f, 0) and
/// Re f_2 = max(−Re f, 0) on the sampling circle, Im f_1(0) = Im f(0) and
/// Im f_2(0) = 0.
///
/// Boundary-regular functions are sampled on |z| = 1, others on
/// |z| = 1 − 2^{-20}; `resolution` is the number of boundary samples used to
/// locate sign changes and sets the coarse panel width.
pub fn riesz_split(f: &AnalyticFunction, resolution: usize) -> Result<RieszSplit> {
    if resolution < 64 {
        return Err(Error::Domain(format!("Riesz split resolution must be at least 64, got {resolution}")));
    }
    let rho = if f.is_boundary_regular() { 1.0 } else { INTERIOR_SAMPLING_RADIUS };
    let g = f.eval_fn();
    let imag0 = f.try_eval(Complex64::new(0.0, 0.0))?.im;
    let u = |t: f64| -> Result<f64> {
        let v = g(Complex64::from_polar(rho, t))?;
        if v.re.is_finite() {
            Ok(v.re)
        } else {
            Err(Error::Evaluation(format!("{} not finite on the sampling circle at {t}", f.label())))
        }
    };
    let (kinks, any_pos, any_neg) = find_sign_changes(u, resolution)?;

    let gl: Vec<(f64, f64)> = GaussLegendre::new(PANEL_NODES).mapped(-1.0, 1.0).collect();
    let coarse = (resolution / 64).clamp(16, 1024);
    let mut edges: Vec<f64> = (0..=coarse).map(|k| TAU * k as f64 / coarse as f64).collect();
    edges.extend(kinks.iter().copied());
    edges.sort_by(f64::total_cmp);
    edges.dedup_by(|x, y| (*x - *y).abs() <= 1e-13);
    let mut schwarz = Schwarz {
        g: g.clone(),
        rho,
        imag0,
        gl,
        panels: Vec::new(),
        nodes: Vec::new(),
        kinks: kinks.clone(),
    };
    let mut nodes = Vec::new();
    let mut panels = Vec::new();
    for pair in edges.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let start = nodes.len();
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for &(x, wt) in &schwarz.gl {
            let th = mid + half * x;
            nodes.push(Node {
                zeta: Complex64::from_polar(1.0, th),
                w: half * wt / TAU,
                u: schwarz.u(th)?,
            });
        }
        panels.push(Panel {
            a,
            b,
            start,
            end: nodes.len(),
        });
    }
    schwarz.nodes = nodes;
    schwarz.panels = panels;
    let shared = Arc::new(schwarz);

    let build = |sign: f64, present: bool, name: &str| -> AnalyticFunction {
        let label = format!("{name} of {}", f.label());
        let s = shared.clone();
        let shift = if sign > 0.0 { Complex64::new(0.0, s.imag0) } else { Complex64::new(0.0, 0.0) };
        if !present {
            if shift.im == 0.0 {
                return AnalyticFunction::zero().with_label(label);
            }
            return AnalyticFunction::constant(shift).with_label(label);
        }
        AnalyticFunction::from_fallible(label, move |z| Ok(s.integral(z / s.rho, sign)? + shift))
            .with_zeros(Vec::new())
            .with_arg_bound(FRAC_PI_2 + 1e-9)
    };
    let f1 = build(1.0, any_pos, "positive Riesz part");
    let f2 = build(-1.0, any_neg, "negative Riesz part");

    let mut residual: f64 = 0.0;
    for &r in &[0.0, 0.3, 0.6, 0.9, 0.99] {
        for k in 0..32 {
            let z = Complex64::from_polar(r * rho, TAU * (k as f64 + 0.25) / 32.0);
            let fz = f.try_eval(z)?;
            let d = f1.try_eval(z)? - f2.try_eval(z)? - fz;
            residual = residual.max(d.norm() / fz.norm().max(1.0));
        }
    }
    if !(residual <= RESIDUAL_TOLERANCE) {
        return Err(Error::Accuracy {
            what: format!("Riesz split of {}", f.label()),
            residual,
            tolerance: RESIDUAL_TOLERANCE,
        });
    }
    Ok(RieszSplit {
        f1,
        f2,
        residual,
        sampling_radius: rho,
        sign_changes: shared.kinks.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{sample_grid, KernelParams};
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn positive_function_is_its_own_part() {
        let one = AnalyticFunction::constant(c(1.0, 0.0));
        let s = riesz_split(&one, 256).unwrap();
        assert!(s.f2.is_identically_zero());
        assert_abs_diff_eq!((s.f1.eval(c(0.4, 0.7)) - c(1.0, 0.0)).norm(), 0.0, epsilon = 1e-13);
        let f = AnalyticFunction::polynomial(vec![c(2.0, 0.0), c(1.0, 0.0)]);
        let s = riesz_split(&f, 256).unwrap();
        assert!(s.f2.is_identically_zero());
        for z in [c(0.0, 0.0), c(0.5, 0.5), c(-0.99, 0.0), c(0.0, 0.999_999)] {
            assert_abs_diff_eq!((s.f1.eval(z) - f.eval(z)).norm(), 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn identity_split() {
        let f = AnalyticFunction::monomial(c(1.0, 0.0), 1);
        let s = riesz_split(&f, 4096).unwrap();
        assert_eq!(s.sign_changes.len(), 2);
        assert_abs_diff_eq!(s.f1.eval(c(0.0, 0.0)).re, 1.0 / PI, epsilon = 1e-12);
        assert_abs_diff_eq!(s.f2.eval(c(0.0, 0.0)).re, 1.0 / PI, epsilon = 1e-12);
        for z in sample_grid(12, 24, 0.999_99) {
            let (a, b) = (s.f1.eval(z), s.f2.eval(z));
            assert!(a.re >= 0.0 && b.re >= 0.0);
            assert_abs_diff_eq!((a - b - z).norm(), 0.0, epsilon = 1e-9);
        }
        // Near the circle the real parts approach max(±cos θ, 0).
        let th: f64 = 0.4;
        let z = Complex64::from_polar(1.0 - 1e-7, th);
        assert_abs_diff_eq!(s.f1.eval(z).re, th.cos(), epsilon = 1e-5);
        assert_abs_diff_eq!(s.f2.eval(z).re, 0.0, epsilon = 1e-5);
    }

    #[test]
    fn negative_function_keeps_imaginary_constant() {
        let f = AnalyticFunction::polynomial(vec![c(-3.0, -1.5), c(1.0, 0.0)]);
        let s = riesz_split(&f, 256).unwrap();
        assert_abs_diff_eq!((s.f1.eval(c(0.2, 0.1)) - c(0.0, -1.5)).norm(), 0.0, epsilon = 1e-12);
        assert!(s.residual < 1e-10);
    }

    #[test]
    fn imaginary_constant_goes_to_first_part() {
        let f = AnalyticFunction::polynomial(vec![c(0.0, 2.0), c(1.0, 0.0)]);
        let s = riesz_split(&f, 1024).unwrap();
        assert_abs_diff_eq!(s.f1.eval(c(0.0, 0.0)).im, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.f2.eval(c(0.0, 0.0)).im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn kernel_split_reconstructs() {
        let k = AnalyticFunction::kernel(KernelParams::new(c(0.0, 0.8), 2.0, 2.0).unwrap())
            .unwrap()
            .scale(c(-1.0, 0.5));
        let s = riesz_split(&k, 4096).unwrap();
        assert!(s.residual < 1e-10);
        for z in sample_grid(10, 20, 0.9999) {
            assert!(s.f1.eval(z).re >= 0.0 && s.f2.eval(z).re >= 0.0);
            let d = s.f1.eval(z) - s.f2.eval(z) - k.eval(z);
            assert!(d.norm() <= 1e-8 * k.eval(z).norm().max(1.0));
        }
    }
}
