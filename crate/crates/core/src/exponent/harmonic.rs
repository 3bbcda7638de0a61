//! Fourier–Poisson extension of boundary data and harmonic conjugates.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{ComplexifiedExponent, ExponentKind, MapFn, VariableExponent};
use crate::error::{Error, Result};
use crate::numerics::Polar;

/// Degree used when conjugating an exponent that carries no modes.
const DEFAULT_MODES: usize = 256;
const HARMONIC_TOLERANCE: f64 = 1e-8;

/// Fourier data c_n = (1/2π)∫ p(e^{iθ}) e^{−inθ} dθ, n = 0..M, of a real
/// harmonic function, stored so that p̂(w) = c_0 + 2 Σ_{n≥1} c_n w^n.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierModes {
    coeffs: Vec<Complex64>,
    order: usize,
}

impl FourierModes {
    /// Modes from the 2M+1 equispaced samples of the boundary data.
    pub fn from_boundary<F: Fn(f64) -> f64>(boundary: F, m: usize) -> Result<Self> {
        let n = 2 * m + 1;
        let mut buf: Vec<Complex64> = (0..n)
            .map(|k| Complex64::new(boundary(TAU * k as f64 / n as f64), 0.0))
            .collect();
        if let Some(k) = buf.iter().position(|v| !v.re.is_finite()) {
            return Err(Error::Evaluation(format!(
                "boundary data not finite at theta = {}",
                TAU * k as f64 / n as f64
            )));
        }
        FftPlanner::<f64>::new().plan_fft_forward(n).process(&mut buf);
        let scale = 1.0 / n as f64;
        let mut coeffs: Vec<Complex64> = buf[..=m].iter().map(|c| c * scale).collect();
        coeffs[0].im = 0.0;
        Ok(Self::trimmed(coeffs, m))
    }

    /// Modes of a0 + Σ (a_n cos nθ + b_n sin nθ).
    pub fn from_trig(a0: f64, terms: &[(usize, f64, f64)]) -> Self {
        let m = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); m + 1];
        coeffs[0] = Complex64::new(a0, 0.0);
        for &(n, a, b) in terms {
            if n == 0 {
                coeffs[0].re += a;
            } else {
                coeffs[n] += Complex64::new(0.5 * a, -0.5 * b);
            }
        }
        Self::trimmed(coeffs, m)
    }

    fn trimmed(mut coeffs: Vec<Complex64>, order: usize) -> Self {
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1.0);
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() <= 1e-15 * scale) {
            coeffs.pop();
        }
        Self { coeffs, order }
    }

    /// Requested truncation order M.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Highest mode kept after trimming negligible coefficients.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    /// p̂(w) = c_0 + 2 Σ c_n w^n.
    pub fn hat(&self, w: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().skip(1).rev() {
            acc = (acc + c) * w;
        }
        self.coeffs[0] + 2.0 * acc
    }

    pub fn value(&self, w: Complex64) -> f64 {
        self.hat(w).re
    }

    /// Min and max over a boundary grid fine enough to resolve the top mode.
    pub fn boundary_range(&self) -> (f64, f64) {
        let n = (16 * (self.degree() + 1)).max(256);
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for k in 0..n {
            let v = self.value(Complex64::from_polar(1.0, TAU * k as f64 / n as f64));
            lo = lo.min(v);
            hi = hi.max(v);
        }
        (lo, hi)
    }
}

/// max over an interior grid (|z| ≤ r_max) of |u_x − v_y| + |u_y + v_x|,
/// by fourth-order central differences.
pub fn cauchy_riemann_residual<U, V>(u: U, v: V, r_max: f64) -> f64
where
    U: Fn(Complex64) -> f64,
    V: Fn(Complex64) -> f64,
{
    let h = 1e-3;
    let d = |f: &dyn Fn(Complex64) -> f64, z: Complex64, dir: Complex64| {
        (-f(z + 2.0 * h * dir) + 8.0 * f(z + h * dir) - 8.0 * f(z - h * dir) + f(z - 2.0 * h * dir)) / (12.0 * h)
    };
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let mut worst: f64 = 0.0;
    let radii = [0.0, 0.2, 0.4, 0.6, 0.8, 0.9, 0.95, r_max.min(0.99)];
    for &r in &radii {
        let r = r.min(r_max);
        for k in 0..32 {
            let z = Complex64::from_polar(r, TAU * k as f64 / 32.0);
            let ux = d(&u, z, one);
            let uy = d(&u, z, i);
            let vx = d(&v, z, one);
            let vy = d(&v, z, i);
            worst = worst.max((ux - vy).abs() + (uy + vx).abs());
        }
    }
    worst
}

impl VariableExponent {
    /// Degree-M Poisson extension of boundary data.
    pub fn harmonic_extend<F: Fn(f64) -> f64>(boundary: F, m: usize) -> Result<Self> {
        let modes = FourierModes::from_boundary(boundary, m)?;
        Self::from_modes(modes, format!("harmonic extension (M={m})"))
    }

    /// The harmonic function a0 + Σ r^n (a_n cos nθ + b_n sin nθ).
    pub fn harmonic_from_trig(a0: f64, terms: &[(usize, f64, f64)]) -> Result<Self> {
        let modes = FourierModes::from_trig(a0, terms);
        let mut label = format!("harmonic {a0}");
        for &(n, a, b) in terms {
            label.push_str(&format!(" + r^{n}({a} cos {n}t + {b} sin {n}t)"));
        }
        Self::from_modes(modes, label)
    }

    pub fn from_modes(modes: FourierModes, label: String) -> Result<Self> {
        let (lo, hi) = modes.boundary_range();
        if !(lo > 0.0) {
            return Err(Error::Domain(format!(
                "harmonic exponent must stay positive, boundary minimum {lo}"
            )));
        }
        let shared = Arc::new(modes.clone());
        let eval = Arc::new(move |gap: f64, theta: f64| shared.value(Polar::new(gap, theta).z()));
        let slack = 1e-12 * hi;
        Ok(
            VariableExponent::unchecked(ExponentKind::HarmonicExtended, label, lo - slack, hi + slack, eval)
                .with_modes(modes),
        )
    }

    /// Conjugate p̃ with p̃(0) = 0 and the analytic completion p̂ = p + i p̃.
    pub fn conjugate(&self) -> Result<ComplexifiedExponent> {
        if let Some(q) = self.constant_value() {
            let mut c = ComplexifiedExponent::constant(q)?;
            c.p = self.clone();
            return Ok(c);
        }
        let (modes, p) = match self.modes() {
            Some(m) => (m.clone(), self.clone()),
            None => {
                let modes = FourierModes::from_boundary(|t| self.boundary(t), DEFAULT_MODES)?;
                let mut worst: f64 = 0.0;
                for &r in &[0.0, 0.3, 0.6, 0.9, 0.99] {
                    for k in 0..32 {
                        let th = TAU * k as f64 / 32.0;
                        let z = Complex64::from_polar(r, th);
                        worst = worst.max((self.eval(r, th) - modes.value(z)).abs());
                    }
                }
                if worst > HARMONIC_TOLERANCE {
                    return Err(Error::NotHarmonic {
                        residual: worst,
                        tolerance: HARMONIC_TOLERANCE,
                    });
                }
                (modes, self.clone())
            }
        };
        let shared = Arc::new(modes);
        let hat: MapFn = {
            let m = shared.clone();
            Arc::new(move |z| m.hat(z))
        };
        let residual = cauchy_riemann_residual(|z| p.eval_z(z), |z| shared.hat(z).im, 0.99);
        if residual > HARMONIC_TOLERANCE {
            return Err(Error::NotHarmonic {
                residual,
                tolerance: HARMONIC_TOLERANCE,
            });
        }
        let n = 4096.max(16 * (shared.degree() + 1));
        let tilde_sup = (0..n)
            .map(|k| shared.hat(Complex64::from_polar(1.0, TAU * k as f64 / n as f64)).im.abs())
            .fold(0.0, f64::max);
        Ok(ComplexifiedExponent {
            p,
            hat,
            tilde_sup,
            modes: shared.order(),
            residual,
        })
    }
}
