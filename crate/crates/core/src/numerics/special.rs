//! Log-gamma and the constants derived from it.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// log Γ(x) for x > 0 (Lanczos, g = 7, with reflection below 1/2).
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("log-gamma needs x > 0, got {x}")));
    }
    Ok(ln_gamma_pos(x))
}

fn ln_gamma_pos(x: f64) -> f64 {
    if x < 0.5 {
        // Γ(x)Γ(1−x) = π / sin(πx), with sin(πx) > 0 on (0, 1/2).
        return (PI / (PI * x).sin()).ln() - ln_gamma_pos(1.0 - x);
    }
    // Exact near the two zeros of log Γ to avoid cancellation.
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    let x = x - 1.0;
    let mut a = LANCZOS_COEFFS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// Γ(s−1)/Γ(s/2)², the upper constant of the two-sided Poisson-type bound
/// for circle means of |1 − re^{iθ}|^{-s}, s > 1.
pub fn poisson_sharp_constant(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::Domain(format!("sharp constant needs s > 1, got {s}")));
    }
    Ok((ln_gamma(s - 1.0)? - 2.0 * ln_gamma(0.5 * s)?).exp())
}

/// Generalized binomial coefficient C(γ + n − 1, n) = (γ)_n / n!, the
/// n-th Taylor coefficient of (1 − z)^{-γ}.
pub fn rising_binomial(gamma: f64, n: usize) -> f64 {
    let mut c = 1.0;
    for k in 0..n {
        c *= (gamma + k as f64) / (k as f64 + 1.0);
    }
    c
}

/// C(n, k) as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c.round()
}
