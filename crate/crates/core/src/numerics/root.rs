//! Bracketed root finding for monotone equations h(λ) = target.

use crate::error::{Error, Result};

/// Solves h(λ) = target for nonincreasing h on [lo, hi] by bisection.
///
/// Stops once |h(λ) − target| ≤ tol or the bracket is narrower than tol·λ.
pub fn bisect_monotone<H>(h: H, lo: f64, hi: f64, target: f64, tol: f64) -> Result<f64>
where
    H: Fn(f64) -> f64,
{
    bisect_monotone_with(|x| Ok(h(x)), lo, hi, target, tol)
}

pub fn bisect_monotone_with<H>(h: H, mut lo: f64, mut hi: f64, target: f64, tol: f64) -> Result<f64>
where
    H: Fn(f64) -> Result<f64>,
{
    if !(lo < hi) {
        return Err(Error::Domain(format!("empty bracket [{lo}, {hi}]")));
    }
    let h_lo = h(lo)?;
    let h_hi = h(hi)?;
    if !(h_lo >= target && target >= h_hi) {
        return Err(Error::Bracket {
            lo,
            hi,
            h_lo,
            h_hi,
            target,
        });
    }
    if (h_lo - target).abs() <= tol {
        return Ok(lo);
    }
    if (h_hi - target).abs() <= tol {
        return Ok(hi);
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let v = h(mid)?;
        if v.is_nan() {
            return Err(Error::Evaluation(format!("monotone equation is NaN at {mid}")));
        }
        if (v - target).abs() <= tol {
            return Ok(mid);
        }
        if v > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= tol * mid.abs() {
            return Ok(0.5 * (lo + hi));
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Expands [lo, hi] geometrically around `start` until h(lo) ≥ target ≥ h(hi).
pub fn bracket_decreasing<H>(h: &H, start: f64, target: f64, max_steps: usize) -> Result<(f64, f64)>
where
    H: Fn(f64) -> Result<f64>,
{
    let mut lo = start;
    let mut hi = start;
    let mut v = h(start)?;
    let mut steps = 0;
    if v >= target {
        loop {
            hi *= 2.0;
            let w = h(hi)?;
            if w <= target {
                return Ok((hi * 0.5, hi));
            }
            steps += 1;
            if steps >= max_steps {
                return Err(Error::Bracket {
                    lo: start,
                    hi,
                    h_lo: v,
                    h_hi: w,
                    target,
                });
            }
            v = w;
        }
    } else {
        loop {
            lo *= 0.5;
            let w = h(lo)?;
            if w >= target {
                return Ok((lo, lo * 2.0));
            }
            steps += 1;
            if steps >= max_steps {
                return Err(Error::Bracket {
                    lo,
                    hi: start,
                    h_lo: w,
                    h_hi: v,
                    target,
                });
            }
            v = w;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn inverse_square() {
        let x = bisect_monotone(|l| 1.0 / (l * l), 0.1, 10.0, 1.0, 1e-12).unwrap();
        assert_abs_diff_eq!(x, 1.0, epsilon = 1e-11);
    }

    #[test]
    fn bracket_violation() {
        let err = bisect_monotone(|l| 1.0 / l, 2.0, 10.0, 1.0, 1e-10).unwrap_err();
        assert!(matches!(err, Error::Bracket { .. }));
    }

    #[test]
    fn independent_of_bracket() {
        let h = |l: f64| 0.5 / (l * l);
        let tol = 1e-10;
        let a = bisect_monotone(h, 0.1, 3.0, 1.0, tol).unwrap();
        let b = bisect_monotone(h, 0.6, 0.9, 1.0, tol).unwrap();
        assert!((a - b).abs() <= 2.0 * tol);
        assert_abs_diff_eq!(a, 0.5f64.sqrt(), epsilon = 1e-9);
    }

    #[test]
    fn expands_bracket() {
        let h = |l: f64| Ok(100.0 / l);
        let (lo, hi) = bracket_decreasing(&h, 1.0, 1.0, 60).unwrap();
        assert!(h(lo).unwrap() >= 1.0 && h(hi).unwrap() <= 1.0);
    }
}
