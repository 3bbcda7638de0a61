use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Condition, ConditionReport, DEFAULT_THRESHOLD};
use crate::error::{Error, Result};
use crate::exponent::VariableExponent;
use crate::numerics::RadialRule;

/// Deepest dyadic block probed when computing C_b and C_c; the midpoint 1 − 2^{-52}
/// of the last block is still representable.
const DEEPEST_BLOCK: i32 = 51;

/// A nonnegative step function on [0, 1]: `values[i]` on [edges[i], edges[i+1]).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepFunction {
    pub edges: Vec<f64>,
    pub values: Vec<f64>,
}

impl StepFunction {
    pub fn new(edges: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if edges.len() != values.len() + 1 || values.is_empty() {
            return Err(Error::Domain("step function needs one more edge than values".into()));
        }
        if edges[0] != 0.0 || *edges.last().unwrap() != 1.0 || edges.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Domain("step edges must increase from 0 to 1".into()));
        }
        if values.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
            return Err(Error::Domain("step values must be finite and nonnegative".into()));
        }
        Ok(Self { edges, values })
    }

    pub fn constant(c: f64) -> Result<Self> {
        Self::new(vec![0.0, 1.0], vec![c])
    }

    /// ∫_a^b, exact.
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        let mut s = 0.0;
        for (w, v) in self.edges.windows(2).zip(&self.values) {
            let lo = w[0].max(a);
            let hi = w[1].min(b);
            if hi > lo {
                s += v * (hi - lo);
            }
        }
        s
    }

    pub fn is_increasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    /// A random nonnegative step function with up to 12 pieces, some of
    /// them accumulating at 1 (edges ≥ 1 − 2^{-40}).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let m = rng.gen_range(1..=12);
        let edges = random_edges(rng, m, 40);
        let values = (1..edges.len())
            .map(|_| if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.0..10.0) })
            .collect();
        Self { edges, values }
    }
}

fn random_edges<R: Rng + ?Sized>(rng: &mut R, pieces: usize, depth: i32) -> Vec<f64> {
    let mut inner: Vec<f64> = (1..pieces)
        .map(|_| {
            if rng.gen_bool(0.5) {
                rng.gen_range(0.0..1.0)
            } else {
                1.0 - 0.5f64.powi(rng.gen_range(1..=depth))
            }
        })
        .filter(|&e| e > 0.0 && e < 1.0)
        .collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    let mut edges = Vec::with_capacity(inner.len() + 2);
    edges.push(0.0);
    edges.extend(inner);
    edges.push(1.0);
    edges
}

/// A random nonnegative increasing step function with up to 10 pieces,
/// possibly identically zero.
pub fn random_increasing_step<R: Rng + ?Sized>(rng: &mut R) -> StepFunction {
    let m = rng.gen_range(1..=10);
    let edges = random_edges(rng, m, 20);
    let mut v = if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(0.0..1.0) };
    let mut values = Vec::with_capacity(edges.len() - 1);
    for _ in 0..edges.len() - 1 {
        values.push(v);
        if !rng.gen_bool(0.3) {
            v += rng.gen_range(0.0..5.0);
        }
    }
    StepFunction { edges, values }
}

type GapFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A nonnegative function on [0, 1].
#[derive(Clone)]
pub enum Weight {
    Step(StepFunction),
    /// Given in the gap variable t = 1 − r, with jump locations in t.
    Gap {
        label: String,
        f: GapFn,
        breakpoints: Vec<f64>,
    },
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Step(s) => f.debug_tuple("Step").field(s).finish(),
            Self::Gap { label, .. } => f.debug_struct("Gap").field("label", label).finish(),
        }
    }
}

impl Weight {
    pub fn from_gap_fn<F>(label: impl Into<String>, f: F, breakpoints: Vec<f64>) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::Gap {
            label: label.into(),
            f: Arc::new(f),
            breakpoints,
        }
    }

    /// (1 − r)^{−2(p(r)−q)/q} for a radial exponent.
    pub fn exponent(p: &VariableExponent, q: f64) -> Result<Self> {
        if !p.is_radial() {
            return Err(Error::Domain(format!("{} is not radial", p.label())));
        }
        let owned = p.clone();
        let label = format!("weight of {} against q = {q}", p.label());
        let bps = p.breakpoints().to_vec();
        Ok(Self::from_gap_fn(
            label,
            move |t| super::radial::exponent_weight(&owned, q)(t),
            bps,
        ))
    }

    /// ∫_a^b f(r) dr for 0 ≤ a < b ≤ 1; +∞ when the integral diverges at 1.
    pub fn integral(&self, a: f64, b: f64) -> Result<f64> {
        if !(0.0 <= a && a < b && b <= 1.0) {
            return Err(Error::Domain(format!("invalid interval [{a}, {b}]")));
        }
        match self {
            Self::Step(s) => Ok(s.integral(a, b)),
            Self::Gap { f, breakpoints, .. } => {
                let rule = RadialRule::default();
                let g = |t: f64| f(t);
                if b == 1.0 {
                    let i = rule.integrate(1.0 - a, breakpoints, g)?;
                    Ok(if i.divergent { f64::INFINITY } else { i.value })
                } else {
                    rule.integrate_interval(1.0 - b, 1.0 - a, breakpoints, g)
                }
            }
        }
    }
}

fn ratio(f: &Weight, g: &StepFunction) -> Result<(f64, f64)> {
    let mut fg = 0.0;
    let mut total = 0.0;
    for (w, &v) in g.edges.windows(2).zip(&g.values) {
        if v > 0.0 {
            fg += v * f.integral(w[0], w[1])?;
            total += v * (w[1] - w[0]);
        }
    }
    Ok((fg, total))
}

/// Constants of the maximal conditions on x = 2^{-k}, k ≤ 51, and a
/// brute-force test of ∫fg ≤ 2 C_c ∫g over random increasing step g.
///
/// Returns the reports for conditions (b), (c) and (a), in that order.
pub fn inc_mult_check(f: &Weight, trials: usize, seed: u64) -> Result<Vec<ConditionReport>> {
    if trials == 0 {
        return Err(Error::Domain("need at least one trial".into()));
    }
    let grid: Vec<f64> = (0..=DEEPEST_BLOCK).map(|k| 0.5f64.powi(k)).collect();
    let mut cb = Vec::with_capacity(grid.len());
    let mut cc = Vec::with_capacity(grid.len());
    for &x in &grid {
        cb.push(f.integral(1.0 - x, 1.0)? / x);
        cc.push(2.0 / x * f.integral(1.0 - x, 1.0 - 0.5 * x)?);
    }
    let b = ConditionReport::from_values(Condition::IncmultB, grid.clone(), cb, DEFAULT_THRESHOLD);
    let c = ConditionReport::from_values(Condition::IncmultC, grid, cc, DEFAULT_THRESHOLD);

    let bound = 2.0 * c.sup_value + 1e-9;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ratios = Vec::with_capacity(trials);
    for _ in 0..trials {
        let mut draws = 0;
        let (fg, total) = loop {
            let g = random_increasing_step(&mut rng);
            let (fg, total) = ratio(f, &g)?;
            if total > 0.0 {
                break (fg, total);
            }
            draws += 1;
            if draws > 1000 {
                return Err(Error::Domain("could not draw an increasing step function with positive integral".into()));
            }
        };
        ratios.push(fg / total);
    }
    let (mut sup, mut arg) = (f64::NEG_INFINITY, 0usize);
    for (i, &r) in ratios.iter().enumerate() {
        if r > sup || r.is_nan() {
            sup = r;
            arg = i;
        }
    }
    let a = ConditionReport {
        condition: Condition::IncmultA,
        sup_value: sup,
        unbounded: c.unbounded || !sup.is_finite(),
        growing: false,
        witness: arg as f64,
        grid: (0..trials).map(|i| i as f64).collect(),
        values: ratios,
        threshold: bound,
        passed: !c.unbounded && sup <= bound,
    };
    Ok(vec![b, c, a])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn constant_weight() {
        let f = Weight::Step(StepFunction::constant(1.0).unwrap());
        let r = inc_mult_check(&f, 50, 7).unwrap();
        for rep in &r {
            assert!(rep.passed);
            for v in &rep.values {
                assert_abs_diff_eq!(*v, 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn inverse_square_root_fails_b() {
        let f = Weight::from_gap_fn("(1-t)^(-1/2)", |t| t.powf(-0.5), vec![]);
        let r = inc_mult_check(&f, 5, 1).unwrap();
        let b = &r[0];
        assert!(b.unbounded && !b.passed);
        for (x, v) in b.grid.iter().zip(&b.values) {
            assert_abs_diff_eq!(*v, 2.0 / x.sqrt(), epsilon = 1e-9 * v);
        }
        assert!(!r[2].passed);
    }

    #[test]
    fn limsup_weight_bound() {
        let p = VariableExponent::limsup(2.0, 4.0).unwrap();
        let f = Weight::exponent(&p, 2.0).unwrap();
        let r = inc_mult_check(&f, 100, 3).unwrap();
        assert!(r[1].sup_value <= 2.0, "C_c = {}", r[1].sup_value);
        assert!(r[2].passed && r[2].sup_value <= 4.0);
    }

    #[test]
    fn random_steps_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let g = random_increasing_step(&mut rng);
            assert!(g.is_increasing());
            StepFunction::new(g.edges.clone(), g.values.clone()).unwrap();
            let f = StepFunction::random(&mut rng);
            StepFunction::new(f.edges.clone(), f.values.clone()).unwrap();
        }
    }
}
