//! Space-equivalence and inequality checkers for radial exponents, kernel
//! means, the log-Hölder boundary trace and subordination.

mod hat;
mod incmult;
mod lemmas;
mod radial;
mod subordination;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use hat::{hat_equivalence_check, separation_witness, HatEquivalenceOptions};
pub use incmult::{inc_mult_check, random_increasing_step, StepFunction, Weight};
pub use lemmas::{growth_lemma_check, iab_check, kernel_mean_check, poisson_lemma_check};
pub use radial::{condition_v, condition_vi, condition_vii, condition_viii, exponent_weight};
pub use subordination::{composition_check, littlewood_check, mobius_jacobian_bound};

/// Default threshold K separating bounded from unbounded suprema.
pub const DEFAULT_THRESHOLD: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    Iii,
    Iv,
    V,
    Vi,
    Vii,
    Viii,
    IncmultA,
    IncmultB,
    IncmultC,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Self::Iii => "iii",
            Self::Iv => "iv",
            Self::V => "v",
            Self::Vi => "vi",
            Self::Vii => "vii",
            Self::Viii => "viii",
            Self::IncmultA => "incmult-a",
            Self::IncmultB => "incmult-b",
            Self::IncmultC => "incmult-c",
        }
    }
}

impl std::str::FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "iii" | "3" => Self::Iii,
            "iv" | "4" => Self::Iv,
            "v" | "5" => Self::V,
            "vi" | "6" => Self::Vi,
            "vii" | "7" => Self::Vii,
            "viii" | "8" => Self::Viii,
            "incmult-a" | "a" => Self::IncmultA,
            "incmult-b" | "b" => Self::IncmultB,
            "incmult-c" | "c" => Self::IncmultC,
            other => return Err(Error::Domain(format!("unknown condition {other:?}"))),
        })
    }
}

/// Supremum of a condition over a grid, with the growth diagnosis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: Condition,
    /// Largest value on the grid; +∞ when some value diverged.
    pub sup_value: f64,
    /// Growth detected and the supremum exceeds the threshold.
    pub unbounded: bool,
    /// The last three values increase with non-decreasing increments.
    pub growing: bool,
    /// Grid point where the supremum is attained.
    pub witness: f64,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub threshold: f64,
    pub passed: bool,
}

impl ConditionReport {
    /// Classifies `values` (one per grid point, in grid order).
    pub fn from_values(condition: Condition, grid: Vec<f64>, values: Vec<f64>, threshold: f64) -> Self {
        let (mut sup_value, mut witness) = (f64::NEG_INFINITY, f64::NAN);
        for (&g, &v) in grid.iter().zip(&values) {
            if v > sup_value || v.is_nan() {
                sup_value = v;
                witness = g;
            }
        }
        let growing = is_growing(&values);
        let divergent = values.iter().any(|v| !v.is_finite());
        let unbounded = divergent || (growing && sup_value > threshold);
        let passed = !unbounded && sup_value <= threshold;
        Self {
            condition,
            sup_value: if divergent { f64::INFINITY } else { sup_value },
            unbounded,
            growing,
            witness,
            grid,
            values,
            threshold,
            passed,
        }
    }

    pub fn bounded(&self) -> bool {
        !self.unbounded
    }
}

/// Last three values strictly increasing with non-decreasing increments.
///
/// A factor-based rule misses power growth such as x^{-1/2} on a dyadic
/// grid, whose consecutive ratios are only √2.
pub fn is_growing(values: &[f64]) -> bool {
    let n = values.len();
    if n < 3 {
        return false;
    }
    let (a, b, c) = (values[n - 3], values[n - 2], values[n - 1]);
    if !(a.is_finite() && b.is_finite()) {
        return false;
    }
    if !c.is_finite() {
        return true;
    }
    b > a && c > b && (c - b) >= (b - a) * (1.0 - 1e-9)
}

/// Shared inputs of the radial conditions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialEquivParams {
    pub q: f64,
    pub a: f64,
    /// Decreasing gaps x ∈ (0, 1].
    pub x_grid: Vec<f64>,
    /// Increasing |λ| values in [0, 1).
    pub lambda_grid: Vec<f64>,
    pub threshold: f64,
}

impl RadialEquivParams {
    /// x = 2^{-k}, k = 0..=30; |λ| ∈ {0, 1/2, 1 − 2^{-k}, k = 1..=12}; a = 2.
    pub fn new(q: f64) -> Result<Self> {
        let mut lambda_grid = vec![0.0, 0.5];
        for k in 1..=12 {
            lambda_grid.push(1.0 - 0.5f64.powi(k));
        }
        lambda_grid.sort_by(f64::total_cmp);
        lambda_grid.dedup();
        let p = Self {
            q,
            a: 2.0,
            x_grid: (0..=30).map(|k| 0.5f64.powi(k)).collect(),
            lambda_grid,
            threshold: DEFAULT_THRESHOLD,
        };
        p.validate()?;
        Ok(p)
    }

    /// x = e^{-k²}, k = 1..=n: the grid on which sqrt-log growth crosses
    /// the threshold.
    pub fn with_square_log_grid(mut self, n: u32) -> Self {
        self.x_grid = (1..=n).map(|k| (-((k * k) as f64)).exp()).collect();
        self
    }

    /// The current grid merged with x = e^{-k²}, k = 1..=n.
    pub fn with_combined_grid(mut self, n: u32) -> Self {
        self.x_grid.extend((1..=n).map(|k| (-((k * k) as f64)).exp()));
        self.x_grid.sort_by(|a, b| b.total_cmp(a));
        self.x_grid.dedup();
        self
    }

    pub fn with_a(mut self, a: f64) -> Self {
        self.a = a;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.q > 0.0 && self.q.is_finite()) {
            return Err(Error::Domain(format!("q must be positive, got {}", self.q)));
        }
        if !(self.a * self.q > 2.0) {
            return Err(Error::Domain(format!("need a*q > 2, got a = {}, q = {}", self.a, self.q)));
        }
        if self.x_grid.is_empty() || self.x_grid.iter().any(|&x| !(x > 0.0 && x <= 1.0)) {
            return Err(Error::Domain("x grid must be non-empty and lie in (0, 1]".into()));
        }
        if self.x_grid.windows(2).any(|w| !(w[0] > w[1])) {
            return Err(Error::Domain("x grid must be strictly decreasing".into()));
        }
        if self.lambda_grid.iter().any(|&l| !(0.0..1.0).contains(&l)) {
            return Err(Error::Domain("lambda grid must lie in [0, 1)".into()));
        }
        if self.lambda_grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Domain("lambda grid must be strictly increasing".into()));
        }
        Ok(())
    }
}
