//! Gauss–Legendre panels and an adaptive Gauss–Kronrod integrator.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

/// Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes are the roots of P_n, found by Newton iteration from the
    /// Tricomi initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped onto [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK constants).
#[allow(clippy::excessive_precision)]
const XGK15: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG7: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
#[allow(clippy::excessive_precision)]
const WGK15: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// One Kronrod panel: the 15 abscissae with their weights, the integral
/// estimate and the Gauss/Kronrod discrepancy.
#[derive(Debug, Clone)]
pub struct KronrodPanel {
    pub a: f64,
    pub b: f64,
    pub value: f64,
    pub error: f64,
    pub points: [(f64, f64); 15],
}

impl KronrodPanel {
    pub fn evaluate(a: f64, b: f64, f: &impl Fn(f64) -> f64) -> (Self, [f64; 15]) {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut points = [(0.0, 0.0); 15];
        let mut values = [0.0; 15];
        let mut kronrod = 0.0;
        let mut gauss = 0.0;
        let fc = f(mid);
        points[14] = (mid, WGK15[7] * half);
        values[14] = fc;
        kronrod += WGK15[7] * fc;
        gauss += WG7[3] * fc;
        for j in 0..7 {
            let dx = half * XGK15[j];
            let f1 = f(mid - dx);
            let f2 = f(mid + dx);
            points[2 * j] = (mid - dx, WGK15[j] * half);
            points[2 * j + 1] = (mid + dx, WGK15[j] * half);
            values[2 * j] = f1;
            values[2 * j + 1] = f2;
            kronrod += WGK15[j] * (f1 + f2);
            if j % 2 == 1 {
                gauss += WG7[j / 2] * (f1 + f2);
            }
        }
        let value = kronrod * half;
        let error = ((kronrod - gauss) * half).abs();
        (
            Self {
                a,
                b,
                value,
                error,
                points,
            },
            values,
        )
    }
}

struct Pending {
    panel: KronrodPanel,
    values: [f64; 15],
}

impl PartialEq for Pending {
    fn eq(&self, other: &Self) -> bool {
        self.panel.error == other.panel.error
    }
}
impl Eq for Pending {}
impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        self.panel.error.total_cmp(&other.panel.error)
    }
}

/// Outcome of [`adaptive_kronrod`]: every accepted panel is kept so callers
/// can reuse the nodes for related integrands.
#[derive(Debug, Clone)]
pub struct AdaptiveResult {
    pub value: f64,
    pub error: f64,
    pub converged: bool,
    pub panels: Vec<(KronrodPanel, [f64; 15])>,
}

/// Globally adaptive bisection on the panel with the largest error
/// estimate, starting from `initial` equal panels.
pub fn adaptive_kronrod(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    initial: usize,
    rel_tol: f64,
    abs_tol: f64,
    max_panels: usize,
) -> AdaptiveResult {
    let initial = initial.max(1);
    let width = (b - a) / initial as f64;
    let mut heap = BinaryHeap::new();
    let mut value = 0.0;
    let mut error = 0.0;
    for i in 0..initial {
        let lo = a + width * i as f64;
        let hi = if i + 1 == initial {
            b
        } else {
            a + width * (i + 1) as f64
        };
        let (panel, values) = KronrodPanel::evaluate(lo, hi, &f);
        value += panel.value;
        error += panel.error;
        heap.push(Pending { panel, values });
    }
    let mut converged = error <= abs_tol.max(rel_tol * value.abs());
    while !converged && heap.len() < max_panels {
        let Some(worst) = heap.pop() else { break };
        let KronrodPanel { a: lo, b: hi, .. } = worst.panel;
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            heap.push(worst);
            break;
        }
        let (left, lv) = KronrodPanel::evaluate(lo, mid, &f);
        let (right, rv) = KronrodPanel::evaluate(mid, hi, &f);
        value += left.value + right.value - worst.panel.value;
        error += left.error + right.error - worst.panel.error;
        heap.push(Pending {
            panel: left,
            values: lv,
        });
        heap.push(Pending {
            panel: right,
            values: rv,
        });
        converged = error <= abs_tol.max(rel_tol * value.abs());
    }
    // Re-sum to shed the drift accumulated by the incremental updates.
    let mut panels: Vec<_> = heap.into_iter().map(|p| (p.panel, p.values)).collect();
    panels.sort_by(|x, y| x.0.a.total_cmp(&y.0.a));
    let value = panels.iter().map(|(p, _)| p.value).sum();
    let error = panels.iter().map(|(p, _)| p.error).sum();
    AdaptiveResult {
        value,
        error,
        converged,
        panels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        let rule = GaussLegendre::new(8);
        // degree 15 is the highest integrated exactly by 8 nodes
        let v = rule.integrate(0.0, 2.0, |x| x.powi(15));
        assert_abs_diff_eq!(v, 2f64.powi(16) / 16.0, epsilon = 1e-9);
        let s: f64 = rule.mapped(-1.0, 1.0).map(|(_, w)| w).sum();
        assert_abs_diff_eq!(s, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn odd_rule_has_center_node() {
        let rule = GaussLegendre::new(5);
        let v = rule.integrate(-1.0, 1.0, |x| x * x);
        assert_abs_diff_eq!(v, 2.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn kronrod_resolves_endpoint_singularity() {
        let res = adaptive_kronrod(|x: f64| x.powf(-0.5), 0.0, 1.0, 1, 1e-10, 0.0, 2000);
        assert!(res.converged);
        assert_abs_diff_eq!(res.value, 2.0, epsilon = 1e-8);
    }

    #[test]
    fn kronrod_finds_narrow_peak() {
        let w = 1e-6;
        let f = |x: f64| w / (w * w + (x - 0.3).powi(2));
        let res = adaptive_kronrod(f, 0.0, 1.0, 4, 1e-10, 0.0, 5000);
        let exact = (0.7 / w).atan() + (0.3 / w).atan();
        assert!(res.converged);
        assert_abs_diff_eq!(res.value, exact, epsilon = 1e-8 * exact);
    }
}
