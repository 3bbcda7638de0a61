//! Bundled verification suites.
//!
//! Each suite is deterministic for a given seed and returns a flat
//! [`Report`] whose row names are prefixed by the sub-check that produced
//! them.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analytic::{bounded_arg_decompose, complex_power, AnalyticFunction, DecompositionOrder, KernelParams};
use crate::carleson::{
    box_condition_sup, default_embedding_suite, default_h_grid, default_theta_grid, embedding_sup, necessity_trend,
    DiscreteMeasure,
};
use crate::equivalence::{
    composition_check, condition_v, condition_vii, hat_equivalence_check, inc_mult_check, littlewood_check,
    poisson_lemma_check, separation_witness, HatEquivalenceOptions, RadialEquivParams, StepFunction, Weight,
    DEFAULT_THRESHOLD,
};
use crate::error::{Error, Result};
use crate::exponent::{ComplexifiedExponent, VariableExponent};
use crate::numerics::BergmanWeight;
use crate::report::{Report, Row};
use crate::spaces::{dyadic_radii, Norms};

pub const POISSON_S: [f64; 5] = [1.5, 2.0, 2.5, 3.0, 4.0];
pub const POISSON_R: [f64; 5] = [0.5, 0.9, 0.99, 0.999, 0.9999];

const RECONSTRUCTION_TOL: f64 = 1e-6;
const MODULAR_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    LemmaPoisson,
    HatEquivalence,
    Decomposition,
    Carleson,
    Littlewood,
    RadialEquivalence,
    Luxemburg,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::LemmaPoisson,
        Suite::HatEquivalence,
        Suite::Decomposition,
        Suite::Carleson,
        Suite::Littlewood,
        Suite::RadialEquivalence,
        Suite::Luxemburg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::LemmaPoisson => "lemma-poisson",
            Self::HatEquivalence => "hat-equivalence",
            Self::Decomposition => "decomposition",
            Self::Carleson => "carleson",
            Self::Littlewood => "littlewood",
            Self::RadialEquivalence => "radial-equivalence",
            Self::Luxemburg => "luxemburg",
            Self::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Self::EACH
            .into_iter()
            .chain([Self::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite {s:?}")))
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> Result<Report> {
    let mut report = Report::new(suite.name());
    match suite {
        Suite::LemmaPoisson => report.extend(poisson_suite()?),
        Suite::HatEquivalence => report.extend(hat_suite()?),
        Suite::Decomposition => report.extend(decomposition_suite()?),
        Suite::Carleson => report.extend(carleson_suite()?),
        Suite::Littlewood => report.extend(littlewood_suite()?),
        Suite::RadialEquivalence => {
            report.extend(radial_conditions_suite()?);
            report.extend(incmult_suite(seed)?);
        }
        Suite::Luxemburg => report.extend(luxemburg_suite()?),
        Suite::All => {
            for s in Suite::EACH {
                report.extend(run_suite(s, seed)?);
            }
        }
    }
    Ok(report)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn kernel(lambda: Complex64) -> Result<AnalyticFunction> {
    AnalyticFunction::kernel(KernelParams::new(lambda, 2.0, 2.0)?)
}

/// 2 + r cos θ scaled to ‖p̃‖_∞ = `amplitude`.
pub fn cosine_exponent(amplitude: f64) -> Result<ComplexifiedExponent> {
    VariableExponent::harmonic_from_trig(2.0, &[(1, amplitude, 0.0)])?.conjugate()
}

pub fn poisson_suite() -> Result<Report> {
    poisson_lemma_check(&POISSON_S, &POISSON_R)
}

/// Kernels, monomials and Blaschke-times-kernel products.
pub fn hat_function_suite() -> Result<Vec<AnalyticFunction>> {
    Ok(vec![
        kernel(c(0.5, 0.0))?,
        kernel(c(0.0, 0.9))?,
        AnalyticFunction::monomial(c(1.0, 0.0), 1),
        AnalyticFunction::monomial(c(1.0, 0.0), 3),
        AnalyticFunction::blaschke(&[c(0.0, 0.5)])?.product(&kernel(c(0.7, 0.0))?),
        AnalyticFunction::blaschke(&[c(-0.3, 0.0), c(0.6, 0.0)])?.product(&kernel(c(-0.8, 0.0))?),
    ])
}

/// p = 2 + 1/(−log(1−r)) near the circle with C = 1, in the Hardy and
/// area-Bergman cases, plus the separation witnesses for p ≠ q.
pub fn hat_suite() -> Result<Report> {
    let p = VariableExponent::log_decay(2.0, 1.0, 0.5)?;
    let opts = HatEquivalenceOptions {
        holder_constant: Some(1.0),
        ..HatEquivalenceOptions::default()
    };
    let mut report = Report::new("hat-equivalence");
    for w in [BergmanWeight::hardy(), BergmanWeight::area()] {
        for (i, f) in hat_function_suite()?.iter().enumerate() {
            let mut r = hat_equivalence_check(f, &p, w, opts)?;
            r.title = format!("alpha={} f{i}", w.alpha());
            report.extend(r);
        }
    }
    for w in [BergmanWeight::area(), BergmanWeight::new(1.0)?] {
        report.extend(separation_witness(4.0, 2.0, w)?.1);
    }
    Ok(report)
}

/// Functions with known zeros for the bounded-argument decomposition.
pub fn decomposition_function_suite() -> Result<Vec<AnalyticFunction>> {
    let one = c(1.0, 0.0);
    Ok(vec![
        AnalyticFunction::monomial(one, 1),
        AnalyticFunction::from_roots(one, vec![c(0.5, 0.0)]),
        AnalyticFunction::from_roots(one, vec![c(0.2, 0.0), c(0.0, -0.7), c(1.5, 0.0)]),
        kernel(c(0.9, 0.0))?,
        kernel(c(0.6, 0.3))?.product(&AnalyticFunction::blaschke(&[c(0.2, -0.5)])?),
        AnalyticFunction::from_roots(c(0.0, 1.0), vec![c(-0.3, 0.3), c(2.0, 0.0)]),
        AnalyticFunction::blaschke(&[c(0.5, 0.0), c(-0.5, 0.0), c(0.0, 0.5)])?,
        kernel(c(0.0, -0.8))?.scale(c(-1.0, 0.5)),
        AnalyticFunction::from_roots(one, vec![c(0.9, 0.0), c(-1.2, 0.0)]),
        kernel(c(0.5, 0.5))?.product(&AnalyticFunction::from_roots(one, vec![c(-0.4, 0.0)])),
    ])
}

/// Twenty interior points: four radii up to 0.95, five angles each.
pub fn interior_points() -> Vec<Complex64> {
    let mut pts = Vec::with_capacity(20);
    for r in [0.3, 0.6, 0.85, 0.95] {
        for k in 0..5 {
            pts.push(Complex64::from_polar(r, TAU * (k as f64 + 0.37) / 5.0));
        }
    }
    pts
}

/// Decomposition of the suite against p = 2 + 0.5 r cos θ.
///
/// Per function: reconstruction residual at [`interior_points`],
/// e^{∓πn‖p̃‖/2}|f_j|^p ≤ |f_j^{p̂/2}|² at the same points, and
/// ‖f_j‖/‖f‖ in the Hardy norm at r = 1 − 2^{-8}. The largest of these
/// ratios is reported as the shared constant.
pub fn decomposition_suite() -> Result<Report> {
    let p = cosine_exponent(0.5)?;
    decomposition_report(&p, &decomposition_function_suite()?, 8)
}

pub fn decomposition_report(p: &ComplexifiedExponent, suite: &[AnalyticFunction], k_max: u32) -> Result<Report> {
    let norms = Norms::default();
    let radii = dyadic_radii(k_max);
    let tilde = p.tilde_sup_norm();
    let pts = interior_points();
    let mut report = Report::new("decomposition");
    report.push(Row::info("tilde sup norm", tilde));
    let mut shared: f64 = 0.0;
    for (i, f) in suite.iter().enumerate() {
        let d = bounded_arg_decompose(f, p.p().p_minus(), DecompositionOrder::Auto, 4096)?;
        let mut res: f64 = 0.0;
        for &z in &pts {
            let fz = f.try_eval(z)?;
            res = res.max((d.reconstruct(z)? - fz).norm() / fz.norm().max(1.0));
        }
        report.push(Row::le(format!("f{i} reconstruction"), res, RECONSTRUCTION_TOL, 0.0).with_note(f.label()));

        let n = d.order as f64;
        let window = (PI * n * tilde / 2.0).exp();
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for part in d.parts.iter().filter(|g| !g.is_identically_zero()) {
            let g = complex_power(part, p, 0.5)?;
            for &z in &pts {
                let base = part.try_eval(z)?.norm().powf(p.p().eval_z(z));
                if base > 0.0 {
                    let q = g.try_eval(z)?.norm_sqr() / base;
                    lo = lo.min(q);
                    hi = hi.max(q);
                }
            }
        }
        report.push(Row::ge(format!("f{i} power lower"), lo, 1.0 / window, 1e-9));
        report.push(Row::le(format!("f{i} power upper"), hi, window, 1e-9));

        let nf = norms.hardy_norm(f, p.p(), &radii)?;
        for (j, part) in d.parts.iter().enumerate() {
            let np = norms.hardy_norm(part, p.p(), &radii)?;
            if let Some(w) = &np.warning {
                report.warn(format!("f{i} part {j}: {w}"));
            }
            let ratio = np.lim_norm / nf.lim_norm;
            shared = shared.max(ratio);
            report.push(Row::info(format!("f{i} part {j} norm ratio"), ratio));
        }
    }
    report.push(Row::le("shared part constant", shared, DEFAULT_THRESHOLD, 0.0).with_note(format!("k_max = {k_max}")));
    Ok(report)
}

/// Box condition, embedding ratios and the necessity trend for the
/// 10⁴-atom area measure with a = 2 and p = 2 + 0.5 r cos θ.
pub fn carleson_suite() -> Result<Report> {
    let p = cosine_exponent(0.5)?;
    let mu = DiscreteMeasure::area_grid(100, 100)?;
    let mut report = Report::new("carleson");
    report.extend(box_condition_sup(&mu, 2.0, &default_h_grid(), &default_theta_grid())?);
    report.extend(embedding_sup(&mu, &p, 2.0, &default_embedding_suite(&p)?, 20)?);
    let ks: Vec<u32> = (4..=12).collect();
    report.extend(necessity_trend(&p, 2.0, &ks, 20)?);
    Ok(report)
}

pub const LITTLEWOOD_RADII: [f64; 6] = [0.5, 0.7, 0.9, 0.95, 0.99, 0.999];

/// (F, ω) pairs with ω(0) = 0 and |ω| ≤ 1.
pub fn littlewood_pairs() -> Result<Vec<(AnalyticFunction, AnalyticFunction)>> {
    let one = c(1.0, 0.0);
    let z = AnalyticFunction::monomial(one, 1);
    Ok(vec![
        (
            AnalyticFunction::rational(vec![one], vec![one, c(-0.5, 0.0)])?,
            AnalyticFunction::monomial(one, 2),
        ),
        (kernel(c(0.5, 0.0))?, z.product(&AnalyticFunction::polynomial(vec![c(0.5, 0.0), c(0.5, 0.0)]))),
        (AnalyticFunction::polynomial(vec![c(2.0, 0.0), one]), AnalyticFunction::monomial(c(-1.0, 0.0), 1)),
        (
            AnalyticFunction::polynomial(vec![one, c(2.0, 0.0), one]),
            z.product(&AnalyticFunction::mobius(c(0.3, 0.0))?),
        ),
        (kernel(c(0.0, 0.8))?, AnalyticFunction::monomial(c(0.0, 1.0), 3)),
    ])
}

/// Subordination with p ≡ 2 and ω = z², p = 2 + r cos θ over
/// [`littlewood_pairs`], and composition with φ_{1/2} on A² against the
/// Jacobian bound.
pub fn littlewood_suite() -> Result<Report> {
    let mut report = Report::new("littlewood");
    let two = ComplexifiedExponent::constant(2.0)?;
    let sq = AnalyticFunction::monomial(c(1.0, 0.0), 2);
    for (i, (big_f, _)) in littlewood_pairs()?.iter().enumerate() {
        let mut r = littlewood_check(big_f, &sq, &two, &LITTLEWOOD_RADII)?;
        r.title = format!("p=2 z^2 F{i}");
        report.extend(r);
    }
    let p = cosine_exponent(1.0)?;
    for (i, (big_f, omega)) in littlewood_pairs()?.iter().enumerate() {
        let mut r = littlewood_check(big_f, omega, &p, &LITTLEWOOD_RADII)?;
        r.title = format!("harmonic pair {i}");
        report.extend(r);
    }
    let phi = AnalyticFunction::mobius(c(0.5, 0.0))?;
    let suite = [kernel(c(0.0, 0.0))?, kernel(c(0.9, 0.0))?, kernel(c(0.99, 0.0))?];
    let mut comp = composition_check(&phi, &two, BergmanWeight::area(), &suite)?;
    let q = comp.row("max ratio / jacobian bound").map(|r| r.value).unwrap_or(f64::NAN);
    comp.push(Row::ge("within factor 2 of jacobian bound", q, 0.5, 0.0));
    report.extend(comp);
    Ok(report)
}

/// Condition (v) for the limsup exponent (bound 2) and the sqrt-log
/// exponent (unbounded), and condition (vii) with a = 2 for both.
pub fn radial_conditions_suite() -> Result<Report> {
    let mut report = Report::new("radial conditions");
    let limsup = VariableExponent::limsup(2.0, 4.0)?;
    let sqrt_log = VariableExponent::sqrt_log(2.0)?;
    let params = RadialEquivParams::new(2.0)?;
    let log_grid = params.clone().with_square_log_grid(8);

    let v = condition_v(&limsup, &params)?;
    report.push(Row::le("limsup (v) sup", v.sup_value, 2.0, 0.0).with_note("x = 2^-k, k <= 30"));
    report.push(Row::flag("limsup (v) bounded", v.passed));
    let v = condition_v(&sqrt_log, &log_grid)?;
    report.push(Row::ge("sqrt-log (v) sup", v.sup_value, DEFAULT_THRESHOLD, 0.0).with_note("x = e^-k^2, k <= 8"));
    report.push(Row::flag("sqrt-log (v) unbounded", v.unbounded));

    let vii = condition_vii(&limsup, &params)?;
    report.push(Row::info("limsup (vii) sup", vii.sup_value));
    report.push(Row::flag("limsup (vii) bounded", vii.passed));
    let vii = condition_vii(&sqrt_log, &params)?;
    report.push(Row::info("sqrt-log (vii) sup", vii.sup_value));
    report.push(Row::flag("sqrt-log (vii) growing", vii.growing));
    Ok(report)
}

/// 100 seeded random step functions f, each tested against 100 random
/// increasing step functions g, and the failure of (b) for (1−t)^{-1/2}.
pub fn incmult_suite(seed: u64) -> Result<Report> {
    incmult_report(seed, 100, 100)
}

pub fn incmult_report(seed: u64, functions: usize, trials: usize) -> Result<Report> {
    let mut report = Report::new("incmult");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for i in 0..functions {
        let f = StepFunction::random(&mut rng);
        let reps = inc_mult_check(&Weight::Step(f), trials, seed.wrapping_add(i as u64 + 1))?;
        let (cc, a) = (&reps[1], &reps[2]);
        report.push(Row::flag(format!("f{i} C_c finite"), cc.sup_value.is_finite()));
        report.push(Row::le(format!("f{i} sup fg/g"), a.sup_value, a.threshold, 0.0).with_note("bound 2 C_c + 1e-9"));
        if a.threshold > 0.0 {
            worst = worst.max(a.sup_value / a.threshold);
        }
    }
    report.push(Row::info("max ratio to bound", worst));
    let f = Weight::from_gap_fn("(1-t)^(-1/2)", |t| t.powf(-0.5), Vec::new());
    let b = &inc_mult_check(&f, 1, seed)?[0];
    report.push(Row::flag("(1-t)^(-1/2) (b) unbounded", b.unbounded));
    report.push(Row::ge("(1-t)^(-1/2) (b) sup", b.sup_value, DEFAULT_THRESHOLD, 0.0));
    Ok(report)
}

/// Closed forms, ρ(f/‖f‖) = 1 and homogeneity over both function suites.
pub fn luxemburg_suite() -> Result<Report> {
    let norms = Norms::default();
    let area = BergmanWeight::area();
    let two = VariableExponent::constant(2.0)?;
    let mut report = Report::new("luxemburg");
    let three = AnalyticFunction::constant(c(3.0, 0.0));
    report.push(Row::eq("|3|", norms.luxemburg_norm(&three, &two, area)?, 3.0, 1e-8));
    let z = AnalyticFunction::monomial(c(1.0, 0.0), 1);
    report.push(Row::eq("|z| in A^2", norms.luxemburg_norm(&z, &two, area)?, 0.5f64.sqrt(), 1e-8));

    let exponents = [VariableExponent::log_decay(2.0, 1.0, 0.5)?, cosine_exponent(0.5)?.p().clone()];
    let mut functions = hat_function_suite()?;
    functions.extend(decomposition_function_suite()?);
    for p in &exponents {
        for (i, f) in functions.iter().enumerate() {
            let n = norms.luxemburg_norm(f, p, area)?;
            let m = norms.bergman_modular(&f.scale(c(1.0 / n, 0.0)), p, area)?;
            report.push(Row::eq(format!("{} f{i} modular", p.label()), m.value, 1.0, MODULAR_TOL));
            let n5 = norms.luxemburg_norm(&f.scale(c(5.0, 0.0)), p, area)?;
            report.push(Row::eq(format!("{} f{i} homogeneity", p.label()), n5 / (5.0 * n), 1.0, MODULAR_TOL));
        }
    }
    Ok(report)
}
