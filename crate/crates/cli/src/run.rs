use std::path::Path;

use clap::ValueEnum;
use num_complex::Complex64;
use vxs_core::analytic::AnalyticFunction;
use vxs_core::carleson::{
    box_condition_sup, default_embedding_suite, default_h_grid, default_theta_grid, embedding_sup, necessity_trend,
};
use vxs_core::equivalence::{
    composition_check, condition_v, condition_vi, condition_vii, condition_viii, hat_equivalence_check,
    inc_mult_check, littlewood_check, Condition, ConditionReport, HatEquivalenceOptions, RadialEquivParams, Weight,
};
use vxs_core::exponent::{cauchy_riemann_residual, log_holder_estimate, radial_log_holder_estimate};
use vxs_core::numerics::BergmanWeight;
use vxs_core::report::{Report, Row};
use vxs_core::spaces::{dyadic_radii, Norms};
use vxs_core::verify::{self, Suite, LITTLEWOOD_RADII};

use crate::config::{complexify, parse_function, parse_measure, InputError, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Norm,
    Mean,
    Equiv,
    Carleson,
    Littlewood,
    Verify,
    Construct,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::Norm => "norm",
            Self::Mean => "mean",
            Self::Equiv => "equiv",
            Self::Carleson => "carleson",
            Self::Littlewood => "littlewood",
            Self::Verify => "verify",
            Self::Construct => "construct",
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Numerical(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Self::Input(e.0)
    }
}

impl From<vxs_core::Error> for Failure {
    fn from(e: vxs_core::Error) -> Self {
        use vxs_core::Error as E;
        match e {
            E::Accuracy { .. } | E::Bracket { .. } | E::Evaluation(_) | E::Singularity(_) => {
                Self::Numerical(e.to_string())
            }
            _ => Self::Input(e.to_string()),
        }
    }
}

type RunResult<T> = std::result::Result<T, Failure>;

pub struct Outcome {
    pub report: Report,
    /// "r,mean" rows for the mean command.
    pub csv: Option<String>,
}

fn weight(cfg: &RunConfig) -> RunResult<BergmanWeight> {
    Ok(BergmanWeight::new(cfg.alpha.unwrap_or(0.0))?)
}

fn function(cfg: &RunConfig, key: &str, v: Option<&serde_json::Value>) -> RunResult<AnalyticFunction> {
    let v = v.ok_or_else(|| Failure::Input(format!("missing function \"{key}\"")))?;
    let p = cfg.p.as_ref().and_then(|_| cfg.complexified().ok());
    Ok(parse_function(v, p.as_ref())?)
}

fn radii(cfg: &RunConfig) -> RunResult<Vec<f64>> {
    match &cfg.radii {
        Some(r) if r.is_empty() => Err(Failure::Input("empty radius list".into())),
        Some(r) => Ok(r.clone()),
        None => Ok(dyadic_radii(cfg.k_max.unwrap_or(20))),
    }
}

pub fn run(command: Command, cfg: &RunConfig, seed: u64, base: &Path) -> RunResult<Outcome> {
    let report = match command {
        Command::Norm => norm(cfg)?,
        Command::Mean => return mean(cfg),
        Command::Equiv => equiv(cfg, seed)?,
        Command::Carleson => carleson(cfg, base)?,
        Command::Littlewood => littlewood(cfg)?,
        Command::Verify => {
            let suite: Suite = cfg.suite.as_deref().unwrap_or("all").parse()?;
            verify::run_suite(suite, seed)?
        }
        Command::Construct => construct(cfg)?,
    };
    Ok(Outcome { report, csv: None })
}

fn norm(cfg: &RunConfig) -> RunResult<Report> {
    let p = cfg.exponent()?;
    let f = function(cfg, "f", cfg.f.as_ref())?;
    let w = weight(cfg)?;
    let norms = Norms::default();
    let mut report = Report::new(format!("norm {} p={} alpha={}", f.label(), p.label(), w.alpha()));
    if w.is_hardy() {
        let h = norms.hardy_norm(&f, &p, &radii(cfg)?)?;
        if let Some(warning) = &h.warning {
            report.warn(warning.clone());
        }
        report.push(Row::info("norm", h.lim_norm).with_note("mean at the last radius"));
        report.push(Row::info("sup norm", h.sup_norm));
        report.push(Row::info("sup / lim", h.ratio()));
        return Ok(report);
    }
    let n = norms.luxemburg_norm(&f, &p, w)?;
    report.push(Row::info("norm", n));
    if n > 0.0 && n.is_finite() {
        let m = norms.bergman_modular(&f.scale(Complex64::new(1.0 / n, 0.0)), &p, w)?;
        report.push(Row::eq("modular at norm", m.value, 1.0, 1e-6));
    }
    Ok(report)
}

fn mean(cfg: &RunConfig) -> RunResult<Outcome> {
    let p = cfg.exponent()?;
    let f = function(cfg, "f", cfg.f.as_ref())?;
    let norms = Norms::default();
    let mut report = Report::new(format!("mean {} p={}", f.label(), p.label()));
    let mut csv = String::from("r,mean\n");
    let mut prev: Option<f64> = None;
    for r in radii(cfg)? {
        let m = norms.integral_mean(&f, &p, r)?;
        csv.push_str(&format!("{r},{m}\n"));
        report.push(Row::info(format!("r={r}"), m));
        if let (Some(q), Some(prev)) = (p.constant_value(), prev) {
            if q >= 1.0 {
                report.push(Row::ge(format!("r={r} nondecreasing"), m, prev, 1e-9));
            }
        }
        prev = Some(m);
    }
    Ok(Outcome { report, csv: Some(csv) })
}

fn condition_rows(report: &mut Report, c: &ConditionReport) {
    for (x, v) in c.grid.iter().zip(&c.values) {
        report.push(Row::info(format!("{} x={x}", c.condition.name()), *v));
    }
    report.push(
        Row::le(format!("{} sup", c.condition.name()), c.sup_value, c.threshold, 0.0)
            .with_note(format!("witness {}", c.witness)),
    );
    report.push(Row::flag(format!("{} bounded", c.condition.name()), !c.unbounded).with_note(if c.growing {
        "last values growing"
    } else {
        ""
    }));
}

fn equiv(cfg: &RunConfig, seed: u64) -> RunResult<Report> {
    let check = cfg.check.as_deref().unwrap_or("v").trim().to_ascii_lowercase();
    let p = cfg.exponent()?;
    if check == "hat" {
        let f = function(cfg, "f", cfg.f.as_ref())?;
        let opts = HatEquivalenceOptions {
            holder_constant: p.log_holder_constant(),
            ..HatEquivalenceOptions::default()
        };
        return Ok(hat_equivalence_check(&f, &p, weight(cfg)?, opts)?);
    }
    let q = cfg.q.unwrap_or(p.p_minus());
    let mut params = RadialEquivParams::new(q)?.with_a(cfg.a.unwrap_or(2.0));
    if let Some(t) = cfg.threshold() {
        params.threshold = t;
    }
    params = match cfg.grid.as_deref().unwrap_or("combined") {
        "combined" => params.with_combined_grid(8),
        "dyadic" => params,
        "square-log" => params.with_square_log_grid(8),
        other => return Err(Failure::Input(format!("unknown grid {other:?}; use combined, dyadic or square-log"))),
    };
    params.validate()?;
    let mut report = Report::new(format!("equiv {check} p={} q={q}", p.label()));
    if check == "incmult" {
        let w = Weight::exponent(&p, q)?;
        for c in inc_mult_check(&w, cfg.trials.unwrap_or(100), seed)? {
            if c.condition == Condition::IncmultA {
                report.push(Row::le("incmult-a sup fg/g", c.sup_value, c.threshold, 0.0).with_note("bound 2 C_c + 1e-9"));
                report.push(Row::flag("incmult-a passed", c.passed));
            } else {
                condition_rows(&mut report, &c);
            }
        }
        return Ok(report);
    }
    let c = match check.parse::<Condition>()? {
        Condition::V => condition_v(&p, &params)?,
        Condition::Vi => condition_vi(&p, &params)?,
        Condition::Vii => condition_vii(&p, &params)?,
        Condition::Viii => condition_viii(&p, &params, &[2.0, 3.0, 4.0])?,
        other => {
            return Err(Failure::Input(format!(
                "condition {} is checked through incmult; use check = \"incmult\"",
                other.name()
            )))
        }
    };
    condition_rows(&mut report, &c);
    Ok(report)
}

fn carleson(cfg: &RunConfig, base: &Path) -> RunResult<Report> {
    let p = cfg.complexified()?;
    let a = cfg.a.unwrap_or(2.0);
    let mu = match &cfg.measure {
        Some(v) => parse_measure(v, base)?,
        None => return Err(Failure::Input("missing \"measure\"".into())),
    };
    let k_max = cfg.k_max.unwrap_or(20);
    let mut report = Report::new(format!("carleson a={a} p={}", p.p().label()));
    report.extend(box_condition_sup(&mu, a, &default_h_grid(), &default_theta_grid())?);
    let suite = match &cfg.f {
        Some(v) => vec![parse_function(v, Some(&p))?],
        None => default_embedding_suite(&p)?,
    };
    report.extend(embedding_sup(&mu, &p, a, &suite, k_max)?);
    if cfg.necessity.unwrap_or(false) {
        let ks: Vec<u32> = (4..=12).collect();
        report.extend(necessity_trend(&p, a, &ks, k_max)?);
    }
    Ok(report)
}

fn littlewood(cfg: &RunConfig) -> RunResult<Report> {
    let p = cfg.complexified()?;
    if let Some(phi) = &cfg.phi {
        let phi = parse_function(phi, Some(&p))?;
        let suite = match &cfg.f {
            Some(v) => vec![parse_function(v, Some(&p))?],
            None => [0.0, 0.9, 0.99]
                .iter()
                .map(|&l| {
                    AnalyticFunction::kernel(vxs_core::analytic::KernelParams::new(Complex64::new(l, 0.0), 2.0, 2.0)?)
                })
                .collect::<vxs_core::Result<_>>()?,
        };
        return Ok(composition_check(&phi, &p, weight(cfg)?, &suite)?);
    }
    let big_f = function(cfg, "f", cfg.f.as_ref())?;
    let omega = function(cfg, "omega", cfg.omega.as_ref())?;
    let radii = cfg.radii.clone().unwrap_or_else(|| LITTLEWOOD_RADII.to_vec());
    Ok(littlewood_check(&big_f, &omega, &p, &radii)?)
}

fn construct(cfg: &RunConfig) -> RunResult<Report> {
    let p = cfg.exponent()?;
    let mut report = Report::new(format!("construct {}", p.label()));
    report.push(Row::info("p_minus", p.p_minus()));
    report.push(Row::info("p_plus", p.p_plus()));
    report.push(Row::info("log-holder estimate", log_holder_estimate(&p, 2048)?));
    report.push(Row::info("radial log-holder estimate", radial_log_holder_estimate(&p, 0.0, 4096)?));
    if let Some(c) = p.log_holder_constant() {
        report.push(Row::info("declared log-holder constant", c));
    }
    if let Ok(cp) = complexify(&p) {
        report.push(Row::info("tilde sup norm", cp.tilde_sup_norm()));
        let res = cauchy_riemann_residual(|z| cp.hat(z).re, |z| cp.hat(z).im, 0.99);
        report.push(Row::le("cauchy-riemann residual", res, 1e-8, 0.0));
    }
    for r in [0.0, 0.5, 0.9, 0.99, 0.999] {
        for (name, t) in [("0", 0.0), ("pi/2", std::f64::consts::FRAC_PI_2), ("pi", std::f64::consts::PI)] {
            report.push(Row::info(format!("p(r={r}, theta={name})"), p.eval(r, t)));
        }
    }
    Ok(report)
}
