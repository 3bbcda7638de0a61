//! Run configuration and the exponent, function and measure formats.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Deserialize;
use serde_json::Value;
use vxs_core::analytic::{carleson_test_function, AnalyticFunction, KernelParams};
use vxs_core::carleson::{Atom, DiscreteMeasure};
use vxs_core::exponent::{ComplexifiedExponent, ExponentKind, VariableExponent};

/// Invalid input; maps to exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<vxs_core::Error> for InputError {
    fn from(e: vxs_core::Error) -> Self {
        Self(e.to_string())
    }
}

pub type InputResult<T> = std::result::Result<T, InputError>;

fn bad<T>(msg: impl Into<String>) -> InputResult<T> {
    Err(InputError(msg.into()))
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// K in the unbounded detector.
    pub threshold: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<String>,
    #[serde(alias = "exponent", alias = "exponentSpec")]
    pub p: Option<Value>,
    #[serde(alias = "function", alias = "functionSpec")]
    pub f: Option<Value>,
    pub omega: Option<Value>,
    pub phi: Option<Value>,
    pub alpha: Option<f64>,
    pub check: Option<String>,
    pub suite: Option<String>,
    pub q: Option<f64>,
    pub a: Option<f64>,
    pub radii: Option<Vec<f64>>,
    pub k_max: Option<u32>,
    pub grid: Option<String>,
    pub trials: Option<usize>,
    pub measure: Option<Value>,
    pub necessity: Option<bool>,
    pub tolerances: Option<Tolerances>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn parse(text: &str) -> InputResult<(Self, Value)> {
        let value: Value = serde_json::from_str(text).map_err(|e| InputError(format!("config is not valid JSON: {e}")))?;
        let cfg: RunConfig =
            serde_json::from_value(value.clone()).map_err(|e| InputError(format!("invalid config: {e}")))?;
        Ok((cfg, value))
    }

    pub fn exponent(&self) -> InputResult<VariableExponent> {
        match &self.p {
            Some(v) => parse_exponent(v),
            None => bad("missing exponent \"p\""),
        }
    }

    pub fn complexified(&self) -> InputResult<ComplexifiedExponent> {
        complexify(&self.exponent()?)
    }

    pub fn threshold(&self) -> Option<f64> {
        self.tolerances.as_ref().and_then(|t| t.threshold)
    }
}

pub fn complexify(p: &VariableExponent) -> InputResult<ComplexifiedExponent> {
    if let Some(q) = p.constant_value() {
        return Ok(ComplexifiedExponent::constant(q)?);
    }
    if p.kind() != ExponentKind::HarmonicExtended {
        return bad(format!("{} is not harmonic; a harmonic exponent is needed here", p.label()));
    }
    Ok(p.conjugate()?)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExponentObject {
    kind: Option<String>,
    formula: Option<String>,
    q: Option<f64>,
    #[serde(rename = "P")]
    big_p: Option<f64>,
    c: Option<f64>,
    r0: Option<f64>,
    a0: Option<f64>,
    /// (n, a_n, b_n) for a_n r^n cos nθ + b_n r^n sin nθ.
    coefficients: Option<Vec<(usize, f64, f64)>>,
    #[serde(rename = "M")]
    m: Option<usize>,
}

fn need(v: Option<f64>, key: &str, id: &str) -> InputResult<f64> {
    v.ok_or_else(|| InputError(format!("exponent {id:?} needs parameter {key}")))
}

fn build_exponent(id: &str, o: &ExponentObject) -> InputResult<VariableExponent> {
    let p = match id {
        "const" | "constant" => VariableExponent::constant(need(o.q, "q", id)?)?,
        "limsup" => VariableExponent::limsup(need(o.q, "q", id)?, need(o.big_p, "P", id)?)?,
        "sqrtlog" => VariableExponent::sqrt_log(need(o.q, "q", id)?)?,
        "logdecay" => {
            VariableExponent::log_decay(need(o.q, "q", id)?, o.c.unwrap_or(1.0), o.r0.unwrap_or(0.5))?
        }
        "lineargap" => VariableExponent::linear_gap(need(o.q, "q", id)?)?,
        "harmonic" => {
            let a0 = need(o.a0.or(o.q), "a0", id)?;
            let terms = o.coefficients.clone().unwrap_or_default();
            match o.m {
                None => VariableExponent::harmonic_from_trig(a0, &terms)?,
                Some(m) => VariableExponent::harmonic_extend(
                    move |t| {
                        terms
                            .iter()
                            .fold(a0, |acc, &(n, a, b)| acc + a * (n as f64 * t).cos() + b * (n as f64 * t).sin())
                    },
                    m,
                )?,
            }
        }
        other => return bad(format!("unknown exponent formula {other:?}")),
    };
    Ok(p)
}

/// "const 3", "limsup q=2 P=4", "sqrtlog q=2", "logdecay q=2 c=1 r0=0.5",
/// "lineargap q=2", "harmonic 2 cos1=0.5 sin2=0.3 [M=64]", or the object
/// form {kind|formula, q, P, c, r0, a0, coefficients, M}.
pub fn parse_exponent(v: &Value) -> InputResult<VariableExponent> {
    match v {
        Value::String(s) => {
            let mut tokens = s.split_whitespace();
            let id = tokens.next().ok_or_else(|| InputError("empty exponent string".into()))?.to_ascii_lowercase();
            let mut o = ExponentObject {
                kind: None,
                formula: None,
                q: None,
                big_p: None,
                c: None,
                r0: None,
                a0: None,
                coefficients: None,
                m: None,
            };
            let mut terms = Vec::new();
            for tok in tokens {
                let (key, val) = match tok.split_once('=') {
                    Some((k, v)) => (k, v),
                    None => ("", tok),
                };
                let x: f64 = val.parse().map_err(|_| InputError(format!("bad number {val:?} in exponent {s:?}")))?;
                match key {
                    "" | "q" => o.q = Some(x),
                    "P" | "p" => o.big_p = Some(x),
                    "c" | "C" => o.c = Some(x),
                    "r0" => o.r0 = Some(x),
                    "M" | "m" => o.m = Some(x as usize),
                    k if k.starts_with("cos") || k.starts_with("sin") => {
                        let n: usize = k[3..].parse().map_err(|_| InputError(format!("bad mode {k:?}")))?;
                        let (a, b) = if k.starts_with("cos") { (x, 0.0) } else { (0.0, x) };
                        terms.push((n, a, b));
                    }
                    k => return bad(format!("unknown exponent parameter {k:?} in {s:?}")),
                }
            }
            if !terms.is_empty() {
                o.coefficients = Some(terms);
            }
            build_exponent(&id, &o)
        }
        Value::Object(_) => {
            let o: ExponentObject =
                serde_json::from_value(v.clone()).map_err(|e| InputError(format!("invalid exponent: {e}")))?;
            let id = o
                .formula
                .clone()
                .or_else(|| o.kind.clone())
                .or_else(|| o.coefficients.as_ref().map(|_| "harmonic".to_string()))
                .ok_or_else(|| InputError("exponent object needs \"formula\" or \"kind\"".into()))?;
            build_exponent(&id.to_ascii_lowercase(), &o)
        }
        Value::Number(n) => Ok(VariableExponent::constant(n.as_f64().unwrap_or(f64::NAN))?),
        _ => bad("exponent must be a string, number or object"),
    }
}

/// A complex number as a JSON number or [re, im].
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
enum Cx {
    Real(f64),
    Pair([f64; 2]),
}

impl From<Cx> for Complex64 {
    fn from(c: Cx) -> Self {
        match c {
            Cx::Real(x) => Complex64::new(x, 0.0),
            Cx::Pair([a, b]) => Complex64::new(a, b),
        }
    }
}

fn cv(v: &[Cx]) -> Vec<Complex64> {
    v.iter().map(|&c| c.into()).collect()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
enum FunctionObject {
    Constant { value: Cx },
    Monomial { k: u32, #[serde(default = "one")] c: Cx },
    Polynomial { coeffs: Vec<Cx> },
    Roots { #[serde(default = "one")] lead: Cx, roots: Vec<Cx> },
    Rational { num: Vec<Cx>, den: Vec<Cx> },
    Kernel { lambda: Cx, #[serde(default = "two")] a: f64, #[serde(default = "two")] q: f64 },
    Blaschke { zeros: Vec<Cx> },
    Mobius { lambda: Cx },
    OneMinusPower { gamma: f64 },
    Testfn { z0: Cx },
    Composition { outer: Value, inner: Value },
    Product { factors: Vec<Value> },
    Scale { c: Cx, f: Value },
}

fn one() -> Cx {
    Cx::Real(1.0)
}

fn two() -> f64 {
    2.0
}

/// "const 3 [im]", "z^k", "z", or the object form {type, ...}. Test
/// functions need the complexified exponent `p`.
pub fn parse_function(v: &Value, p: Option<&ComplexifiedExponent>) -> InputResult<AnalyticFunction> {
    if let Value::String(s) = v {
        let t = s.trim();
        let mut tokens = t.split_whitespace();
        let head = tokens.next().unwrap_or("");
        let nums: Vec<f64> = tokens
            .map(|x| x.parse::<f64>().map_err(|_| InputError(format!("bad number {x:?} in function {s:?}"))))
            .collect::<InputResult<_>>()?;
        return match head {
            "const" | "constant" if !nums.is_empty() && nums.len() <= 2 => Ok(AnalyticFunction::constant(
                Complex64::new(nums[0], nums.get(1).copied().unwrap_or(0.0)),
            )),
            "z" if nums.is_empty() => Ok(AnalyticFunction::monomial(Complex64::new(1.0, 0.0), 1)),
            h if h.starts_with("z^") && nums.is_empty() => {
                let k: u32 = h[2..].parse().map_err(|_| InputError(format!("bad power in {s:?}")))?;
                Ok(AnalyticFunction::monomial(Complex64::new(1.0, 0.0), k))
            }
            _ => bad(format!("unknown function shorthand {s:?}")),
        };
    }
    if let Value::Number(n) = v {
        return Ok(AnalyticFunction::constant(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)));
    }
    let o: FunctionObject =
        serde_json::from_value(v.clone()).map_err(|e| InputError(format!("invalid function: {e}")))?;
    Ok(match o {
        FunctionObject::Constant { value } => AnalyticFunction::constant(value.into()),
        FunctionObject::Monomial { k, c } => AnalyticFunction::monomial(c.into(), k),
        FunctionObject::Polynomial { coeffs } => AnalyticFunction::polynomial(cv(&coeffs)),
        FunctionObject::Roots { lead, roots } => AnalyticFunction::from_roots(lead.into(), cv(&roots)),
        FunctionObject::Rational { num, den } => AnalyticFunction::rational(cv(&num), cv(&den))?,
        FunctionObject::Kernel { lambda, a, q } => AnalyticFunction::kernel(KernelParams::new(lambda.into(), a, q)?)?,
        FunctionObject::Blaschke { zeros } => AnalyticFunction::blaschke(&cv(&zeros))?,
        FunctionObject::Mobius { lambda } => AnalyticFunction::mobius(lambda.into())?,
        FunctionObject::OneMinusPower { gamma } => AnalyticFunction::one_minus_power(gamma),
        FunctionObject::Testfn { z0 } => match p {
            Some(p) => carleson_test_function(p, z0.into())?,
            None => return bad("testfn needs a harmonic exponent \"p\""),
        },
        FunctionObject::Composition { outer, inner } => parse_function(&outer, p)?.compose(&parse_function(&inner, p)?),
        FunctionObject::Product { factors } => {
            let mut acc = AnalyticFunction::constant(Complex64::new(1.0, 0.0));
            for f in &factors {
                acc = acc.product(&parse_function(f, p)?);
            }
            acc
        }
        FunctionObject::Scale { c, f } => parse_function(&f, p)?.scale(c.into()),
    })
}

/// "area-grid <rings> <angles>", "point <re> <im> <weight>", a path to a
/// CSV file of "re, im, weight" rows (relative to the config file), or a
/// JSON list of {re, im, weight} objects or [re, im, weight] triples.
pub fn parse_measure(v: &Value, base: &Path) -> InputResult<DiscreteMeasure> {
    match v {
        Value::String(s) => {
            let tokens: Vec<&str> = s.split_whitespace().collect();
            let nums = |xs: &[&str]| -> InputResult<Vec<f64>> {
                xs.iter().map(|x| x.parse::<f64>().map_err(|_| InputError(format!("bad number {x:?} in measure {s:?}")))).collect()
            };
            match tokens.first().copied() {
                Some("area-grid") if tokens.len() == 3 => {
                    let n = nums(&tokens[1..])?;
                    Ok(DiscreteMeasure::area_grid(n[0] as usize, n[1] as usize)?)
                }
                Some("point") if tokens.len() == 4 => {
                    let n = nums(&tokens[1..])?;
                    Ok(DiscreteMeasure::point(Complex64::new(n[0], n[1]), n[2])?)
                }
                _ => read_measure_csv(&base.join(s)),
            }
        }
        Value::Array(items) => {
            let mut atoms = Vec::with_capacity(items.len());
            for item in items {
                let (re, im, w) = match item {
                    Value::Array(t) if t.len() == 3 => (t[0].as_f64(), t[1].as_f64(), t[2].as_f64()),
                    Value::Object(m) => {
                        if let Some(k) = m.keys().find(|k| !matches!(k.as_str(), "re" | "im" | "weight")) {
                            return bad(format!("unknown atom field {k:?}"));
                        }
                        (
                            m.get("re").and_then(Value::as_f64),
                            m.get("im").and_then(Value::as_f64).or(Some(0.0)),
                            m.get("weight").and_then(Value::as_f64),
                        )
                    }
                    _ => (None, None, None),
                };
                match (re, im, w) {
                    (Some(re), Some(im), Some(weight)) => atoms.push(Atom { at: Complex64::new(re, im), weight }),
                    _ => return bad(format!("invalid atom {item}")),
                }
            }
            Ok(DiscreteMeasure::new(atoms)?)
        }
        _ => bad("measure must be a string or a list of atoms"),
    }
}

pub fn read_measure_csv(path: &PathBuf) -> InputResult<DiscreteMeasure> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| InputError(format!("cannot read measure file {}: {e}", path.display())))?;
    let mut atoms = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        let fields: Vec<Option<f64>> = rec.iter().map(|x| x.parse().ok()).collect();
        match fields.as_slice() {
            [Some(re), Some(im), Some(w)] => atoms.push(Atom {
                at: Complex64::new(*re, *im),
                weight: *w,
            }),
            _ if i == 0 => continue,
            _ => return bad(format!("{}: row {} is not \"re, im, weight\"", path.display(), i + 1)),
        }
    }
    Ok(DiscreteMeasure::new(atoms)?)
}
