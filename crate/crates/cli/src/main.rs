mod config;
mod run;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde::Serialize;
use sha2::{Digest, Sha256};
use vxs_core::report::Row;

use config::RunConfig;
use run::{Command, Failure};

const MEASURE_HELP: &str = "\
Measures (carleson): \"area-grid <rings> <angles>\", \"point <re> <im> <weight>\", \
a CSV file of \"re, im, weight\" rows (path relative to the config), or a JSON list of \
{\"re\", \"im\", \"weight\"} objects or [re, im, weight] triples.";

/// Norms, integral means and structural checks for variable-exponent
/// Hardy and Bergman spaces.
#[derive(Debug, Parser)]
#[command(name = "vxs", version, after_help = MEASURE_HELP)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Overrides the seed in the config (default 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall time in the report; reports are then not reproducible.
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Serialize)]
struct Output<'a> {
    command: &'a str,
    inputs_digest: String,
    seed: u64,
    title: &'a str,
    passed: bool,
    results: &'a [Row],
    warnings: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time: Option<f64>,
}

fn digest(command: &str, config: &serde_json::Value, seed: u64) -> String {
    let mut h = Sha256::new();
    h.update(command.as_bytes());
    h.update([0]);
    h.update(config.to_string().as_bytes());
    h.update([0]);
    h.update(seed.to_le_bytes());
    hex::encode(h.finalize())
}

fn limit_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("VXS_MAX_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("VXS_MAX_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| format!("cannot configure thread pool: {e}"))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn fail(code: u8, msg: &str) -> ExitCode {
    eprintln!("vxs: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    if let Err(e) = limit_threads() {
        return fail(2, &e);
    }
    let text = match std::fs::read_to_string(&cli.config) {
        Ok(t) => t,
        Err(e) => return fail(2, &format!("cannot read {}: {e}", cli.config.display())),
    };
    let (cfg, raw) = match RunConfig::parse(&text) {
        Ok(x) => x,
        Err(e) => return fail(2, &e.0),
    };
    if let Some(c) = &cfg.command {
        if c != cli.command.name() {
            return fail(2, &format!("config is for command {c:?}, not {:?}", cli.command.name()));
        }
    }
    let seed = cli.seed.or(cfg.seed).unwrap_or(0);
    let base = cli.config.parent().map(Path::to_path_buf).unwrap_or_default();

    let start = Instant::now();
    let outcome = match run::run(cli.command, &cfg, seed, &base) {
        Ok(o) => o,
        Err(Failure::Input(m)) => return fail(2, &m),
        Err(Failure::Numerical(m)) => return fail(3, &m),
    };
    let wall_time = cli.timing.then(|| start.elapsed().as_secs_f64());
    let report = &outcome.report;
    let passed = report.passed();

    let text = match &outcome.csv {
        Some(csv) => csv.clone(),
        None => {
            let out = Output {
                command: cli.command.name(),
                inputs_digest: digest(cli.command.name(), &raw, seed),
                seed,
                title: &report.title,
                passed,
                results: &report.rows,
                warnings: &report.warnings,
                wall_time,
            };
            match serde_json::to_string_pretty(&out) {
                Ok(s) => s + "\n",
                Err(e) => return fail(3, &format!("cannot serialize report: {e}")),
            }
        }
    };
    if let Err(e) = emit(cli.out.as_deref(), &text) {
        return fail(2, &e);
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
