//! Batch front end behind the `floquet-lab` binary.
//!
//! A run reads a config file, computes one task and writes result tables with
//! a `meta` block. Failures leave an `error.json` record in the output
//! directory and a nonzero exit status.

mod config;
mod output;
mod tasks;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

pub use config::{
    parse_config, BasisConfig, EchoMethod, Format, ModelConfig, OutputConfig, ProfileKind, RunConfig, Task, TaskConfig,
    DEFAULT_OUTPUT_DIR,
};
pub use output::{Cell, Table};
pub use tasks::{run_task, TaskOutput};

use crate::error::{Error, Result};

pub const EXIT_RUNTIME: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_ORACLE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "floquet-lab", version, about = "Kicked-rotor Floquet spectra and chaos diagnostics")]
pub struct Args {
    /// Run configuration (`key = value` lines).
    pub config: PathBuf,
    /// Output directory; overrides `path` in the config.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Output format; overrides `format` in the config.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for parallel sections.
    #[arg(long, env = "FLOQUET_LAB_THREADS")]
    pub threads: Option<usize>,
    /// Ensemble seed; overrides `seed` in the config.
    #[arg(long)]
    pub seed: Option<u64>,
}

/// What a successful run wrote.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub files: Vec<String>,
    pub failed_checks: Vec<String>,
}

impl RunConfig {
    /// Applies command-line overrides.
    pub fn with_overrides(mut self, output: Option<PathBuf>, format: Option<Format>, seed: Option<u64>) -> Self {
        if let Some(p) = output {
            self.output.path = p;
        }
        if let Some(f) = format {
            self.output.format = f;
        }
        if let Some(s) = seed {
            self.task.seed = s;
        }
        self
    }
}

/// Metadata block shared by every file of a run.
fn meta(cfg: &RunConfig, out: &TaskOutput) -> Value {
    let mut m = serde_json::Map::new();
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("config".into(), serde_json::to_value(cfg).expect("config serializes"));
    m.insert("series".into(), json!(out.series));
    m.insert("edge_contaminated".into(), json!(out.edge_contaminated()));
    for (k, v) in &out.extra {
        m.insert(k.clone(), v.clone());
    }
    Value::Object(m)
}

/// Computes the configured task and writes its files under `cfg.output.path`.
pub fn run(cfg: &RunConfig) -> Result<RunSummary> {
    let out = run_task(cfg)?;
    let meta = meta(cfg, &out);
    let files = output::write_outputs(&cfg.output.path, cfg.output.format, &out.tables, &meta, &out.sidecars)?;
    Ok(RunSummary { files, failed_checks: out.failed_checks })
}

fn error_record(err: &Error, cfg: Option<&RunConfig>) -> Value {
    json!({
        "error": err,
        "message": err.to_string(),
        "version": env!("CARGO_PKG_VERSION"),
        "config": cfg.map(|c| serde_json::to_value(c).expect("config serializes")),
    })
}

fn write_error(dir: &Path, err: &Error, cfg: Option<&RunConfig>) {
    let path = dir.join("error.json");
    let written = fs::create_dir_all(dir)
        .map_err(|e| e.to_string())
        .and_then(|_| fs::write(&path, output::pretty(&error_record(err, cfg))).map_err(|e| e.to_string()));
    if let Err(e) = written {
        eprintln!("floquet-lab: could not write {}: {e}", path.display());
    }
}

fn configure_threads(threads: Option<usize>) {
    if let Some(n) = threads.filter(|&n| n > 0) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("floquet-lab: thread pool already configured: {e}");
        }
    }
}

/// Entry point of the binary.
pub fn main() -> ExitCode {
    let args = Args::parse();
    configure_threads(args.threads);
    let fallback_dir = args.output.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR));

    let text = match fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            let err = Error::Io { path: args.config.display().to_string(), message: e.to_string() };
            eprintln!("floquet-lab: {err}");
            write_error(&fallback_dir, &err, None);
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let cfg = match parse_config(&text) {
        Ok(c) => c.with_overrides(args.output, args.format, args.seed),
        Err(err) => {
            eprintln!("floquet-lab: {}: {err}", args.config.display());
            write_error(&fallback_dir, &err, None);
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    match run(&cfg) {
        Ok(summary) => {
            for f in &summary.files {
                println!("{}", cfg.output.path.join(f).display());
            }
            if summary.failed_checks.is_empty() {
                ExitCode::SUCCESS
            } else {
                eprintln!("floquet-lab: oracle checks failed: {}", summary.failed_checks.join(", "));
                ExitCode::from(EXIT_ORACLE)
            }
        }
        Err(err) => {
            eprintln!("floquet-lab: {err}");
            write_error(&cfg.output.path, &err, Some(&cfg));
            ExitCode::from(EXIT_RUNTIME)
        }
    }
}
