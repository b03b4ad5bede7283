//! Command-line front end.
//!
//! Every subcommand writes one JSON report (to stdout or `--out`) of the shape
//! `{"status": "ok"|"ambiguous"|"error", "command": …, <payload>, "residuals": {…}}`.
//! Exit codes: `0` ok, `1` ambiguous classification or failed validation, `2`
//! usage or input parse errors (message on stderr).

pub mod json;
mod commands;
mod sampler_args;

pub use commands::Command;

use clap::Parser;
use serde_json::{Map, Value};
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

/// Command-line arguments.
#[derive(Debug, Parser)]
#[command(name = "hypersphere", version, about = "Pointwise symmetries of indefinite affine hyperspheres")]
pub struct Cli {
    /// Tolerance of the subcommand's main check (each subcommand documents its default).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for per-point evaluation.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

/// Outcome status of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Ambiguous,
    Error,
}

impl Status {
    fn name(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Ambiguous => "ambiguous",
            Status::Error => "error",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Ambiguous | Status::Error => 1,
        }
    }
}

/// A subcommand's report.
#[derive(Debug, Clone)]
pub struct Report {
    pub status: Status,
    pub command: &'static str,
    pub payload: Map<String, Value>,
    pub residuals: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report { status: Status::Ok, command, payload: Map::new(), residuals: BTreeMap::new() }
    }

    /// Adds a payload field.
    pub fn put(&mut self, key: &str, value: impl serde::Serialize) {
        let v = serde_json::to_value(value).expect("serializable payload");
        self.payload.insert(key.to_string(), v);
    }

    /// Adds every field of a serialized object to the payload.
    pub fn merge(&mut self, value: impl serde::Serialize) {
        if let Value::Object(m) = serde_json::to_value(value).expect("serializable payload") {
            self.payload.extend(m);
        }
    }

    /// Records a residual and downgrades the status when it exceeds `tol`.
    pub fn residual(&mut self, name: &str, value: f64, tol: f64) {
        self.residuals.insert(name.to_string(), value);
        if !(value <= tol) && self.status == Status::Ok {
            self.status = Status::Error;
        }
    }

    /// Marks the report as failed with a typed error.
    pub fn fail(&mut self, status: Status, error: &dyn std::fmt::Debug, message: String) {
        self.status = status;
        self.put("error", error_name(error));
        self.put("message", message);
    }

    pub fn to_value(&self) -> Value {
        let mut m = self.payload.clone();
        m.insert("status".into(), Value::String(self.status.name().into()));
        m.insert("command".into(), Value::String(self.command.into()));
        m.insert("residuals".into(), serde_json::to_value(&self.residuals).expect("residuals"));
        Value::Object(m)
    }
}

/// Variant name of an error enum from its `Debug` output.
fn error_name(e: &dyn std::fmt::Debug) -> String {
    let s = format!("{e:?}");
    let end = s.find(|c: char| !c.is_alphanumeric() && c != '_').unwrap_or(s.len());
    s[..end].to_string()
}

/// Parses `args` (including the program name), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let outcome = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| commands::execute(&cli)),
            Err(e) => Err(anyhow::anyhow!("cannot start {n} threads: {e}")),
        },
        None => commands::execute(&cli),
    };
    match outcome {
        Ok(report) => {
            let text = json::render(&report.to_value());
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(anyhow::Error::from),
                None => stdout.write_all(text.as_bytes()).map_err(anyhow::Error::from),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: cannot write report: {e}");
                return 2;
            }
            report.status.exit_code()
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            2
        }
    }
}
