//! `projiso`: batch front-end for the decision procedures.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use projiso::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "projiso",
    version,
    about = "Exact decision procedures for projective schemes over Q"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Worker threads; defaults to the available cores.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true)]
    pub spair_cap: Option<u64>,
    #[arg(long, global = true)]
    pub minor_cap: Option<u64>,
    #[arg(long, global = true)]
    pub enum_stage_cap: Option<u32>,
    #[arg(long, global = true)]
    pub candidate_cap: Option<u64>,
    #[arg(long, global = true)]
    pub wall_seconds: Option<f64>,
    /// Also write the report to this file.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced Gröbner basis of a scheme's ideal.
    Gb {
        input: PathBuf,
        /// grevlex, lex or elim:K
        #[arg(long, default_value = "grevlex")]
        order: String,
    },
    /// Eliminates the first K variables.
    Eliminate {
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Saturation by the irrelevant ideal, or by the given polynomials.
    Saturate {
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        by: Vec<String>,
    },
    Hilbpoly {
        input: PathBuf,
    },
    Chi {
        input: PathBuf,
    },
    /// One-dimensional components with degrees and generic lengths.
    Components {
        input: PathBuf,
    },
    /// Riemann-Roch check for O(n) over a range of twists.
    Rrcheck {
        input: PathBuf,
        #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
        to: i64,
    },
    Gotzmann {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        r: usize,
    },
    /// Chart of a Hilbert scheme, of `P^{r-1}` or relative to a scheme.
    Hilbchart(ChartArgs),
    /// Universal family over a chart.
    Family(ChartArgs),
    Projequiv {
        x: PathBuf,
        y: PathBuf,
    },
    /// Certifies a graph `Γ ⊂ X × Y` as the graph of an isomorphism.
    Graphiso {
        x: PathBuf,
        y: PathBuf,
        graph: PathBuf,
    },
    /// Emptiness of the iso scheme with graph Hilbert polynomial P.
    Isop {
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        poly: String,
    },
    /// Isomorphism decision for schemes of dimension at most one.
    Iso1dim {
        x: PathBuf,
        y: PathBuf,
        #[arg(long, default_value = "hybrid")]
        mode: String,
    },
    /// Enumeration semi-decision.
    Isosearch {
        x: PathBuf,
        y: PathBuf,
    },
    /// Global generation of the sheaf of a graded module on X.
    Gg {
        x: PathBuf,
        module: PathBuf,
    },
    Veryample {
        x: PathBuf,
        module: PathBuf,
    },
    /// Re-checks a certificate.
    Verify {
        x: PathBuf,
        y: PathBuf,
        certificate: PathBuf,
    },
}

#[derive(Args, Debug)]
pub struct ChartArgs {
    #[arg(long)]
    pub poly: String,
    /// Number of ambient variables; taken from --scheme when given.
    #[arg(long)]
    pub r: Option<usize>,
    /// Monomials of K, comma separated in x1..xr; defaults to the last P(d) monomials.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<String>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub scheme: Option<PathBuf>,
}

/// Result of a command: the payload and whether a verdict was reached.
pub struct Report {
    pub body: Value,
    pub decided: bool,
}

impl Report {
    pub fn decided(body: Value) -> Self {
        Report {
            body,
            decided: true,
        }
    }

    pub fn undecided(body: Value) -> Self {
        Report {
            body,
            decided: false,
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Gb { .. } => "gb",
        Command::Eliminate { .. } => "eliminate",
        Command::Saturate { .. } => "saturate",
        Command::Hilbpoly { .. } => "hilbpoly",
        Command::Chi { .. } => "chi",
        Command::Components { .. } => "components",
        Command::Rrcheck { .. } => "rrcheck",
        Command::Gotzmann { .. } => "gotzmann",
        Command::Hilbchart(_) => "hilbchart",
        Command::Family(_) => "family",
        Command::Projequiv { .. } => "projequiv",
        Command::Graphiso { .. } => "graphiso",
        Command::Isop { .. } => "isop",
        Command::Iso1dim { .. } => "iso1dim",
        Command::Isosearch { .. } => "isosearch",
        Command::Gg { .. } => "gg",
        Command::Veryample { .. } => "veryample",
        Command::Verify { .. } => "verify",
    }
}

fn emit(name: &str, body: Value, output: Option<&PathBuf>) {
    let mut obj = serde_json::Map::new();
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("command".into(), json!(name));
    match body {
        Value::Object(m) => obj.extend(m),
        other => {
            obj.insert("result".into(), other);
        }
    }
    let text = serde_json::to_string_pretty(&Value::Object(obj)).expect("json values serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    if let Some(path) = output {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("cannot write {}: {e}", path.display());
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let budget = match config::budget(&cli.global) {
        Ok(b) => b,
        Err(e) => {
            emit(name, json!({ "error": e.to_string() }), None);
            return ExitCode::from(1);
        }
    };
    if let Some(n) = cli.global.workers {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .is_err()
        {
            eprintln!("worker pool already initialized");
        }
    }
    let output = cli.global.output.clone();
    match commands::run(&cli.command, &budget) {
        Ok(r) => {
            emit(name, r.body, output.as_ref());
            ExitCode::from(if r.decided { 0 } else { 2 })
        }
        Err(Error::Budget { resource, cap }) => {
            let body = json!({
                "verdict": "UNDECIDED",
                "budget": { "resource": resource, "cap": cap },
            });
            emit(name, body, output.as_ref());
            ExitCode::from(2)
        }
        Err(e) => {
            emit(name, json!({ "error": e.to_string() }), output.as_ref());
            ExitCode::from(1)
        }
    }
}
