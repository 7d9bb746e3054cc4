//! `latcc`: batch front end for the comparator-circuit toolkit.
//!
//! Exit status: 0 for true/accept/success, 1 for false/reject, 2 for usage
//! and validation errors.

mod commands;
mod dot;
mod load;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "latcc", version, about = "Comparator circuits over finite posets and lattices")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args)]
pub struct Global {
    /// Machine-readable output (same as `--format json`).
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Seed for randomized test vectors.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print the evaluation trace.
    #[arg(long, global = true)]
    pub trace: bool,
    /// Print posets and circuit DAGs as Graphviz DOT.
    #[arg(long, global = true)]
    pub dot: bool,
}

impl Global {
    pub fn json(&self) -> bool {
        self.json || self.format == Format::Json
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Posets and lattices.
    #[command(subcommand)]
    Poset(commands::PosetCmd),
    /// Partition lattices and their indicator formulas.
    #[command(subcommand)]
    Pi(commands::PiCmd),
    /// Comparator circuits.
    #[command(subcommand)]
    Cc(commands::CcCmd),
    /// Transformations into comparator circuits and back.
    #[command(subcommand)]
    Compile(commands::CompileCmd),
    /// Checks against identity ledgers.
    #[command(subcommand)]
    Verify(commands::VerifyCmd),
}

/// What a command produced.
pub enum Report {
    /// A yes/no answer with its explanation.
    Verdict { ok: bool, text: String, json: Value },
    /// Informational output that is not a yes/no answer.
    Info { text: String, json: Value },
    /// A file body, printed verbatim in every format.
    Artifact(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Poset(c) => commands::poset(c, &cli.global),
        Cmd::Pi(c) => commands::pi(c, &cli.global),
        Cmd::Cc(c) => commands::cc(c, &cli.global),
        Cmd::Compile(c) => commands::compile(c, &cli.global),
        Cmd::Verify(c) => commands::verify(c, &cli.global),
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let json = cli.global.json();
    let (body, code) = match report {
        Report::Verdict { ok, text, json: v } => (if json { v.to_string() } else { text }, if ok { 0 } else { 1 }),
        Report::Info { text, json: v } => (if json { v.to_string() } else { text }, 0),
        Report::Artifact(body) => (body, 0),
    };
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(body.as_bytes());
    if !body.ends_with('\n') {
        let _ = out.write_all(b"\n");
    }
    ExitCode::from(code)
}
