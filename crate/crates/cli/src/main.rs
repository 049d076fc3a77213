//! `gbs`: decision procedures for GBS groups given as `.gbs` labeled graphs.
//!
//! Exit codes: 0 yes, 1 no, 2 error, 3 inconclusive, 64 usage.

mod commands;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gbs_core::SearchBudget;

#[derive(Parser)]
#[command(name = "gbs", version, about = "Decide questions about GBS groups given as labeled graphs")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Extra exponent room for forward label exploration.
    #[arg(long, visible_alias = "max-exponent-slack", global = true, value_name = "N")]
    budget_slack: Option<u32>,
    /// Longest path enumerated when looking for least witnesses.
    #[arg(long, visible_alias = "max-path-len", global = true, value_name = "N")]
    budget_paths: Option<usize>,
    /// Cap on states visited by one exploration.
    #[arg(long, global = true, value_name = "N")]
    max_states: Option<usize>,
    /// Cap on basis elements of the coverability and completion engines.
    #[arg(long, global = true, value_name = "N")]
    max_basis: Option<usize>,
    /// Cap on the number of graphs in the non-mobile slide closure.
    #[arg(long, global = true, value_name = "N")]
    snm_cap: Option<usize>,
    /// Worker threads for isomorphism branches.
    #[arg(long, global = true, value_name = "N", default_value_t = 1)]
    threads: usize,
}

impl Opts {
    fn budget(&self) -> SearchBudget {
        let d = SearchBudget::default();
        SearchBudget {
            exponent_slack: self.budget_slack.unwrap_or(d.exponent_slack),
            max_path_len: self.budget_paths.unwrap_or(d.max_path_len),
            max_states: self.max_states.unwrap_or(d.max_states),
            max_basis: self.max_basis.unwrap_or(d.max_basis),
            snm_cap: self.snm_cap.unwrap_or(d.snm_cap),
            threads: self.threads.max(1),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Normalize signs and collapse to a reduced graph.
    Reduce { file: PathBuf },
    /// Decide whether the group is ascending.
    Ascending { file: PathBuf },
    /// Search for a strict monotone cycle.
    Smc { file: PathBuf },
    /// Classify every edge as mobile or not.
    Mobile { file: PathBuf },
    /// Decide whether two graphs present isomorphic groups.
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// Write the certificate of a positive answer here.
        #[arg(long, value_name = "PATH")]
        cert: Option<PathBuf>,
    },
    /// List the graphs reachable by slides of non-mobile edges.
    Snm { file: PathBuf },
    /// Replay an isomorphism certificate from the given graph.
    VerifyCert { file: PathBuf, cert: PathBuf },
    /// Brute-force slide search between two graphs.
    OracleBfs {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        max_label: i64,
        #[arg(long, default_value_t = 10)]
        max_depth: usize,
    },
}

fn run(args: impl IntoIterator<Item = OsString>) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 64 } else { 0 };
        }
    };
    let budget = cli.opts.budget();
    let report = match &cli.command {
        Command::Reduce { file } => commands::reduce(file),
        Command::Ascending { file } => commands::ascending(file, &budget),
        Command::Smc { file } => commands::smc(file, &budget),
        Command::Mobile { file } => commands::mobile(file, &budget),
        Command::Iso { a, b, cert } => commands::iso(a, b, cert.as_deref(), &budget),
        Command::Snm { file } => commands::snm(file, &budget),
        Command::VerifyCert { file, cert } => commands::verify_cert(file, cert),
        Command::OracleBfs { a, b, max_label, max_depth } => commands::oracle_bfs(a, b, *max_label, *max_depth),
    };
    let report = report.unwrap_or_else(|failure| failure);
    report.emit(cli.opts.json, &budget);
    report.exit_code()
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}
