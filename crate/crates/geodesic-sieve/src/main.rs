//! Thin command-line front end; the library does the work.

use clap::{Args, Parser, Subcommand};
use geodesic_sieve::pipeline::{
    render_report, run_oracle_diff, run_verify, RunConfig, RunReport, Stages,
};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "geodesic-sieve", version, about = "Checks that geodetic Cayley graphs of finite groups are complete graphs or odd cycles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Filter and search a corpus of groups; exit 0 when the conjecture
    /// holds, 2 on a counterexample, 1 on errors or timeouts.
    Verify(JobArgs),
    /// Cross-check the search against the brute-force oracle on small
    /// groups; exit 0 on agreement, 2 on a mismatch.
    OracleDiff(JobArgs),
    /// Aggregate saved verify reports into a summary table.
    Report {
        /// Report JSON files produced by `verify --out`.
        paths: Vec<PathBuf>,
        /// Output format: text or csv.
        #[arg(long, default_value = "text")]
        format: String,
    },
}

#[derive(Args)]
struct JobArgs {
    /// Corpus specs, e.g. "cyclic:3..41,odd", "semidirect:7,3,2",
    /// "table:path.json", "builtin:desk". Repeatable.
    #[arg(long, required = true)]
    corpus: Vec<String>,
    /// Stage selection: filter, search, or all.
    #[arg(long, default_value = "all")]
    stages: String,
    /// Override the recorded distance-3 collision cap.
    #[arg(long)]
    collision_limit: Option<usize>,
    /// Largest order for subgroup-lattice computations.
    #[arg(long, default_value_t = 512)]
    lattice_cap: usize,
    /// Largest order for automorphism-group computations.
    #[arg(long, default_value_t = 512)]
    auto_cap: usize,
    /// Largest candidate count for the brute-force oracle.
    #[arg(long, default_value_t = 20)]
    oracle_cap: usize,
    /// Per-group time budget in seconds.
    #[arg(long, default_value_t = 600)]
    budget_secs: u64,
    /// Parallel workers (across groups only).
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Write the full JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Console output format: json, csv or text.
    #[arg(long, default_value = "text")]
    format: String,
}

impl JobArgs {
    fn to_config(&self) -> Result<RunConfig, String> {
        Ok(RunConfig {
            corpus: self.corpus.clone(),
            stages: Stages::parse(&self.stages)?,
            lattice_cap: self.lattice_cap,
            auto_cap: self.auto_cap,
            oracle_cap: self.oracle_cap,
            budget_secs: self.budget_secs,
            collision_limit: self.collision_limit,
            workers: self.workers.max(1),
        })
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run() -> Result<u8, String> {
    match Cli::parse().command {
        Command::Verify(args) => {
            let config = args.to_config()?;
            let (report, code) = run_verify(&config)?;
            emit(&args, &report, |r, csv, w| render_report(std::slice::from_ref(r), csv, w))?;
            let s = &report.summary;
            eprintln!(
                "{} groups: {} hold, {} counterexamples, {} incomplete, {} errors",
                s.total, s.conjecture_holds, s.counterexamples, s.incomplete, s.errors
            );
            Ok(code as u8)
        }
        Command::OracleDiff(args) => {
            let config = args.to_config()?;
            let (report, code) = run_oracle_diff(&config)?;
            let text = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
            if let Some(path) = &args.out {
                std::fs::write(path, &text).map_err(|e| e.to_string())?;
            }
            if args.format == "json" {
                println!("{text}");
            } else {
                for e in &report.entries {
                    println!(
                        "{:<28} {:>6} candidates {:>3}  {:?}",
                        e.group, e.order, e.candidates, e.status
                    );
                }
                eprintln!(
                    "{} agree, {} disagree, {} skipped (over cap)",
                    report.agreements, report.disagreements, report.skipped
                );
            }
            Ok(code as u8)
        }
        Command::Report { paths, format } => {
            let mut reports = Vec::new();
            for p in &paths {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| format!("{}: {e}", p.display()))?;
                let r: RunReport = serde_json::from_str(&text)
                    .map_err(|e| format!("{}: {e}", p.display()))?;
                reports.push(r);
            }
            let mut stdout = std::io::stdout().lock();
            render_report(&reports, format == "csv", &mut stdout).map_err(|e| e.to_string())?;
            Ok(0)
        }
    }
}

fn emit(
    args: &JobArgs,
    report: &RunReport,
    render: impl Fn(&RunReport, bool, &mut std::io::StdoutLock<'_>) -> std::io::Result<()>,
) -> Result<(), String> {
    let json = serde_json::to_string_pretty(report).map_err(|e| e.to_string())?;
    if let Some(path) = &args.out {
        std::fs::write(path, &json).map_err(|e| e.to_string())?;
    }
    let mut stdout = std::io::stdout().lock();
    match args.format.as_str() {
        "json" => {
            writeln!(stdout, "{json}").map_err(|e| e.to_string())?;
        }
        "csv" => render(report, true, &mut stdout).map_err(|e| e.to_string())?,
        _ => render(report, false, &mut stdout).map_err(|e| e.to_string())?,
    }
    Ok(())
}
