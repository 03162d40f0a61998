//! Scenario-driven verification driver: parses a scenario file, runs
//! the selected suites in name order, and emits a deterministic report.
//! Exit codes: 0 all checks pass, 1 a check failed, 2 parse error,
//! 3 invariant violation.

mod report;
mod scenario;
mod suites;

use clap::{Parser, Subcommand};
use report::Report;
use scenario::{LoadError, ALL_SUITES};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "galmod", version, about = "Exact verification suites for Galois module structure at desk scale")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the suites selected by a scenario file
    Run {
        /// Scenario file (TOML)
        file: PathBuf,
        /// Run a single suite instead of the scenario's selection
        #[arg(long)]
        suite: Option<String>,
        /// Override the scenario seed
        #[arg(long)]
        seed: Option<u64>,
        /// Write the report to a file as well as standard output
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a machine-readable key-value export
        #[arg(long)]
        kv: Option<PathBuf>,
    },
    /// List scenario files in a directory
    List {
        /// Directory to scan
        #[arg(long, default_value = "scenarios")]
        dir: PathBuf,
    },
    /// Explain what a suite verifies
    Describe {
        /// Suite name
        suite: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            file,
            suite,
            seed,
            out,
            kv,
        } => run(file, suite, seed, out, kv),
        Command::List { dir } => list(dir),
        Command::Describe { suite } => describe(&suite),
    }
}

fn run(
    file: PathBuf,
    suite: Option<String>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    kv: Option<PathBuf>,
) -> ExitCode {
    let sc = match scenario::load(&file) {
        Ok(sc) => sc,
        Err(e @ (LoadError::Io(_) | LoadError::Parse(_))) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
        Err(e @ LoadError::Invariant(_)) => {
            eprintln!("{e}");
            return ExitCode::from(3);
        }
    };
    let seed = seed.unwrap_or(sc.file.seed);
    let mut selected: Vec<String> = match suite {
        Some(s) => vec![s],
        None if sc.file.suites.is_empty() => {
            ALL_SUITES.iter().map(|s| s.to_string()).collect()
        }
        None => sc.file.suites.clone(),
    };
    for s in &selected {
        if !ALL_SUITES.contains(&s.as_str()) {
            eprintln!("invariant violation: unknown suite {s:?}");
            return ExitCode::from(3);
        }
    }
    // fixed order: suites run and report in name order
    selected.sort();
    selected.dedup();
    let suites = selected
        .iter()
        .map(|name| suites::run_suite(name, &sc, seed))
        .collect();
    let report = Report {
        scenario: sc.file.name.clone(),
        version: sc.file.version,
        seed,
        suites,
    };
    let rendered = report.render();
    print!("{rendered}");
    if let Some(path) = out {
        if let Err(e) = std::fs::write(&path, &rendered) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if let Some(path) = kv {
        if let Err(e) = std::fs::write(&path, report.render_kv()) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn list(dir: PathBuf) -> ExitCode {
    let entries = match std::fs::read_dir(&dir) {
        Ok(e) => e,
        Err(_) => {
            // an empty or missing corpus directory lists nothing
            return ExitCode::SUCCESS;
        }
    };
    let mut names: Vec<String> = Vec::new();
    for entry in entries.flatten() {
        let path = entry.path();
        if path.extension().and_then(|e| e.to_str()) != Some("toml") {
            continue;
        }
        match scenario::load(&path) {
            Ok(sc) => names.push(format!(
                "{}  (version {}, suites: {})",
                sc.file.name,
                sc.file.version,
                if sc.file.suites.is_empty() {
                    "all".to_string()
                } else {
                    sc.file.suites.join(", ")
                }
            )),
            Err(e) => names.push(format!("{}  (unloadable: {e})", path.display())),
        }
    }
    names.sort();
    for n in names {
        println!("{n}");
    }
    ExitCode::SUCCESS
}

fn describe(suite: &str) -> ExitCode {
    match suites::describe(suite) {
        Some(text) => {
            println!("suite {suite}");
            println!("{text}");
            ExitCode::SUCCESS
        }
        None => {
            eprintln!("unknown suite {suite:?}; known suites: {}", ALL_SUITES.join(", "));
            ExitCode::from(3)
        }
    }
}
