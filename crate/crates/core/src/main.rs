use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use torees::poly::PrimeField;
use torees::scenario::{parse_scenario, run_scenario, Report, RunOptions, Scenario, Task, TaskKind, SUITE_TAGS};

#[derive(Parser)]
#[command(name = "torees", version, about = "Toric symbolic Rees algebra workbench")]
struct Cli {
    /// Default degree bound for degree-by-degree checks.
    #[arg(long, global = true, value_name = "N")]
    max_degree: Option<usize>,
    /// Characteristic for F-purity tasks, overriding the scenario.
    #[arg(long = "char", global = true, value_name = "P")]
    characteristic: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Write zero for every timing field.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run { file: PathBuf },
    /// Run the built-in example suite.
    PaperExamples {
        /// Restrict to one tag (s3, s4, s6).
        #[arg(long)]
        only: Option<String>,
    },
}

fn input_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("torees: {message}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(p) = cli.characteristic {
        if p != 0 {
            if let Err(e) = PrimeField::new(p) {
                return input_error(e);
            }
        }
    }
    let options = RunOptions {
        characteristic: cli.characteristic,
        max_degree: cli.max_degree,
    };
    let scenario = match &cli.command {
        Command::Run { file } => {
            let text = match std::fs::read_to_string(file) {
                Ok(t) => t,
                Err(e) => return input_error(format!("{}: {e}", file.display())),
            };
            match parse_scenario(&text) {
                Ok(s) => s,
                Err(e) => return input_error(format!("{}: {e}", file.display())),
            }
        }
        Command::PaperExamples { only } => {
            if let Err(e) = check_filter(only.as_deref()) {
                return input_error(e);
            }
            Scenario {
                name: Some("paper-examples".into()),
                characteristic: None,
                rings: Vec::new(),
                divisors: Vec::new(),
                tasks: vec![Task {
                    line: 0,
                    source: match only {
                        Some(t) => format!("paper-examples --only {t}"),
                        None => "paper-examples".into(),
                    },
                    kind: TaskKind::PaperExamples { only: only.clone() },
                }],
            }
        }
    };
    let report = run_scenario(&scenario, &options);
    summarize(&report);
    let json = report.to_json(!cli.no_timing);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                return input_error(format!("{}: {e}", path.display()));
            }
        }
        None => println!("{json}"),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn check_filter(only: Option<&str>) -> torees::Result<()> {
    match only {
        Some(tag) if !SUITE_TAGS.contains(&tag) => Err(torees::Error::InvalidInput(format!(
            "unknown filter '{tag}'; valid filters: {}",
            SUITE_TAGS.join(", ")
        ))),
        _ => Ok(()),
    }
}

/// One line per task, and per suite check, on stderr.
fn summarize(report: &Report) {
    for t in &report.tasks {
        eprintln!("[{}] {} (line {}): {}", t.status, t.kind, t.line, t.task);
        if let Some(e) = &t.error {
            eprintln!("    error: {e}");
        }
        let checks = t.result.as_ref().and_then(|r| r.get("checks")).and_then(|c| c.as_array());
        for c in checks.into_iter().flatten() {
            let passed = c["passed"].as_bool().unwrap_or(false);
            eprintln!(
                "    {} {:<28} {:<60} {}",
                if passed { "PASS" } else { "FAIL" },
                c["id"].as_str().unwrap_or(""),
                c["location"].as_str().unwrap_or(""),
                c["detail"].as_str().unwrap_or("")
            );
        }
    }
}
