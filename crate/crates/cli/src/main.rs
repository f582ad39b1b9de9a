mod report;
mod scenario;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qintegral::suites::{run_suite, SUITES};
use serde_json::{json, Value};

use report::{error_json, Settings};
use scenario::Scenario;

const EXIT_INPUT: u8 = 1;
const EXIT_FAIL: u8 = 2;

#[derive(Parser)]
#[command(name = "qintegral", version, about = "Exact quasi-integrals against deficient topological measures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of a scenario file and write report.json and distributions.csv.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Overrides the scenario's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Number of sampled sets for reconstruction and checks.
        #[arg(long, default_value_t = 20)]
        cases: usize,
        /// Write only this output; both are written when omitted.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Run a named suite and print its summary table.
    Suite {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

fn input_error(value: Value) -> ExitCode {
    eprintln!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    ExitCode::from(EXIT_INPUT)
}

fn io_error(path: &Path, e: std::io::Error) -> ExitCode {
    input_error(json!({"error": {"kind": "Io", "message": format!("{}: {e}", path.display())}}))
}

fn run(scenario_path: &Path, out: &Path, seed: Option<u64>, cases: usize, format: Option<Format>) -> ExitCode {
    let text = match fs::read_to_string(scenario_path) {
        Ok(t) => t,
        Err(e) => return io_error(scenario_path, e),
    };
    let scenario = match Scenario::from_json(&text) {
        Ok(s) => s,
        Err(e) => return input_error(error_json(&e)),
    };
    let settings = Settings { seed: seed.or(scenario.seed).unwrap_or(0), cases };
    let outcome = match report::run(&scenario, &settings) {
        Ok(o) => o,
        Err(e) => return input_error(error_json(&e)),
    };
    if let Err(e) = fs::create_dir_all(out) {
        return io_error(out, e);
    }
    let mut files = Vec::new();
    if format != Some(Format::Csv) {
        let body = serde_json::to_string_pretty(&outcome.report).expect("serializable") + "\n";
        files.push((out.join("report.json"), body));
    }
    if format != Some(Format::Json) {
        files.push((out.join("distributions.csv"), outcome.csv));
    }
    for (path, body) in files {
        if let Err(e) = fs::write(&path, body) {
            return io_error(&path, e);
        }
    }
    if outcome.failed {
        eprintln!("check task reported a Fail verdict; see {}", out.join("report.json").display());
        return ExitCode::from(EXIT_FAIL);
    }
    ExitCode::SUCCESS
}

fn suite(name: &str, seed: u64, cases: usize) -> ExitCode {
    let outcome = match run_suite(name, seed, cases) {
        Ok(o) => o,
        Err(e) => return input_error(error_json(&e)),
    };
    print!("{}", outcome.summary_table());
    if outcome.passed() {
        return ExitCode::SUCCESS;
    }
    let failures: Vec<_> = outcome.checks.iter().filter(|c| c.is_fail()).collect();
    println!("{}", serde_json::to_string_pretty(&json!({"failures": failures})).expect("serializable"));
    ExitCode::from(EXIT_FAIL)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return input_error(json!({"error": {"kind": "Usage", "message": e.to_string()}})),
    };
    match cli.command {
        Command::Run { scenario, out, seed, cases, format } => run(&scenario, &out, seed, cases, format),
        Command::Suite { name, seed, cases } => suite(&name, seed, cases),
    }
}
