//! Command-line front end.
//!
//! Exit codes: 0 when every configured check passes, 1 on a property
//! violation or failed run, 2 on configuration errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hyproj::config::ScenarioConfig;
use hyproj::report::{write_csv, write_plot};
use hyproj::scenarios::{self, ScenarioError};
use hyproj::verify;

#[derive(Parser)]
#[command(name = "hyproj", about = "Hyperbolic projections of escaping orbits", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and report pass/fail.
    Run {
        /// Scenario id; see `hyproj list`.
        scenario: String,
        /// JSON config overriding the scenario's defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the per-iterate table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write a line chart of dist_w_pi against n as SVG.
        #[arg(long)]
        plot: Option<PathBuf>,
        /// Override the upper end of the iterate range.
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Enumerate the built-in scenarios.
    List,
    /// Run the full acceptance suite.
    Verify {
        /// Also write each criterion scenario's CSV into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const EXIT_VIOLATION: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { scenario, config, csv, plot, n_max } => {
            run(&scenario, config, csv, plot, n_max)
        }
        Command::List => {
            for s in scenarios::builtin() {
                println!("{:<24} {}", s.id, s.description);
            }
            ExitCode::SUCCESS
        }
        Command::Verify { out } => run_verify(out),
    }
}

fn config_err(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_CONFIG)
}

fn run(
    scenario: &str,
    config: Option<PathBuf>,
    csv: Option<PathBuf>,
    plot: Option<PathBuf>,
    n_max: Option<usize>,
) -> ExitCode {
    let mut cfg = match config {
        Some(path) => {
            let text = match std::fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => return config_err(format_args!("reading {}: {e}", path.display())),
            };
            match ScenarioConfig::from_json(&text) {
                Ok(c) => c,
                Err(e) => return config_err(e),
            }
        }
        None => match scenarios::default_config(scenario) {
            Some(c) => c,
            None => return config_err(format_args!("unknown scenario `{scenario}`")),
        },
    };
    if let Some(k) = n_max {
        cfg.n_range.1 = k;
        if let Err(e) = cfg.validate() {
            return config_err(e);
        }
    }

    let out = match scenarios::run(scenario, &cfg) {
        Ok(out) => out,
        Err(ScenarioError::Config(e)) => return config_err(e),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_VIOLATION);
        }
    };
    for note in &out.notes {
        println!("{}: {note}", out.scenario);
    }
    if let Some(path) = csv {
        if let Err(e) = write_csv(&out.rows, &path) {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_VIOLATION);
        }
    }
    if let Some(path) = plot {
        if let Err(e) = write_plot(&out.rows, &out.scenario, &path) {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_VIOLATION);
        }
    }
    if out.pass {
        println!("{}: PASS", out.scenario);
        ExitCode::SUCCESS
    } else {
        println!("{}: FAIL", out.scenario);
        ExitCode::from(EXIT_VIOLATION)
    }
}

fn run_verify(out_dir: Option<PathBuf>) -> ExitCode {
    let seed = verify::seed_from_env();
    let results = verify::run_all(seed);
    let mut all_pass = true;
    for r in &results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} [{status}] {} - {}", r.index, r.name, r.detail);
        all_pass &= r.pass;
    }

    if let Some(dir) = out_dir {
        if let Err(e) = std::fs::create_dir_all(&dir) {
            return config_err(format_args!("creating {}: {e}", dir.display()));
        }
        for s in scenarios::builtin() {
            let cfg = scenarios::default_config(s.id).expect("builtin config");
            match scenarios::run(s.id, &cfg) {
                Ok(out) => {
                    let path = dir.join(format!("{}.csv", s.id));
                    if let Err(e) = hyproj::report::write_csv(&out.rows, &path) {
                        eprintln!("error: {e}");
                        all_pass = false;
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    all_pass = false;
                }
            }
        }
    }

    if all_pass {
        println!("verify: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("verify: FAIL");
        ExitCode::from(EXIT_VIOLATION)
    }
}
