use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use rilab_core::catalog;
use rilab_core::experiment::{
    render_text, run, Check, ExperimentConfig, ExperimentReport, RunError, Timings,
};

mod selftest;

const EXIT_FAILURE: u8 = 1;
const EXIT_SCHEMA: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "rilab", version, about = "Residual intersection experiments over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run experiments from TOML configs or `example:<id>` shorthands.
    Run {
        /// Config files, or catalog ids such as `example:mystery-module`.
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Checks for `example:` inputs (comma separated).
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// Seed for `example:` inputs.
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory; overrides the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the JSON report to stdout instead of the table.
        #[arg(long)]
        json: bool,
    },
    /// List catalog examples.
    List,
    /// Show an example's description and source.
    Describe { id: String },
    /// Run quick internal consistency checks.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            let w = catalog::list().iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in catalog::list() {
                println!("{:<w$}  {}", c.name, c.title);
            }
            ExitCode::SUCCESS
        }
        Command::Describe { id } => match catalog::describe(&id) {
            Ok(text) => {
                println!("{text}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_SCHEMA)
            }
        },
        Command::Selftest => {
            if selftest::run_all() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILURE)
            }
        }
        Command::Run { inputs, checks, seed, out, json } => run_command(&inputs, &checks, seed, out.as_deref(), json),
    }
}

struct Job {
    label: String,
    config: ExperimentConfig,
}

fn load_job(input: &str, checks: &[String], seed: Option<u64>) -> Result<Job, String> {
    if let Some(id) = input.strip_prefix("example:") {
        let checks = checks
            .iter()
            .map(|c| parse_check(c))
            .collect::<Result<Vec<_>, _>>()?;
        let text = format!("[source]\nkind = \"catalog\"\nexample = {:?}\n", id);
        let mut config: ExperimentConfig = toml::from_str(&text).map_err(|e| e.to_string())?;
        if !checks.is_empty() {
            config.checks = checks;
        }
        config.seed = seed;
        return Ok(Job { label: sanitize(id), config });
    }
    let text = std::fs::read_to_string(input).map_err(|e| format!("{input}: {e}"))?;
    let config: ExperimentConfig = toml::from_str(&text).map_err(|e| format!("{input}: {e}"))?;
    let label = config.name.clone().unwrap_or_else(|| {
        Path::new(input).file_stem().map_or("experiment".into(), |s| s.to_string_lossy().into_owned())
    });
    Ok(Job { label: sanitize(&label), config })
}

fn parse_check(name: &str) -> Result<Check, String> {
    Check::ALL
        .into_iter()
        .find(|c| c.name() == name.trim())
        .ok_or_else(|| format!("unknown check {name:?}"))
}

fn sanitize(s: &str) -> String {
    s.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

fn run_command(inputs: &[String], checks: &[String], seed: Option<u64>, out: Option<&Path>, json: bool) -> ExitCode {
    let mut jobs = Vec::new();
    for input in inputs {
        match load_job(input, checks, seed) {
            Ok(mut job) => {
                if let Err(e) = job.config.budget.apply_env(|k| std::env::var(k).ok()) {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_SCHEMA);
                }
                jobs.push(job);
            }
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_SCHEMA);
            }
        }
    }
    let results: Vec<(String, Result<(ExperimentReport, Timings), RunError>)> =
        jobs.par_iter().map(|j| (j.label.clone(), run(&j.config))).collect();

    let (mut schema, mut budget, mut io) = (false, false, false);
    for ((label, result), job) in results.into_iter().zip(&jobs) {
        let (report, timings) = match result {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {label}: {e}");
                schema = true;
                continue;
            }
        };
        if json {
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
        } else {
            print!("{}", render_text(&report));
        }
        let dir = out.map(Path::to_path_buf).or_else(|| job.config.output.dir.as_ref().map(PathBuf::from));
        if let Some(dir) = dir {
            if let Err(e) = write_outputs(&dir, &label, &report, &timings, &job.config) {
                eprintln!("error: writing {label}: {e}");
                io = true;
            }
        }
        if report.partial {
            eprintln!("{label}: budget exhausted, report is partial");
            budget = true;
        }
    }
    // a schema error outranks budget exhaustion
    match (schema, budget, io) {
        (true, _, _) => ExitCode::from(EXIT_SCHEMA),
        (_, true, _) => ExitCode::from(EXIT_BUDGET),
        (_, _, true) => ExitCode::from(EXIT_FAILURE),
        _ => ExitCode::SUCCESS,
    }
}

fn write_outputs(
    dir: &Path,
    label: &str,
    report: &ExperimentReport,
    timings: &Timings,
    config: &ExperimentConfig,
) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    if config.output.json {
        let body = serde_json::to_string_pretty(report).expect("serializable");
        write_atomic(&dir.join(format!("{label}.json")), &(body + "\n"))?;
    }
    if config.output.text {
        write_atomic(&dir.join(format!("{label}.txt")), &render_text(report))?;
    }
    let t = serde_json::to_string_pretty(timings).expect("serializable");
    write_atomic(&dir.join(format!("{label}.timings.json")), &(t + "\n"))
}

/// Write to a sibling temporary file, then rename over the target.
fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)
}
