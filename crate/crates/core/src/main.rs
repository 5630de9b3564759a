use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use shapley_discount::counterexample::{
    build_instance, solve_sequence, SequenceKind, DEFAULT_TRUNCATION,
};
use shapley_discount::report::{
    auto_method, discount_grid, limits_table, run_checks, sequence_summary, sweep,
    write_sequence_csv, write_sweep_csv, Scale, VerifyOptions,
};
use shapley_discount::solver::solve;
use shapley_discount::{Error, Method, Result, SolveConfig, SystemInstance};

#[derive(Parser)]
#[command(
    version,
    about = "Solve discounted two-state max-min systems and explore the vanishing-discount limit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one system and print the result as JSON.
    Solve {
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        /// Instance file; defaults to the built-in non-convergence example.
        #[arg(long)]
        instance: Option<PathBuf>,
        /// value-iteration, monotone or policy-enum (default: by discount).
        #[arg(long)]
        method: Option<Method>,
        /// Truncation level of the built-in example.
        #[arg(long = "k", visible_alias = "K", default_value_t = DEFAULT_TRUNCATION)]
        k: u32,
    },
    /// Solve on a grid of discounts and write CSV, largest discount first.
    Sweep {
        #[arg(long, allow_negative_numbers = true)]
        lambda_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        lambda_max: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
        /// log or linear.
        #[arg(long, default_value = "log")]
        scale: Scale,
        #[arg(long)]
        instance: Option<PathBuf>,
        #[arg(long)]
        method: Option<Method>,
        #[arg(long = "k", visible_alias = "K", default_value_t = DEFAULT_TRUNCATION)]
        k: u32,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the built-in example along one of the two discount sequences.
    Sequence {
        /// lambda or mu.
        #[arg(long)]
        kind: SequenceKind,
        #[arg(long, default_value_t = 2)]
        n_min: u32,
        #[arg(long, default_value_t = 8)]
        n_max: u32,
        #[arg(long = "k", visible_alias = "K", default_value_t = DEFAULT_TRUNCATION)]
        k: u32,
        /// CSV output file; with it the summary goes to stdout, without it
        /// the summary follows the CSV as `#` comment lines.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the limit constants of the probe policies.
    Limits,
    /// Run the invariant suite; exit status 1 if any check fails.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn load_instance(path: Option<&Path>, k: u32) -> Result<SystemInstance> {
    match path {
        Some(p) => SystemInstance::load(p),
        None => build_instance(k),
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve {
            lambda,
            instance,
            method,
            k,
        } => {
            if !(lambda > 0.0 && lambda.is_finite()) {
                return Err(Error::Usage(format!(
                    "--lambda must be positive and finite, got {lambda}"
                )));
            }
            let inst = load_instance(instance.as_deref(), k)?;
            let method = method.unwrap_or_else(|| auto_method(lambda));
            let r = solve(&inst, lambda, &SolveConfig::new(method))?;
            let doc = json!({
                "lambda": lambda,
                "u1": r.u.u1,
                "u2": r.u.u2,
                "residual1": r.residual1,
                "residual2": r.residual2,
                "policy": r.policy,
                "method": r.method,
                "iterations": r.iterations,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Command::Sweep {
            lambda_min,
            lambda_max,
            points,
            scale,
            instance,
            method,
            k,
            out,
        } => {
            let grid = discount_grid(lambda_min, lambda_max, points, scale)?;
            let inst = load_instance(instance.as_deref(), k)?;
            let rows = sweep(&inst, &grid, method)?;
            write_sweep_csv(&rows, output(out.as_deref())?)?;
        }
        Command::Sequence {
            kind,
            n_min,
            n_max,
            k,
            out,
        } => {
            let rows =
                solve_sequence(kind, n_min, n_max, k, &SolveConfig::new(Method::PolicyEnum))?;
            let summary = sequence_summary(kind, k, &rows);
            match out {
                Some(p) => {
                    write_sequence_csv(&rows, output(Some(&p))?)?;
                    print!("{summary}");
                }
                None => {
                    let mut w = output(None)?;
                    write_sequence_csv(&rows, &mut w)?;
                    write!(w, "{summary}")?;
                    w.flush()?;
                }
            }
        }
        Command::Limits => print!("{}", limits_table()),
        Command::Verify { seed } => {
            let summary = run_checks(&VerifyOptions::new(seed));
            print!("{}", summary.render());
            if !summary.all_passed() {
                for o in summary.failed() {
                    eprintln!("check {} failed: {}", o.name, o.detail);
                }
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
