use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use heronion::harness::{
    cmd_areas, cmd_expand, cmd_mobius, cmd_verify, error_exit_code, AreasArgs, ExpandArgs, Format, MobiusArgs, RunReport,
    Suite, VerifyArgs, EXIT_USAGE,
};
use heronion::{Error, Family};

#[derive(Parser)]
#[command(name = "heronion", version, about = "Generalized Heron polynomials and polygon areas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named area polynomial and print or save it.
    Expand {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        parity: i32,
        #[arg(long, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the areas of inscribed polygons with the given sides.
    Areas {
        /// Comma-separated side lengths.
        #[arg(long, value_delimiter = ',', required = true)]
        sides: Vec<f64>,
        #[arg(long, default_value = "cyclic")]
        family: Family,
        /// Relative residual accepted from the area polynomial.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Seconds allowed for the optional multiplicity check.
        #[arg(long, default_value_t = 600)]
        budget: u64,
        /// Add wall-clock timings to the report.
        #[arg(long)]
        timings: bool,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the radius polynomial M (cyclic) or M' (semicyclic).
    Mobius {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "cyclic")]
        family: Family,
        /// Integer side lengths for a polynomial in r2 alone.
        #[arg(long, value_delimiter = ',')]
        sides: Option<Vec<i64>>,
    },
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("HERONION_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("HERONION_THREADS must be a positive integer, got `{v}`"))?;
    if n == 0 {
        return Err("HERONION_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn finish(report: &RunReport, stdout: &str) -> ExitCode {
    print!("{stdout}");
    eprint!("{}", report.summary());
    ExitCode::from(report.exit_code() as u8)
}

fn run(cli: Cli, argv: Vec<String>) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Expand { family, n, parity, format, out } => {
            let (report, body) = cmd_expand(&ExpandArgs { family, n, parity, format, out: out.clone() }, argv)?;
            Ok(finish(&report, if out.is_some() { "" } else { &body }))
        }
        Command::Areas { sides, family, tol, format } => {
            let (report, body) = cmd_areas(&AreasArgs { sides, family, tol, format }, argv)?;
            Ok(finish(&report, &body))
        }
        Command::Verify { suite, trials, seed, budget, timings, out } => {
            let args = VerifyArgs { suite, trials, seed, budget: Duration::from_secs(budget), timings };
            let mut report = cmd_verify(&args, argv)?;
            let json = report.to_json() + "\n";
            match out {
                Some(path) => {
                    report.outputs.push(path.display().to_string());
                    std::fs::write(&path, report.to_json() + "\n")
                        .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
                    Ok(finish(&report, ""))
                }
                None => Ok(finish(&report, &json)),
            }
        }
        Command::Mobius { n, family, sides } => {
            let (report, body) = cmd_mobius(&MobiusArgs { n, family, sides }, argv)?;
            Ok(finish(&report, &body))
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    if let Err(msg) = init_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    match run(cli, argv) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_exit_code(&e) as u8)
        }
    }
}
