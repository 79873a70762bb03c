use std::io::Read;
use std::process::ExitCode;

use clap::Parser;
use fuchs_core::{ExponentClass, Rational};
use fuchs_kit::{Command, JobOptions, JobSpec, Suite};

/// Exact computations with regular singular differential modules over K[t, 1/t].
///
/// Inputs and outputs are JSON. Exit status is 0 on success, 1 on a domain
/// error and 2 on malformed input.
#[derive(Parser, Debug)]
#[command(name = "fuchs-kit", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,

    /// Input file, or inline JSON; read from stdin when absent.
    #[arg(long, short)]
    input: Option<String>,

    /// Comma-separated exponent classes, e.g. `0,1/2`.
    #[arg(long, value_delimiter = ',', value_parser = parse_class)]
    exponent_candidates: Option<Vec<ExponentClass>>,

    /// Laurent degree bound of the constant-form search.
    #[arg(long)]
    degree_bound: Option<i64>,

    /// Largest root-of-unity order searched for eigenvalues.
    #[arg(long, env = "FUCHS_KIT_CONDUCTOR_BOUND")]
    conductor_bound: Option<u32>,

    #[arg(long)]
    seed: Option<u64>,

    #[arg(long, value_enum)]
    suite: Option<Suite>,

    /// Cases per property for `verify`.
    #[arg(long)]
    cases: Option<usize>,

    /// Largest rank generated by `verify`.
    #[arg(long)]
    max_dim: Option<usize>,

    /// Print single-line JSON.
    #[arg(long)]
    json: bool,
}

fn parse_class(s: &str) -> Result<ExponentClass, String> {
    let r: Rational = s.parse().map_err(|e: fuchs_core::Error| e.to_string())?;
    Ok(ExponentClass::of(&r))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut input = cli.input;
    if input.is_none() && cli.command != Command::Verify {
        let mut buf = String::new();
        if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
            eprintln!("cannot read stdin: {e}");
            return ExitCode::from(2);
        }
        input = Some(buf);
    }
    let job = JobSpec {
        command: cli.command,
        input,
        options: JobOptions {
            exponent_candidates: cli.exponent_candidates,
            degree_bound: cli.degree_bound,
            conductor_bound: cli.conductor_bound,
            seed: cli.seed,
            suite: cli.suite,
            cases: cli.cases,
            max_dim: cli.max_dim,
            compact: cli.json,
        },
    };
    let out = fuchs_kit::run(&job);
    print!("{}", out.stdout);
    ExitCode::from(out.code as u8)
}
