use std::process::ExitCode;

use clap::{Parser, Subcommand};
use osculant_cli::{cmd_betti_row, cmd_equations, cmd_verify, load_variety, Arithmetic, CliError, Format, RunConfig};
use osculant_core::geometry::{Method, DEFAULT_SEED};

#[derive(Parser)]
#[command(
    name = "osculant",
    version,
    about = "Equations and bottom syzygies of secant varieties of osculating varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// exact, or modp:P for a prime P >= 2^30 (results are labeled "filter").
    #[arg(long, global = true, default_value = "exact")]
    arithmetic: String,
    /// text, csv or json.
    #[arg(long, global = true, default_value = "text")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Basis of the degree q+1 equations of the q-secant of the k-osculating variety.
    Equations {
        /// Variety descriptor: a JSON file or an inline JSON object.
        variety: String,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// jets or sampling.
        #[arg(long, default_value = "jets")]
        method: String,
    },
    /// Dimensions of K_(p,q+1) of the ideal for p = 0..=p_max.
    BettiRow {
        variety: String,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        p_max: usize,
        #[arg(long, default_value = "jets")]
        method: String,
    },
    /// Runs a named verification suite (or all of them).
    Verify { suite: String },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let config = RunConfig {
        seed: cli.seed,
        arithmetic: cli.arithmetic.parse::<Arithmetic>()?,
        format: cli.format.parse::<Format>()?,
    };
    let method = |m: &str| m.parse::<Method>().map_err(CliError::from);
    match cli.command {
        Command::Equations {
            variety,
            q,
            k,
            method: m,
        } => {
            let r = cmd_equations(&load_variety(&variety)?, q, k, method(&m)?, &config)?;
            print!("{}", r.render(config.format));
            Ok(true)
        }
        Command::BettiRow {
            variety,
            q,
            k,
            p_max,
            method: m,
        } => {
            let r = cmd_betti_row(&load_variety(&variety)?, q, k, p_max, method(&m)?, &config)?;
            print!("{}", r.render(config.format));
            Ok(true)
        }
        Command::Verify { suite } => {
            let r = cmd_verify(&suite, &config)?;
            print!("{}", r.render(config.format));
            Ok(r.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
