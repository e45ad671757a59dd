//! `codiff`: check graded algebraic structures, compute their cohomology
//! and run the sign-identity suite from the command line.

mod commands;
mod report;

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use commands::{CoefficientsArg, ConventionArg, DirectionArg, FormArg, Settings, VariantArg, WhichArg};
use report::{Report, Verdict};

#[derive(Parser, Debug)]
#[command(name = "codiff", version, about = "Exact checks for Z2-graded Lie, A-infinity and L-infinity structures")]
struct Cli {
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Longest argument word examined (N).
    #[arg(short = 'N', long, global = true, default_value_t = 4)]
    bound: usize,
    /// Highest cochain degree or arity computed when none is given (K).
    #[arg(short = 'K', long, global = true, default_value_t = 4)]
    window: usize,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Run on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the defining relations, in both pictures.
    Verify { file: PathBuf },
    /// Ordinary cohomology.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value = "adjoint")]
        coefficients: CoefficientsArg,
    },
    /// Cohomology of the cochains that are cyclic for the inner product.
    CyclicCohomology {
        file: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Bracket of two cochains.
    Bracket {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "coder")]
        variant: VariantArg,
        /// Grading form; defaults to the parity form for symmetric cochains
        /// and the first Z2xZ form otherwise.
        #[arg(long, value_enum)]
        form: Option<FormArg>,
    },
    /// Classify an infinitesimal deformation.
    Deform {
        file: PathBuf,
        #[arg(long)]
        cochain: PathBuf,
        /// Parity of the deformation parameter.
        #[arg(long)]
        t_parity: Option<u8>,
    },
    /// Move a structure map across parity reversion.
    Transport {
        file: PathBuf,
        #[arg(long, value_enum)]
        direction: DirectionArg,
        #[arg(long, value_enum)]
        convention: Option<ConventionArg>,
    },
    /// Check the sign identities on random instances.
    SignsCheck {
        #[arg(long, value_enum, default_value = "all")]
        which: WhichArg,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Run the whole invariant suite.
    Selftest {
        /// Use the full trial counts.
        #[arg(long)]
        full: bool,
    },
}

fn dispatch(cli: &Cli, st: &Settings) -> commands::Outcome {
    match &cli.command {
        Command::Verify { file } => commands::verify(file, st),
        Command::Cohomology { file, degree, coefficients } => commands::cohomology_cmd(file, *degree, *coefficients, st),
        Command::CyclicCohomology { file, degree } => commands::cyclic_cmd(file, *degree, st),
        Command::Bracket { a, b, variant, form } => commands::bracket_cmd(a, b, *variant, *form),
        Command::Deform { file, cochain, t_parity } => commands::deform_cmd(file, cochain, *t_parity, st),
        Command::Transport { file, direction, convention } => commands::transport_cmd(file, *direction, *convention),
        Command::SignsCheck { which, trials } => commands::signs_cmd(*which, *trials, st),
        Command::Selftest { full } => commands::selftest_cmd(*full, st),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    codiff_core::par::set_parallel(!cli.sequential);
    let st = Settings { seed: cli.seed, bound: cli.bound, window: cli.window };
    let command: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();

    panic::set_hook(Box::new(|_| {}));
    let outcome = panic::catch_unwind(AssertUnwindSafe(|| dispatch(&cli, &st)));
    let (verdict, details) = match outcome {
        Ok(Ok(pair)) => pair,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            (Verdict::InputError, json!({ "error": e.to_string() }))
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown failure".into());
            eprintln!("internal error: {msg}");
            (Verdict::InternalError, json!({ "error": msg }))
        }
    };
    let timing_ms = cli.timing.then(|| start.elapsed().as_millis() as u64);
    let report = Report { command, verdict, timing_ms, details };
    print!("{}", if cli.text { report.to_text() } else { report.to_json() });
    ExitCode::from(verdict.exit_code() as u8)
}
