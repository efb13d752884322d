//! Command-line interface.
//!
//! Reads a problem file describing an ideal over an algebraic number field,
//! computes its reduced Gröbner basis, and prints one polynomial per line
//! (or a JSON document with `--json`).
//!
//! Exit codes: 0 success, 2 unreadable or malformed input, 3 round budget
//! exceeded, 4 admissible-prime candidates exhausted, 1 anything else.

use anfgb::frontend::{
    basis_or_exit, direct_groebner, parse_problem, render_basis_text, EngineOutcome,
};
use anfgb::modular::EngineConfig;
use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "anfgb",
    version,
    about = "Reduced Gröbner bases of polynomial ideals over Q(α)"
)]
struct Args {
    /// Problem file (see README for the format).
    #[arg(long)]
    input: PathBuf,

    /// Worker threads for per-prime computations (0 = all cores).
    #[arg(long, default_value_t = 0)]
    threads: usize,

    /// Number of primes drawn in the first round (default: engine heuristic).
    #[arg(long)]
    initial_primes: Option<usize>,

    /// Round budget before the engine gives up.
    #[arg(long, default_value_t = 12)]
    max_rounds: usize,

    /// Seed for all randomized choices; fixed seed means fixed output.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Emit the basis as a JSON document instead of plain text.
    #[arg(long)]
    json: bool,

    /// Bypass the modular engine: run Buchberger directly over Q(α).
    #[arg(long)]
    oracle: bool,

    /// Also admit primes that keep the minimal polynomial irreducible.
    #[arg(long)]
    allow_irreducible: bool,

    /// Skip the weak admissibility pre-filter.
    #[arg(long)]
    no_weak_prefilter: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let src = match std::fs::read_to_string(&args.input) {
        Ok(src) => src,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.input.display());
            return ExitCode::from(2);
        }
    };
    let problem = match parse_problem(&src) {
        Ok(problem) => problem,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let basis = if args.oracle {
        direct_groebner(&problem)
    } else {
        let config = EngineConfig {
            initial_primes: args.initial_primes,
            max_rounds: args.max_rounds,
            seed: args.seed,
            workers: args.threads,
            allow_irreducible: args.allow_irreducible,
            weak_prefilter: !args.no_weak_prefilter,
        };
        match basis_or_exit(&problem, &config) {
            EngineOutcome::Basis(basis) => basis,
            EngineOutcome::Failed(code, message) => {
                eprintln!("error: {message}");
                return ExitCode::from(code);
            }
        }
    };

    if args.json {
        let doc = anfgb::frontend::json::basis_to_json(&problem, &basis);
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        print!(
            "{}",
            render_basis_text(
                &basis,
                &problem.var_names,
                &problem.alpha_name,
                problem.order,
            )
        );
    }
    ExitCode::SUCCESS
}
