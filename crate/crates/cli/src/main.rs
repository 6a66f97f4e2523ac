//! `iet-lab`: exact computations with interval exchange transformations.
//!
//! Exit status 0 on success, 1 when a verification fails, 2 on bad input.

mod commands;
mod encode;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "iet-lab",
    version,
    about = "Exact computations with interval exchange transformations"
)]
pub struct Cli {
    /// Field preset (rational, sqrt2, cubic2, quartic2) or an inline
    /// `{ minpoly: [...]; interval: [lo, hi] }` block. Input files that
    /// declare their own field override it.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct MapInput {
    /// Input file declaring one or more maps.
    #[arg(long)]
    pub iet: PathBuf,
    /// Which declared map to use; defaults to the last one.
    #[arg(long)]
    pub map: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a map at a point.
    Eval {
        #[command(flatten)]
        input: MapInput,
        /// Point in [0, 1), as a number expression.
        #[arg(long)]
        x: String,
    },
    /// Evaluate a word in the declared maps, rightmost letter first.
    Compose {
        #[arg(long)]
        iet: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Forward orbit of a point, with the discontinuity count along it.
    Orbit {
        #[command(flatten)]
        input: MapInput,
        #[arg(long)]
        x: String,
        /// Number of forward steps.
        #[arg(long, default_value_t = 20)]
        length: usize,
        /// Orbit depth for the discontinuity rate; skipped when absent.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Periodic and minimal components.
    Decompose {
        #[command(flatten)]
        input: MapInput,
        #[arg(long, default_value_t = 40)]
        depth: usize,
    },
    /// Break-point counts of the first powers.
    Growth {
        #[command(flatten)]
        input: MapInput,
        #[arg(long, default_value_t = 30)]
        length: usize,
    },
    /// Ball sizes in the group generated by the declared maps.
    Ball {
        #[arg(long)]
        gens: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Look for fixed points among short words.
    Free {
        #[arg(long)]
        gens: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Also look for periodic points up to this period.
        #[arg(long)]
        periodic: Option<usize>,
    },
    /// Check a built-in example group.
    Verify {
        /// bs11, crystallographic, metabelian3 or alternating<n>.
        builtin: String,
        /// Parameter bindings `name=expr`.
        #[arg(long, num_args = 1..)]
        params: Vec<String>,
        /// Word length for the freeness check.
        #[arg(long)]
        length: Option<usize>,
        /// Seed for the sampled checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// SAF invariant, optionally compared with a second map.
    Saf {
        #[command(flatten)]
        input: MapInput,
        /// Name of a second map in the same file.
        #[arg(long)]
        against: Option<String>,
    },
    /// Conjugate a product of restricted rotations into some G_n.
    Normalize {
        #[command(flatten)]
        input: MapInput,
    },
}

/// What a command produced.
pub struct Report {
    pub text: String,
    pub json: serde_json::Value,
    /// False when a verification failed.
    pub ok: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(report) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("json")
                );
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
