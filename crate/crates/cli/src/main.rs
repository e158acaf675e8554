//! `mascheroni`: evaluation, expansion, rate estimation and certified bound
//! checks from the command line.
//!
//! Exit codes: 0 success, 1 a bound was certified false, 2 invalid input,
//! 3 undecided rows remain at the precision cap, 4 the computation itself
//! failed.

mod commands;
mod envelope;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use envelope::Format;

#[derive(Parser)]
#[command(
    name = "mascheroni",
    version,
    about = "Fast sequences for the Euler-Mascheroni constant"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct SeqArgs {
    /// gamma, r, v, mu, vfam, s, uplus or uminus.
    #[arg(long = "seq")]
    pub seq: String,
    /// Parameter a as "p/q" (mu and vfam only).
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Parameter b as "p/q" (mu and vfam only).
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Certified values of a sequence at one index or a range.
    Eval {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, conflicts_with_all = ["from", "to"])]
        n: Option<u64>,
        #[arg(long, requires = "to")]
        from: Option<u64>,
        #[arg(long, requires = "from")]
        to: Option<u64>,
        #[arg(long, default_value_t = 128)]
        precision: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exact expansion of v_n - v_{n+1} (or of v_n - gamma) in powers of 1/n.
    Expand {
        /// Numeric a as "p/q"; symbolic when omitted.
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        /// Numeric b as "p/q"; symbolic when omitted.
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, default_value_t = 8)]
        order: usize,
        /// Expand the deviation v_n - gamma instead of the difference.
        #[arg(long)]
        deviation: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Parameters (a, b) that cancel the two leading difference terms.
    Optimize {
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Least-squares estimate of the difference order on a geometric grid.
    Rate {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, default_value_t = 16)]
        grid_start: u64,
        #[arg(long, default_value_t = 1024)]
        grid_stop: u64,
        #[arg(long, default_value_t = 2)]
        grid_factor: u64,
        #[arg(long, default_value_t = 128)]
        precision: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Certified verdicts for a catalog inequality over a range of n.
    SweepBounds {
        /// Catalog id, optionally suffixed with -lower or -upper.
        #[arg(long)]
        entry: String,
        /// First index; defaults to the entry's smallest valid index.
        #[arg(long)]
        from: Option<u64>,
        #[arg(long)]
        to: u64,
        #[arg(long, default_value_t = 128)]
        precision: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exact polynomial identities and positivity certificates.
    Certify {
        #[arg(long, value_parser = ["P", "Q", "f", "g"])]
        target: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Certified enclosure of the constant.
    Enclose {
        #[arg(long, default_value_t = 128)]
        precision: u32,
        /// Use the bootstrap bound at this index instead of the default route.
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(commands::error_code(&err))
        }
    }
}
