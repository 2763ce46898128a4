//! `rsosc`: mode tables, identity checks, and limit reports for the
//! reciprocal-symmetric finite-difference oscillator.
//!
//! Exit codes: 0 all checks passed, 1 a check failed, 2 invalid input.

mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand};

use config::{RunConfig, SharedArgs};

#[derive(Parser)]
#[command(
    name = "rsosc",
    version,
    about = "Mode analysis and energy tables for the symmetric-difference oscillator"
)]
struct Cli {
    #[command(flatten)]
    shared: SharedArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the grid identity checks and report each one
    Verify,

    /// Tabulate mode energies across branches and alias copies
    Spectrum,

    /// Sweep d and fit the order of the continuum frequency error
    Converge {
        /// Smallest grid spacing in the sweep
        #[arg(long, default_value_t = 1e-4, allow_negative_numbers = true)]
        d_min: f64,

        /// Largest grid spacing in the sweep
        #[arg(long, default_value_t = 1e-1, allow_negative_numbers = true)]
        d_max: f64,

        /// Number of geometric sweep points
        #[arg(long, default_value_t = 16)]
        points: usize,
    },

    /// Integrate the two-step recurrence and compare with the mode sum
    Simulate {
        /// Initial value g(0), written as "RE" or "RE,IM"
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        g0: String,

        /// Initial value g(d); defaults to the pure plus-branch step
        #[arg(long, allow_hyphen_values = true)]
        g1: Option<String>,

        /// Number of recurrence steps
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },

    /// Compare alias displacement families on and between grid times
    Alias {
        /// Comma-separated twos indices, one family per entry
        #[arg(long, default_value = "0,1,2", allow_hyphen_values = true)]
        twos: String,

        /// Largest grid index in the agreement sweep
        #[arg(long, default_value_t = 16, allow_negative_numbers = true)]
        n_max: i64,
    },

    /// Emit the radiation-law and correspondence limit reports
    Limits,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    };
    std::process::exit(code);
}

/// Ok carries the exit code (0 passed, 1 a check failed); Err is invalid
/// input and becomes exit 2 with a diagnostic naming the offending field.
fn run(cli: &Cli) -> Result<i32, String> {
    let cfg = RunConfig::resolve(&cli.shared)?;
    match &cli.command {
        Command::Verify => commands::verify::run(&cfg),
        Command::Spectrum => commands::spectrum::run(&cfg),
        Command::Converge {
            d_min,
            d_max,
            points,
        } => commands::converge::run(&cfg, *d_min, *d_max, *points),
        Command::Simulate { g0, g1, steps } => {
            commands::simulate::run(&cfg, g0, g1.as_deref(), *steps)
        }
        Command::Alias { twos, n_max } => commands::alias::run(&cfg, twos, *n_max),
        Command::Limits => commands::limits::run(&cfg),
    }
}
