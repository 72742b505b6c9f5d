//! Command-line front end: instance files in, JSON result files out.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub mod commands;
pub mod error;
pub mod instance;
pub mod report;

pub use commands::{Global, Output};
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "ncrank", version, about = "Commutative and non-commutative rank of matrix spaces")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also write the JSON output to this file.
    #[arg(long, global = true)]
    pub json_out: Option<PathBuf>,
    /// Check function-field ranks on a full grid instead of random points.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Random coefficients come from this many field elements.
    #[arg(long, global = true, default_value_t = 1 << 32)]
    pub sample_size: u64,
    /// Largest blow-up (rows) the ncrank driver may build.
    #[arg(long, global = true, default_value_t = 2000)]
    pub cap_dim: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Randomized commutative rank.
    Rank {
        instance: PathBuf,
        #[arg(long, default_value_t = 16)]
        trials: usize,
    },
    /// Non-commutative rank with certificates.
    Ncrank {
        instance: PathBuf,
        #[arg(long, default_value_t = 16)]
        trials: usize,
        /// Interpret the instance over another field (`Q` or `Fp:<p>`).
        #[arg(long)]
        field_override: Option<String>,
    },
    /// Second Wong sequence of one element of the space.
    Wong {
        instance: PathBuf,
        /// Basis index, or comma-separated coefficients.
        #[arg(long, default_value = "0")]
        pivot_matrix: String,
    },
    /// Re-check the certificates in a result file.
    Verify { instance: PathBuf, result: PathBuf },
    /// Blow-up degree bounds for n x n spaces of dimension m.
    Bounds { n: u32, m: u32 },
    /// Brute-force bounds for small instances.
    Oracle {
        instance: PathBuf,
        /// Reduce the instance modulo this prime before enumerating.
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value_t = 3)]
        d_cap: usize,
        #[arg(long, default_value_t = 16)]
        trials: usize,
    },
}

impl Cli {
    pub fn global(&self) -> Global {
        Global {
            seed: self.seed,
            deterministic: self.deterministic,
            sample_size: self.sample_size,
            cap_dim: self.cap_dim,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let g = cli.global();
    let out = match &cli.command {
        Command::Rank { instance, trials } => commands::cmd_rank(instance, *trials, &g)?,
        Command::Ncrank {
            instance,
            trials,
            field_override,
        } => commands::cmd_ncrank(instance, *trials, field_override.as_deref(), &g)?,
        Command::Wong { instance, pivot_matrix } => commands::cmd_wong(instance, pivot_matrix, &g)?,
        Command::Verify { instance, result } => commands::cmd_verify(instance, result)?,
        Command::Bounds { n, m } => commands::cmd_bounds(*n, *m, &g)?,
        Command::Oracle {
            instance,
            q,
            d_cap,
            trials,
        } => commands::cmd_oracle(instance, *q, *d_cap, *trials, &g)?,
    };
    if let Some(path) = &cli.json_out {
        std::fs::write(path, format!("{}\n", out.json))
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    }
    Ok(out)
}
