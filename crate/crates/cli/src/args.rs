use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wishcond_core::sampling::Sampler;
use wishcond_core::ModelParams;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "wishcond",
    version,
    about = "Condition numbers of indefinite rank-2 Wishart-type matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the condition-number density on a grid (`sigma,density`).
    Density {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw condition numbers (`sigma`), or a density histogram with `--bins`.
    Sample {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = SamplerArg::Chi)]
        sampler: SamplerArg,
        /// Write a `sigma,density` histogram with this many bins instead.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        bins: Option<u64>,
        /// Histogram range; defaults to 1 and the 99.5th sample percentile.
        #[arg(long)]
        min: Option<f64>,
        #[arg(long)]
        max: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Kolmogorov-Smirnov test of Monte Carlo samples against the density.
    /// Exits with 1 when the check fails.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 100_000)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = SamplerArg::Chi)]
        sampler: SamplerArg,
        /// Test a `sigma` CSV (as written by `sample`) instead of drawing.
        #[arg(long, value_name = "PATH")]
        samples: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the deterministic large-β condition number.
    Limit {
        #[arg(long = "L")]
        rows: u32,
        /// Accepted for symmetry with the other subcommands; the limit does not depend on it.
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        x1: f64,
        #[arg(long, allow_hyphen_values = true)]
        x2: f64,
    },
    /// Densities for several β (`beta,sigma,density`), followed by one
    /// `beta,median,NaN` row per β holding a Monte Carlo sample median.
    Sweep {
        #[arg(long = "L")]
        rows: u32,
        #[arg(long, allow_hyphen_values = true)]
        x1: f64,
        #[arg(long, allow_hyphen_values = true)]
        x2: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        betas: Vec<f64>,
        #[command(flatten)]
        grid: GridArgs,
        /// Samples per β for the median rows.
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ModelArgs {
    /// Number of rows of W (integer >= 2).
    #[arg(long = "L")]
    pub rows: u32,
    #[arg(long)]
    pub beta: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub x1: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub x2: f64,
}

impl ModelArgs {
    pub fn params(&self) -> Result<ModelParams, CliError> {
        Ok(ModelParams::new(self.rows, self.beta, self.x1, self.x2)?)
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 1.0)]
    pub min: f64,
    #[arg(long, default_value_t = 100.0)]
    pub max: f64,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    /// Space the grid linearly instead of logarithmically.
    #[arg(long)]
    pub linear: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SamplerArg {
    Chi,
    Direct,
}

impl From<SamplerArg> for Sampler {
    fn from(s: SamplerArg) -> Self {
        match s {
            SamplerArg::Chi => Sampler::ChiPipeline,
            SamplerArg::Direct => Sampler::DirectW,
        }
    }
}
