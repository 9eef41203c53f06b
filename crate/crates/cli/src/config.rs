use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Point counts and leading-constant predictions for x0 (x1^2 + x2^2) = x3^3.
#[derive(Debug, Clone, Parser)]
#[command(name = "manin", version)]
pub struct RunConfig {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Worker threads for the counting engines.
    #[arg(long, global = true, env = "MANIN_WORKERS", value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,

    /// Write the main artifact here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    Brute,
    Fast,
    Descent,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OmegaChoice {
    Closed,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InvolutionChoice {
    Swap,
    Identity,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// N_U(B) for a range of bounds.
    Count(CountArgs),
    /// The predicted leading constant with all of its factors.
    Predict(PredictArgs),
    /// Counts at B = 2^k against C B (log B)^3, with a fit of Q.
    Compare(CompareArgs),
    /// Fan data, resolution, Picard ranks and alpha.
    Fan(FanArgs),
    /// N(p^k) / p^(3k) against the closed form.
    Density(DensityArgs),
    /// Hilbert basis of the Cox ring grading system.
    Cox,
}

#[derive(Debug, Clone, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub max_height: u64,

    /// Emit every bound from here to --max-height.
    #[arg(long)]
    pub min_height: Option<u64>,

    #[arg(long, value_enum, default_value_t = MethodChoice::Fast)]
    pub method: MethodChoice,
}

#[derive(Debug, Clone, Args)]
pub struct TauArgs {
    /// Largest prime in the partial Euler product.
    #[arg(long, default_value_t = 1_000_000)]
    pub cutoff: u64,

    /// Target width of the tau interval.
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct PredictArgs {
    #[command(flatten)]
    pub tau: TauArgs,

    #[arg(long, value_enum, default_value_t = OmegaChoice::Closed)]
    pub omega: OmegaChoice,

    /// Tolerance for the quadrature of the archimedean density.
    #[arg(long, default_value_t = 1e-6)]
    pub omega_tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[arg(long, default_value_t = 10)]
    pub min_exp: u32,

    #[arg(long, default_value_t = 21)]
    pub max_exp: u32,

    #[command(flatten)]
    pub tau: TauArgs,

    /// Where to write the fit as JSON when the rows are CSV.
    #[arg(long)]
    pub fit_output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FanArgs {
    /// Fan in the plain-text ray format; defaults to the fan of V.
    #[arg(long)]
    pub fan_file: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = InvolutionChoice::Swap)]
    pub involution: InvolutionChoice,
}

#[derive(Debug, Clone, Args)]
pub struct DensityArgs {
    #[arg(long)]
    pub p: u64,

    #[arg(long)]
    pub k: u32,
}
