//! Flag grammar for the primespan binary.

use clap::{Args, Parser, Subcommand, ValueEnum};
use primespan::exactmath::DEFAULT_PRECISION_CAP;
use primespan::{Claim, Result, SweepConfig, ThresholdKind};

#[derive(Parser)]
#[command(
    name = "primespan",
    version,
    about = "Verify prime and perfect-power interval claims with exact arithmetic"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Sweep a claim over an integer range and report the outcome
    Verify(VerifyArgs),
    /// Show the witness for a claim at a single point
    Witness(WitnessArgs),
    /// Certified enclosure and least admissible integer for a window threshold
    Threshold(ThresholdArgs),
    /// Reproduce the reference tables
    Table(TableArgs),
    /// Find the least point from which a claim holds through a horizon
    Explore(ExploreArgs),
}

#[derive(Args)]
pub struct ClaimSpec {
    /// One of: breusch, dusart, dusart-in-breusch, scaled-lower,
    /// scaled-upper, scaled-pair, scaled-four, power-lower, power-upper,
    /// power-then-prime, prime-then-power, kinterval, threshold-lower,
    /// threshold-upper
    #[arg(long, default_value = "breusch", value_name = "NAME")]
    pub claim: String,

    /// Scale factor for the scaled claims
    #[arg(long, value_name = "A")]
    pub a: Option<u64>,

    /// Power degree for the perfect-power claims
    #[arg(long, value_name = "M")]
    pub m: Option<u32>,

    /// Interval multiplier for kinterval
    #[arg(long, value_name = "K")]
    pub k: Option<u32>,
}

impl ClaimSpec {
    pub fn resolve(&self) -> Result<Claim> {
        Claim::from_parts(&self.claim, self.a, self.m, self.k)
    }
}

#[derive(Args)]
pub struct SweepTuning {
    /// Enclosure precision in bits for logarithmic and threshold bounds
    #[arg(long, default_value_t = 64)]
    pub bits: u32,

    /// Refinement ceiling in bits before a point is declared indeterminate
    #[arg(long, env = "PRIMESPAN_PRECISION_CAP", default_value_t = DEFAULT_PRECISION_CAP)]
    pub precision_cap: u32,

    /// Sweep work-unit width
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub chunk_size: Option<u64>,

    /// Worker thread count
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=128))]
    pub workers: Option<u64>,
}

impl SweepTuning {
    pub fn config(&self) -> SweepConfig {
        let mut cfg = SweepConfig::default();
        cfg.bits = self.bits;
        cfg.precision_cap = self.precision_cap;
        if let Some(c) = self.chunk_size {
            cfg.chunk_size = c;
        }
        if let Some(w) = self.workers {
            cfg.workers = w as usize;
        }
        cfg
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PointFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Toggle {
    On,
    Off,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub claim: ClaimSpec,

    /// Smallest point of the sweep range
    #[arg(long, default_value_t = 1)]
    pub min: u64,

    /// Largest point of the sweep range
    #[arg(long)]
    pub max: u64,

    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Count failures covered by the claim's known exception set as
    /// expected; off treats every counterexample as a failure
    #[arg(long, value_enum, default_value_t = Toggle::On, value_name = "ON|OFF")]
    pub strict_exceptions: Toggle,

    #[command(flatten)]
    pub tuning: SweepTuning,
}

#[derive(Args)]
pub struct WitnessArgs {
    /// Point to query
    #[arg(long)]
    pub n: u64,

    #[command(flatten)]
    pub claim: ClaimSpec,

    /// Output format
    #[arg(long, value_enum, default_value_t = PointFormat::Text)]
    pub format: PointFormat,

    #[command(flatten)]
    pub tuning: SweepTuning,
}

#[derive(Args)]
pub struct ThresholdArgs {
    /// Window side the threshold guards
    #[arg(long, value_enum)]
    pub kind: KindArg,

    /// Power degree
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub m: u32,

    /// Enclosure precision in bits
    #[arg(long, default_value_t = 64)]
    pub bits: u32,

    /// Refinement ceiling in bits
    #[arg(long, env = "PRIMESPAN_PRECISION_CAP", default_value_t = DEFAULT_PRECISION_CAP)]
    pub precision_cap: u32,

    /// Output format
    #[arg(long, value_enum, default_value_t = PointFormat::Text)]
    pub format: PointFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Lower,
    Upper,
}

impl KindArg {
    pub fn to_kind(self) -> ThresholdKind {
        match self {
            KindArg::Lower => ThresholdKind::LowerWindow,
            KindArg::Upper => ThresholdKind::UpperWindow,
        }
    }
}

#[derive(Args)]
pub struct TableArgs {
    /// Which table to print
    #[arg(long, value_enum)]
    pub which: WhichTable,

    /// Largest first-column value; breusch defaults to the reference rows,
    /// kinterval to 14
    #[arg(long)]
    pub max: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WhichTable {
    Breusch,
    Kinterval,
}

#[derive(Args)]
pub struct ExploreArgs {
    #[command(flatten)]
    pub claim: ClaimSpec,

    /// Largest point the scan must certify through
    #[arg(long)]
    pub horizon: u64,

    /// Output format
    #[arg(long, value_enum, default_value_t = PointFormat::Text)]
    pub format: PointFormat,

    #[command(flatten)]
    pub tuning: SweepTuning,
}
