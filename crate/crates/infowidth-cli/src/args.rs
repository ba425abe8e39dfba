//! Command-line argument definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use infowidth::WidthBackend;

/// Information measures over finite set systems: width tables, property
/// reports, figure regeneration, and Monte-Carlo self-checks.
#[derive(Debug, Parser)]
#[command(name = "infowidth", version, about, max_term_width = 100)]
pub struct Cli {
    /// Worker threads for parallel sections (default: the
    /// INFOWIDTH_THREADS environment variable, then the CPU count).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

/// The subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Information width I*(l), threshold cardinality r, and optimal cost
    /// kappa*(l) for one space, as a CSV row.
    Width(WidthArgs),
    /// Information report for a binary-function-class property, as JSON.
    Property(PropertyArgs),
    /// Information report for an explicit property given as JSON.
    Measure(MeasureArgs),
    /// Regenerate a reference figure table as CSV (and optionally SVG).
    Figure(FigureArgs),
    /// Seeded statistical self-checks of the Monte-Carlo samplers.
    McValidate(McValidateArgs),
}

/// Arguments of the `width` subcommand.
#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("query").required(true).args(["l", "members"])))]
pub struct WidthArgs {
    /// Size of the target space Y.
    #[arg(long)]
    pub ny: u64,

    /// Description complexity l in bits.
    #[arg(long)]
    pub l: Option<f64>,

    /// Exact member count |Z_x|, as a decimal integer of any size.
    #[arg(long)]
    pub members: Option<String>,

    /// Evaluation backend (default: exact when it applies, logdomain
    /// otherwise).
    #[arg(long, value_enum)]
    pub backend: Option<BackendArg>,

    /// Write the CSV to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Width backend selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    /// Exact big-integer binomial sums (spaces up to 1000 elements).
    Exact,
    /// Windowed log2-domain sums (any space that fits in u64).
    Logdomain,
}

impl From<BackendArg> for WidthBackend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Exact => WidthBackend::Exact,
            BackendArg::Logdomain => WidthBackend::LogDomain,
        }
    }
}

/// Property families exposed by the `property` subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PropArg {
    /// Agreement dimension at least d (all members agree on >= d points).
    Ld,
    /// VC dimension below d.
    Vd,
    /// VC dimension at least d (the complement of vd).
    Vdc,
    /// VC dimension below d and consistency with a labeled sample.
    Vdsm,
    /// Exactly one fixed class (the first --gsize function encodings).
    Identity,
    /// Geometric weighting alpha^|G| over classes (information only).
    Expdecay,
}

/// Evaluation methods for the `property` subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Exhaustive enumeration (n <= 4).
    Exact,
    /// Closed-form large-n evaluators.
    Asym,
    /// Seeded Monte-Carlo estimation (n <= 16).
    Mc,
}

/// Arguments of the `property` subcommand.
#[derive(Debug, Args)]
pub struct PropertyArgs {
    /// Domain size n: classes of functions {1..n} -> {0,1}.
    #[arg(long)]
    pub n: u32,

    /// Property family.
    #[arg(long, value_enum)]
    pub prop: PropArg,

    /// Dimension bound d (ld, vd, vdc, vdsm).
    #[arg(long)]
    pub d: Option<u32>,

    /// Sample size m for vdsm: the sample is m zero-labeled points
    /// 1..=m unless --sample overrides it.
    #[arg(long)]
    pub m: Option<u32>,

    /// Labeled sample JSON file {"sample": [[point, 0-or-1], ...]} (vdsm).
    #[arg(long)]
    pub sample: Option<PathBuf>,

    /// Decay base alpha in (0,1) (expdecay).
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Class size |G| for the identity property.
    #[arg(long)]
    pub gsize: Option<u64>,

    /// Evaluation method.
    #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
    pub method: MethodArg,

    /// Monte-Carlo trials per class cardinality.
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,

    /// Monte-Carlo base seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Write the JSON report to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Arguments of the `measure` subcommand.
#[derive(Debug, Args)]
pub struct MeasureArgs {
    /// Property JSON file: {"ny": N, "subsets": [[...], ...]} or
    /// {"ny": N, "counts": {"k": "count", ...}}.
    #[arg(long)]
    pub input: PathBuf,

    /// Optional target-subset JSON file: a bare element array [1,2] or
    /// {"subset": [1,2]}. Reports the information about that target.
    #[arg(long)]
    pub target: Option<PathBuf>,

    /// Write the JSON report to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// The reference figures that can be regenerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    /// Width I*(l) against complexity l for spaces of 2^5..2^7 elements.
    #[value(name = "1a")]
    F1a,
    /// Optimal cost kappa*(l) on the same grid.
    #[value(name = "1b")]
    F1b,
    /// Information of the identity property against n for three class sizes.
    #[value(name = "2a")]
    F2a,
    /// Efficiency of the identity property on the same grid.
    #[value(name = "2b")]
    F2b,
    /// Efficiency of the dimension properties (d = sqrt(n)) against n.
    #[value(name = "3a")]
    F3a,
    /// Efficiency of the consistency property for m = n^a against n.
    #[value(name = "3b")]
    F3b,
    /// Efficiency of the consistency property at n = 10 against b (d = n^b),
    /// one series per a (m = n^a).
    #[value(name = "4")]
    F4,
}

/// Arguments of the `figure` subcommand.
#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Which figure to regenerate.
    #[arg(long, value_enum)]
    pub id: FigureId,

    /// Write the CSV table to this file instead of stdout.
    #[arg(long)]
    pub out_csv: Option<PathBuf>,

    /// Also render a self-contained SVG line chart to this file.
    #[arg(long)]
    pub out_svg: Option<PathBuf>,
}

/// Arguments of the `mc-validate` subcommand.
#[derive(Debug, Args)]
pub struct McValidateArgs {
    /// Trials per statistical check.
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,

    /// Base RNG seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
