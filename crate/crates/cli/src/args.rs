use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "spin-entropy",
    version,
    about = "Entropic uncertainty bounds for joint qubit spin measurements"
)]
pub struct Cli {
    /// Read every angle argument in degrees instead of radians.
    #[arg(long, global = true)]
    pub degrees: bool,

    /// Evaluate grids on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every applicable bound and the numerical minima at one point.
    Bounds(BoundsArgs),
    /// Bounds and minima over a grid of angles, written as CSV.
    Sweep(SweepArgs),
    /// Critical angle where the bisector state stops minimising H(A)+H(B).
    EtaPrime(EtaPrimeArgs),
    /// Monte Carlo simulation of the joint measurement, written as JSON.
    Sample(SampleArgs),
    /// Minimise one entropy functional over pure states.
    Minimize(MinimizeArgs),
}

/// Angle between the two spin axes plus the sharpness choice.
#[derive(Debug, Args)]
pub struct PointArgs {
    /// Angle between the measured spin components.
    #[arg(long, allow_negative_numbers = true)]
    pub eta: f64,

    /// Sharpness of the first observable.
    #[arg(
        long,
        required_unless_present = "equal_sharpness",
        conflicts_with = "equal_sharpness"
    )]
    pub alpha: Option<f64>,

    /// Sharpness of the second observable. Defaults to the largest value
    /// allowed by the trade-off for the given alpha.
    #[arg(long, requires = "alpha")]
    pub beta: Option<f64>,

    /// Use the optimal pair with alpha = beta.
    #[arg(long)]
    pub equal_sharpness: bool,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub point: PointArgs,

    /// Print JSON instead of a table.
    #[arg(long)]
    pub json: bool,

    /// Write the output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Coarse grid size of the planar minimiser.
    #[arg(long, default_value_t = 2048)]
    pub grid_n: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 0.0)]
    pub eta_min: f64,

    /// Defaults to pi (or 180 with --degrees).
    #[arg(long)]
    pub eta_max: Option<f64>,

    #[arg(long, default_value_t = 91)]
    pub eta_steps: usize,

    /// equal-sharpness, fixed:ALPHA, or max-beta-given-alpha.
    #[arg(long, default_value = "equal-sharpness")]
    pub alpha_rule: SweepRule,

    /// Alpha grid size for max-beta-given-alpha, spanning [0, 1].
    #[arg(long, default_value_t = 21)]
    pub alpha_steps: usize,

    /// Comma-separated bound columns. Defaults to all of them.
    #[arg(long, value_delimiter = ',')]
    pub outputs: Vec<OutputColumn>,

    /// CSV destination; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, default_value_t = 2048)]
    pub grid_n: usize,
}

#[derive(Debug, Args)]
pub struct EtaPrimeArgs {
    /// equal-sharpness or fixed:ALPHA.
    #[arg(long, default_value = "equal-sharpness")]
    pub alpha_rule: SweepRule,

    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub point: PointArgs,

    /// State angle in the a-b plane, measured from a toward b.
    #[arg(long, allow_negative_numbers = true)]
    pub theta: f64,

    #[arg(long, default_value_t = 1_000_000)]
    pub shots: u64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Chunked streams (parallel-safe) or one sequential stream.
    #[arg(long, value_enum, default_value_t = Mode::Chunked)]
    pub mode: Mode,

    /// JSON destination; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MinimizeArgs {
    #[command(flatten)]
    pub point: PointArgs,

    #[arg(long, value_enum, default_value_t = Objective::MarginalSum)]
    pub objective: Objective,

    /// Search the whole Bloch sphere instead of the a-b plane.
    #[arg(long)]
    pub sphere: bool,

    #[arg(long, default_value_t = 2048)]
    pub grid_n: usize,

    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Chunked,
    SingleStream,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Objective {
    /// H(A_J, B_J).
    Joint,
    /// H(A_J) + H(B_J).
    MarginalSum,
    /// H(A) + H(B) for sharp measurements on separate copies.
    Separate,
    /// H(M) + H(L) along the scheme's two axes.
    AxisSum,
}

/// How alpha (and beta) follow from eta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepRule {
    EqualSharpness,
    Fixed(f64),
    MaxBetaGivenAlpha,
}

impl FromStr for SweepRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "equal-sharpness" => Ok(SweepRule::EqualSharpness),
            "max-beta-given-alpha" => Ok(SweepRule::MaxBetaGivenAlpha),
            _ => {
                let value = s.strip_prefix("fixed:").ok_or_else(|| {
                    format!("unknown rule `{s}`; expected equal-sharpness, fixed:ALPHA or max-beta-given-alpha")
                })?;
                let alpha: f64 = value
                    .parse()
                    .map_err(|_| format!("`{value}` is not a number"))?;
                if !(0.0..=1.0).contains(&alpha) {
                    return Err(format!("alpha {alpha} outside [0, 1]"));
                }
                Ok(SweepRule::Fixed(alpha))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum OutputColumn {
    JointBoundEqual,
    JointBoundGeneral,
    MarginalBoundEqual,
    ConcavityBound,
    KpBound,
    GmrBound,
    MuBound,
    NumericMinSeparate,
    NumericMinAxisSum,
}

impl OutputColumn {
    pub const ALL: [OutputColumn; 9] = [
        OutputColumn::JointBoundEqual,
        OutputColumn::JointBoundGeneral,
        OutputColumn::MarginalBoundEqual,
        OutputColumn::ConcavityBound,
        OutputColumn::KpBound,
        OutputColumn::GmrBound,
        OutputColumn::MuBound,
        OutputColumn::NumericMinSeparate,
        OutputColumn::NumericMinAxisSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OutputColumn::JointBoundEqual => "joint_bound_equal",
            OutputColumn::JointBoundGeneral => "joint_bound_general",
            OutputColumn::MarginalBoundEqual => "marginal_bound_equal",
            OutputColumn::ConcavityBound => "concavity_bound",
            OutputColumn::KpBound => "kp_bound",
            OutputColumn::GmrBound => "gmr_bound",
            OutputColumn::MuBound => "mu_bound",
            OutputColumn::NumericMinSeparate => "numeric_min_separate",
            OutputColumn::NumericMinAxisSum => "numeric_min_axis_sum",
        }
    }
}
