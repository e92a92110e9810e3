//! Command-line arguments. The parsed tree doubles as the run configuration:
//! it serializes to JSON and can be replayed with `ietk run --config FILE`.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[command(name = "ietk", version, about = "Interval exchanges, suspensions and recurrence diagnostics")]
pub struct RunConfig {
    /// Worker threads for scans; defaults to the number of cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Reject float literals instead of switching to binary64.
    #[arg(long, global = true)]
    pub exact: bool,
    /// Print the configuration as JSON and exit.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub print_config: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Permutation combinatorics.
    #[command(subcommand)]
    Perm(PermCmd),
    /// Interval exchange maps.
    #[command(subcommand)]
    Iet(IetCmd),
    /// The form Q, the cone, the null space and positive pairs.
    #[command(subcommand)]
    Pair(PairCmd),
    /// Suspensions and their flat geometry.
    #[command(subcommand)]
    Surface(SurfaceCmd),
    /// Scans and diagnostics.
    #[command(subcommand)]
    Exp(ExpCmd),
    /// Replay a configuration saved with --print-config.
    Run {
        #[arg(long)]
        config: String,
    },
}

#[derive(Subcommand, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(rename_all = "kebab-case")]
pub enum PermCmd {
    /// Irreducibility, admissibility and stratum data.
    Info {
        #[arg(long)]
        sigma: String,
    },
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct IetArgs {
    /// Images `σ(1),…,σ(d)`.
    #[arg(long)]
    pub sigma: String,
    /// Lengths: integers, `p/q`, `phi` or floats.
    #[arg(long, visible_alias = "lengths", allow_hyphen_values = true)]
    pub a: String,
}

#[derive(Subcommand, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(rename_all = "kebab-case")]
pub enum IetCmd {
    /// `T(x)`, or `T^{-1}(x)` with --inverse.
    Eval {
        #[command(flatten)]
        iet: IetArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        inverse: bool,
    },
    /// `x, T x, …, T^n x`, or backward iterates.
    Orbit {
        #[command(flatten)]
        iet: IetArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        backward: bool,
    },
    /// `ε_n` for each `n` of a comma-separated increasing list.
    Eps {
        #[command(flatten)]
        iet: IetArgs,
        #[arg(long)]
        n: String,
    },
    /// All `T^m(x_i) = x_j` with `m ≤ m_max`.
    Connections {
        #[command(flatten)]
        iet: IetArgs,
        #[arg(long, visible_alias = "mmax", default_value_t = 1000)]
        m_max: usize,
    },
}

#[derive(Subcommand, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(rename_all = "kebab-case")]
pub enum PairCmd {
    /// The matrix of Q.
    Q {
        #[arg(long)]
        sigma: String,
    },
    /// Whether `Q(e_i, b) > 0` for every `i`.
    Cone {
        #[arg(long)]
        sigma: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Integer basis of the null space of Q.
    Null {
        #[arg(long)]
        sigma: String,
    },
    /// Semi-decision of whether `(a, b)` is a positive pair.
    Positive {
        #[command(flatten)]
        iet: IetArgs,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Exit with status 2 when the verdict is NotPositive.
        #[arg(long)]
        require_positive: bool,
        #[command(flatten)]
        positivity: PositivityArgs,
    },
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct PositivityArgs {
    #[arg(long, default_value_t = 32)]
    pub seeds: usize,
    #[arg(long, visible_alias = "orbit", default_value_t = 1_000_000)]
    pub orbit_len: usize,
    #[arg(long = "positivity-m-max", visible_alias = "mmax", default_value_t = 10_000)]
    pub m_max: usize,
    #[arg(long)]
    pub margin: Option<f64>,
    #[arg(long = "positivity-seed", default_value_t = 0)]
    pub rng_seed: u64,
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct SurfaceArgs {
    #[command(flatten)]
    pub iet: IetArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    /// Apply the geodesic flow `g_t`.
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    /// Apply the horocycle flow `h_s`.
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<String>,
    /// Rotate by `θ`.
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    /// Write the polygon as SVG.
    #[arg(long)]
    pub svg: Option<String>,
}

#[derive(Subcommand, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(rename_all = "kebab-case")]
pub enum SurfaceCmd {
    /// Polygon, stratum and area of the suspension.
    Suspend {
        #[command(flatten)]
        surface: SurfaceArgs,
    },
    /// Vertical return map to the diameter.
    Flow {
        #[command(flatten)]
        surface: SurfaceArgs,
    },
    /// Shortest saddle connection, or all up to --rho.
    Phi {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        rho: Option<String>,
    },
    /// Horizontal saddle connections.
    Horiz {
        #[command(flatten)]
        surface: SurfaceArgs,
    },
    /// Real REL deformation `a + t·r`.
    Rel {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        rel_dir: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
}

#[derive(ValueEnum, Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum SamplerName {
    Lebesgue,
    Cantor,
    Grid,
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = SamplerName::Lebesgue)]
    pub sampler: SamplerName,
    /// Digits of the coin-tossing sampler.
    #[arg(long, default_value_t = 20)]
    pub depth: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub window: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
    /// CSV output; a summary JSON is written next to it.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ScheduleArgs {
    /// Largest exponent of the schedule `2^4, …, 2^cap`.
    #[arg(long, default_value_t = 20)]
    pub cap: u32,
    /// Threshold for `n·ε_n`; defaults to `0.05·Σa`.
    #[arg(long)]
    pub zeta: Option<f64>,
}

#[derive(Subcommand, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(rename_all = "kebab-case")]
pub enum ExpCmd {
    /// Recurrence diagnostics along `a + s·b`.
    LineScan {
        #[command(flatten)]
        iet: IetArgs,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        scan: ScanArgs,
        #[command(flatten)]
        positivity: PositivityArgs,
    },
    /// Cone check and diagnostics along the Mahler curve.
    Mahler {
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// `φ(g_t q)` against `n·ε_n` along `t = 0, step, …, t_max`.
    Trace {
        #[command(flatten)]
        iet: IetArgs,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 8.0)]
        t_max: f64,
        #[arg(long, default_value_t = 0.5)]
        t_step: f64,
        #[arg(long)]
        out: Option<String>,
    },
    /// The `ε_n` trace and classification of one exchange.
    Diagnose {
        #[command(flatten)]
        iet: IetArgs,
        #[command(flatten)]
        schedule: ScheduleArgs,
        #[arg(long)]
        out: Option<String>,
    },
}
