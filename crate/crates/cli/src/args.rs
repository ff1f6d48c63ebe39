use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Five-vertex model with scalar-product boundary conditions: exact
/// finite-size partition functions and the scaling-limit log-gas.
#[derive(Debug, Parser)]
#[command(name = "fivevertex", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// TOML file supplying defaults for any flag (keys are the long flag names).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Starting precision in bits of the multiprecision Hankel path (at least 64).
    #[arg(long, global = true)]
    pub precision: Option<usize>,

    /// Largest number of elementary products the brute-force log-gas sum may use.
    #[arg(long, global = true)]
    pub budget: Option<u128>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact P coefficients and τ values of a finite lattice.
    Exact(ExactArgs),
    /// Scenario, band end-points and free energy along a grid of x.
    Scan(ScanArgs),
    /// Equilibrium density on [0, γ], or the resolvent on a contour.
    Measure(MeasureArgs),
    /// Run the verification suites and print a JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    /// Number of particles N.
    #[arg(long = "N", visible_alias = "n")]
    pub n: Option<u64>,

    /// Lattice parameter M (N ≤ M).
    #[arg(long = "M", visible_alias = "m")]
    pub m: Option<u64>,

    /// Lattice parameter L (N ≤ L - 2).
    #[arg(long = "L", visible_alias = "l")]
    pub l: Option<u64>,

    /// Comma-separated exact points: integers, decimals or p/q.
    #[arg(long, value_delimiter = ',')]
    pub x: Option<Vec<String>>,

    /// Weight anisotropy Δ; with --alpha adds the partition function Z.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,

    /// Field weight α.
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Skip the brute-force log-gas sum.
    #[arg(long)]
    pub no_loggas: bool,
}

#[derive(Debug, Args)]
pub struct GeometryArgs {
    /// Aspect ratio λ ≥ 1.
    #[arg(long)]
    pub lambda: Option<f64>,

    /// Aspect ratio μ ≥ 1; defaults to λ.
    #[arg(long)]
    pub mu: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,

    /// Explicit comma-separated grid.
    #[arg(long, value_delimiter = ',')]
    pub x: Option<Vec<f64>>,

    #[arg(long)]
    pub x_start: Option<f64>,

    #[arg(long)]
    pub x_stop: Option<f64>,

    /// Number of grid points between --x-start and --x-stop inclusive.
    #[arg(long)]
    pub count: Option<usize>,

    #[arg(long, value_enum)]
    pub spacing: Option<Spacing>,

    /// Weight anisotropy Δ; with --alpha adds the free energy F.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,

    #[arg(long)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,

    #[arg(long)]
    pub x: Option<f64>,

    /// Number of equally spaced points on [0, γ].
    #[arg(long)]
    pub points: Option<usize>,

    /// Tabulate W(z) at this many points of a circle around [0, γ] instead.
    #[arg(long)]
    pub contour: Option<usize>,

    /// Radius of the contour, centred at γ/2; must exceed γ/2.
    #[arg(long)]
    pub radius: Option<f64>,

    /// Side of a critical value to evaluate on when x sits on one.
    #[arg(long, value_enum)]
    pub boundary_side: Option<BoundarySide>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite to run; repeat for several. All suites by default.
    #[arg(long)]
    pub suite: Option<Vec<String>>,

    /// Largest N of the exact sweeps.
    #[arg(long)]
    pub max_n: Option<u64>,

    /// Lattice sizes of the convergence study.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<u64>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Spacing {
    Lin,
    #[default]
    Log,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundarySide {
    Lower,
    Upper,
}
