//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "kstab",
    version,
    about = "Exact K-stability invariants, CM weights and VGIT chambers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the JSON document to this path (`-` for standard output).
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,

    /// Write an SVG drawing (two-coordinate polytopes and chamber fans).
    #[arg(long, global = true, value_name = "PATH")]
    pub svg: Option<PathBuf>,

    /// Add approximate decimals next to exact values; never authoritative.
    #[arg(long, global = true)]
    pub decimal: bool,

    /// Cap on candidate one-parameter subgroups and related counts.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
}

#[derive(Debug, Args, Clone)]
pub struct Pair {
    /// Dimension of the ambient projective space.
    #[arg(long)]
    pub n: u32,

    /// Comma-separated hypersurface degrees.
    #[arg(long, value_delimiter = ',', required = true)]
    pub degrees: Vec<u32>,
}

#[derive(Debug, Args, Clone)]
pub struct Coefficients {
    /// Comma-separated rational coefficients, e.g. `1/3,1/5`.
    #[arg(long, allow_hyphen_values = true)]
    pub coefficients: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    All,
    Def31,
    Lem32,
    Lem41,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The coefficient vector where every boundary beta invariant vanishes.
    AVector(PairArgs),
    /// Beta invariants of the boundary hypersurfaces.
    Beta(InvariantArgs),
    /// S-invariants of the boundary hypersurfaces.
    SInvariant(InvariantArgs),
    /// K-semistable domain of the coefficient vector.
    KssPolytope(PairArgs),
    /// Radii of the successive projective-cone degenerations.
    ConeChain(PairArgs),
    /// CM weight of a product test configuration.
    CmWeight(CmWeightArgs),
    /// Linearization induced by the CM line bundle on boundary tuples.
    EffectiveLinearization(EffectiveArgs),
    /// Hilbert-Mumford test of a tuple of forms.
    GitCheck(GitCheckArgs),
    /// Walls and chambers of the linearization simplex.
    VgitChambers(VgitArgs),
    /// Graded-quotient identities of the projective-cone degenerations.
    ConeVerify(ConeVerifyArgs),
    /// One document bundling the a-vector, polytope, chambers and cone checks.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[command(flatten)]
    pub pair: Pair,
}

#[derive(Debug, Args)]
pub struct InvariantArgs {
    #[command(flatten)]
    pub pair: Pair,

    #[command(flatten)]
    pub coefficients: Coefficients,

    /// 1-based boundary index; all indices when omitted.
    #[arg(long)]
    pub index: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CmWeightArgs {
    #[arg(long)]
    pub n: u32,

    /// JSON array of forms.
    #[arg(long, value_name = "PATH")]
    pub forms: PathBuf,

    /// Positive multipliers of the boundary forms.
    #[command(flatten)]
    pub coefficients: Coefficients,

    /// Comma-separated sum-zero integer weights.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub one_ps: Vec<i64>,

    /// `symbolic` or a rational in (0, 1].
    #[arg(long, default_value = "symbolic")]
    pub beta: String,

    #[arg(long, value_enum, default_value = "all")]
    pub route: RouteArg,
}

#[derive(Debug, Args)]
pub struct EffectiveArgs {
    #[command(flatten)]
    pub pair: Pair,

    /// Positive multipliers of the boundary forms.
    #[command(flatten)]
    pub coefficients: Coefficients,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct GitCheckArgs {
    /// JSON array of forms.
    #[arg(long, value_name = "PATH")]
    pub forms: PathBuf,

    /// Comma-separated positive weights; all 1 when omitted.
    #[arg(long)]
    pub linearization: Option<String>,

    /// `identity`, `permutations`, `random:<count>` or a JSON file of matrices.
    #[arg(long, default_value = "identity")]
    pub frames: String,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct VgitArgs {
    #[command(flatten)]
    pub pair: Pair,

    /// Optional JSON array of forms to classify in every cell.
    #[arg(long, value_name = "PATH")]
    pub forms: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConeVerifyArgs {
    #[command(flatten)]
    pub pair: Pair,

    #[arg(long, default_value_t = 10)]
    pub m_max: u32,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub pair: Pair,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, default_value_t = 10)]
    pub m_max: u32,
}
