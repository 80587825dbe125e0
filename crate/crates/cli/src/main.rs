mod cmd;
mod output;
mod parse;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cxc_core::Q;

use output::{Format, UsageError};

#[derive(Parser, Debug)]
#[command(name = "cxc", version, about = "Expanding dynamical systems: dimensions, tilings, kneading and cover checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a weighted multigraph file.
    Graph(GraphArgs),
    /// Solve the dimension equations of a multigraph.
    Dim(DimArgs),
    /// Build the interval system of a multigraph and estimate box dimensions.
    Gdms(GdmsArgs),
    /// Skew product over the interval system.
    Skew(SkewArgs),
    /// Two-map dendrite IFS with complex contraction.
    #[command(subcommand)]
    Ifs(IfsCommand),
    /// Generalized Menger sponges.
    #[command(subcommand)]
    Menger(MengerCommand),
    /// Maps on the square pillowcase.
    #[command(subcommand)]
    Pillow(PillowCommand),
    /// Run the cover-sequence checks on one of the systems.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct OutArgs {
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; inferred from the --out extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    /// Graph file (`vertices n` then `edge src dst degree` lines, 1-based).
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimMode {
    /// s with lambda(A_{1/s}) = 1.
    Conformal,
    /// delta with lambda(A_{alpha/delta}) = 1; needs --alpha.
    Hausdorff,
    /// Spectral radius of A_alpha; needs --alpha.
    Radius,
    /// Perron vector of A_alpha; needs --alpha.
    Perron,
}

#[derive(Args, Debug)]
pub struct DimArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value = "conformal")]
    pub mode: DimMode,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = cxc_core::dimension::DEFAULT_TOL)]
    pub tol: f64,
    /// Include every (exponent, radius) evaluation of the bisection.
    #[arg(long)]
    pub trace: bool,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug)]
pub struct SystemArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Snowflake exponent in (0, 1].
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// Distance between distinct base intervals.
    #[arg(long)]
    pub cross_distance: Option<f64>,
    /// Comma-separated 1-based edges whose branch reverses orientation.
    #[arg(long, value_delimiter = ',')]
    pub reverse: Vec<usize>,
}

#[derive(Args, Debug)]
pub struct GdmsArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Deepest cylinder level used for covers and box counting.
    #[arg(long, default_value_t = 8)]
    pub depth: usize,
    /// Also fit d_alpha against d over this many random repellor pairs.
    #[arg(long)]
    pub snowflake_pairs: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug)]
pub struct SkewArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, default_value_t = 8)]
    pub depth: usize,
    /// Orbit length for CSV output.
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = cxc_core::dimension::DEFAULT_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Clone)]
pub struct LambdaArgs {
    /// Contraction `re,im` (or a real number) with 1/2 <= |lambda| < 1.
    #[arg(long, value_parser = parse::lambda, allow_hyphen_values = true)]
    pub lambda: num_complex::Complex64,
}

#[derive(Subcommand, Debug)]
pub enum IfsCommand {
    /// Attractor points at a given address depth (CSV or PGM).
    Points {
        #[command(flatten)]
        lambda: LambdaArgs,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// Raster side in pixels for PGM output.
        #[arg(long, default_value_t = 512)]
        size: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Overlap of the two halves of the attractor.
    Overlap {
        #[command(flatten)]
        lambda: LambdaArgs,
        #[arg(long, default_value_t = 16)]
        depth: usize,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Kneading sequence of the quotient map.
    Kneading {
        #[command(flatten)]
        lambda: LambdaArgs,
        /// Number of symbols.
        #[arg(long, default_value_t = 16)]
        length: usize,
        #[arg(long, default_value_t = 16)]
        depth: usize,
        #[arg(long)]
        tol: Option<f64>,
        /// Compare with the real quadratic z^2 + c.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "angle")]
        c: Option<f64>,
        /// Compare with the doubling-map sequence of a rational angle `p/q`.
        #[arg(long, value_parser = parse::rational)]
        angle: Option<Q>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Reference kneading sequence of z^2 + c or of an external angle.
    Reference {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "angle", conflicts_with = "angle")]
        c: Option<f64>,
        #[arg(long, value_parser = parse::rational)]
        angle: Option<Q>,
        #[arg(long, default_value_t = 16)]
        length: usize,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoldArg {
    Reflect,
    Translate,
}

#[derive(Args, Debug, Clone)]
pub struct MengerArgs {
    /// Maximum number of coordinates allowed in the middle third.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Comma-separated odd expansion factors, one per coordinate.
    #[arg(long, value_delimiter = ',', default_values_t = [3u32, 3, 3])]
    pub factors: Vec<u32>,
    #[arg(long, value_enum, default_value = "reflect")]
    pub fold: FoldArg,
}

#[derive(Subcommand, Debug)]
pub enum MengerCommand {
    /// Depth-limited membership of one point.
    Query {
        #[command(flatten)]
        params: MengerArgs,
        /// Comma-separated coordinates; `p/q` or integer entries make the test exact.
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long, default_value_t = cxc_core::menger::DEFAULT_BOUNDARY_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Raster of a coordinate slice (PGM).
    Slice {
        #[command(flatten)]
        params: MengerArgs,
        /// The two free coordinates, 1-based.
        #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2])]
        axes: Vec<usize>,
        /// Values of the remaining coordinates as `p/q`, in order; zero when omitted.
        #[arg(long, value_delimiter = ',', value_parser = parse::rational)]
        fixed: Vec<Q>,
        #[arg(long, default_value_t = 243)]
        size: u32,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Membership against the closed form and the local homothety of the map.
    Check {
        #[command(flatten)]
        params: MengerArgs,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ParamArg {
    /// Parameter `a` in [0, 1/8] as `p/q`.
    #[arg(long, value_parser = parse::rational)]
    pub a: Q,
}

#[derive(Subcommand, Debug)]
pub enum PillowCommand {
    /// Pullback tilings of the two faces (SVG or JSON).
    Subdivide {
        #[command(flatten)]
        a: ParamArg,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Postcritical set.
    Pcs {
        #[command(flatten)]
        a: ParamArg,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Pullback of the horizontal curve and its Thurston matrix.
    Obstruct {
        #[command(flatten)]
        a: ParamArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Affine pieces, singular values and the two-step expansion bound.
    Diff {
        #[command(flatten)]
        a: ParamArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Tent-map orbit of `a`.
    Tent {
        #[command(flatten)]
        a: ParamArg,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Sampled forward invariance of the 1-skeleton.
    Skeleton {
        #[command(flatten)]
        a: ParamArg,
        #[arg(long, default_value_t = 10_000)]
        samples: i128,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemKind {
    /// Interval system of --graph.
    Gdms,
    /// Skew product over the interval system of --graph.
    Skew,
    /// The real dendrite map on [0, 2].
    Half,
    /// Menger sponge map.
    Menger,
    /// Pillowcase map on a square grid.
    Pillow,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub system: SystemKind,
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// Use the snowflaked metric on the interval system.
    #[arg(long)]
    pub snowflaked: bool,
    #[command(flatten)]
    pub menger: MengerArgs,
    #[arg(long, value_parser = parse::rational)]
    pub a: Option<Q>,
    /// Pillowcase grid resolution: cells of side 2^-grid.
    #[arg(long, default_value_t = 6)]
    pub grid: u32,
    /// Pillowcase initial cover by stars of the 2^-coarse grid; faces when omitted.
    #[arg(long)]
    pub coarse: Option<u32>,
    /// Number of refinement levels; a per-system default when omitted.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Largest iterate in the degree and distortion checks.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1 << 18)]
    pub max_elements: usize,
    #[command(flatten)]
    pub out: OutArgs,
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Graph(args) => cmd::graph::graph(args),
        Command::Dim(args) => cmd::graph::dim(args),
        Command::Gdms(args) => cmd::graph::gdms(args),
        Command::Skew(args) => cmd::graph::skew(args),
        Command::Ifs(c) => cmd::ifs::run(c),
        Command::Menger(c) => cmd::menger::run(c),
        Command::Pillow(c) => cmd::pillow::run(c),
        Command::Verify(args) => cmd::verify::run(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.is::<UsageError>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
