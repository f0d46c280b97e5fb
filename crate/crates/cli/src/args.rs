use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use unires::resolution::{GuardMode, Method, SortDirection};

#[derive(Debug, Parser)]
#[command(name = "unires", version, about = "Convert multi-resolution connectivity networks and measure them")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Move all connectivity onto hierarchy leaves.
    Convert(ConvertArgs),
    /// Whole-network statistics as JSON and a text table.
    Metrics(MetricsArgs),
    /// Per-vertex centralities and top-k rankings.
    Centrality(CentralityArgs),
    /// Vertex ordering and edge coordinates for an adjacency plot.
    Spyplot(SpyplotArgs),
    /// Exponential fit to the total degree distribution.
    DegreeFit(DegreeFitArgs),
    /// Print effective resistances of the symmetrized graph.
    Resistance(ResistanceArgs),
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub hierarchy: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = SortArg::Desc)]
    pub sort_direction: SortArg,
    #[arg(long, value_enum, default_value_t = GuardArg::Directed)]
    pub guard_mode: GuardArg,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Adds vertices that appear only in the hierarchy.
    #[arg(long)]
    pub hierarchy: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CentralityArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub hierarchy: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub top_k: u64,
    #[arg(long, default_value_t = 0.85, value_parser = parse_damping)]
    pub damping: f64,
}

#[derive(Debug, Args)]
pub struct SpyplotArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub hierarchy: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DegreeFitArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub hierarchy: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ResistanceArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Every unordered vertex pair instead of only adjacent ones.
    #[arg(long)]
    pub all_pairs: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Inherit,
    Disinherit,
    Kron,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Inherit => Method::Inherit,
            MethodArg::Disinherit => Method::Disinherit,
            MethodArg::Kron => Method::KronSampling,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SortArg {
    Desc,
    Asc,
}

impl From<SortArg> for SortDirection {
    fn from(s: SortArg) -> Self {
        match s {
            SortArg::Desc => SortDirection::Descending,
            SortArg::Asc => SortDirection::Ascending,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GuardArg {
    Directed,
    Any,
}

impl From<GuardArg> for GuardMode {
    fn from(g: GuardArg) -> Self {
        match g {
            GuardArg::Directed => GuardMode::Directed,
            GuardArg::Any => GuardMode::Any,
        }
    }
}

fn parse_damping(s: &str) -> Result<f64, String> {
    let d: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if d > 0.0 && d < 1.0 {
        Ok(d)
    } else {
        Err(format!("damping must lie strictly between 0 and 1, got {d}"))
    }
}
