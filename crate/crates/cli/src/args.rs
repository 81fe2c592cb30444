//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ftpaths::{Element, Vertex};

#[derive(Debug, Parser)]
#[command(name = "ftpaths", version, about = "Replacement paths and distance sensitivity oracles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a seeded random graph
    Gen(GenArgs),
    /// Replacement paths for every edge of the shortest s-t path
    Rp(RpArgs),
    /// Build or query a distance sensitivity oracle
    #[command(subcommand)]
    Dso(DsoCommand),
    /// Cross-check against the brute-force oracles
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Gnp,
    PathPlus,
    Planted,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub model: Model,
    #[arg(long)]
    pub n: usize,
    /// Edge probability (gnp)
    #[arg(long)]
    pub p: Option<f64>,
    /// Extra edges (path-plus)
    #[arg(long)]
    pub q: Option<usize>,
    /// Uniform integer weights `lo:hi` (gnp)
    #[arg(long, value_parser = parse_range)]
    pub weights: Option<(i64, i64)>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; the graph goes to stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DnAlgo {
    Trees,
    Decremental,
}

#[derive(Debug, Args)]
pub struct RpArgs {
    pub graph: PathBuf,
    pub s: Vertex,
    pub t: Vertex,
    #[arg(long, value_enum, default_value_t = DnAlgo::Trees)]
    pub dn_algo: DnAlgo,
    /// Line-delimited JSON records
    #[arg(long)]
    pub json: bool,
    /// Include a witness path per edge
    #[arg(long)]
    pub witness: bool,
}

#[derive(Debug, Subcommand)]
pub enum DsoCommand {
    /// Preprocess a weighted graph and write the oracle to a file
    Build(DsoBuildArgs),
    /// Answer one query from a stored oracle
    Query(DsoQueryArgs),
}

#[derive(Debug, Args)]
pub struct DsoBuildArgs {
    pub graph: PathBuf,
    /// Hop parameter L
    pub l: usize,
    /// Maximum number of failures f
    pub f: usize,
    pub out: PathBuf,
    /// Tree-node budget
    #[arg(long, default_value_t = ftpaths::dso::DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct DsoQueryArgs {
    pub dso: PathBuf,
    pub s: Vertex,
    pub t: Vertex,
    /// Failed element, `v:<id>` or `e:<u>-<v>`; repeatable
    #[arg(long = "fail", value_parser = parse_element)]
    pub fail: Vec<Element>,
    /// Graph the oracle was built from, checked against the stored checksum
    #[arg(long)]
    pub graph: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    Rp,
    Dso,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub graph: PathBuf,
    #[arg(long, value_enum)]
    pub mode: VerifyMode,
    /// Largest vertex count the oracles are run on
    #[arg(long, default_value_t = 5000)]
    pub budget: usize,
    /// Source; defaults to 0
    #[arg(long)]
    pub s: Option<Vertex>,
    /// Target; defaults to the vertex farthest from `s`
    #[arg(long)]
    pub t: Option<Vertex>,
    #[arg(long, value_enum, default_value_t = DnAlgo::Trees)]
    pub dn_algo: DnAlgo,
    #[arg(long, default_value_t = 3)]
    pub l: usize,
    #[arg(long, default_value_t = 1)]
    pub f: usize,
    /// Random queries in dso mode
    #[arg(long, default_value_t = 500)]
    pub queries: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, hide = true)]
    pub corrupt_rd: bool,
}

/// `v:<id>` or `e:<u>-<v>`.
pub fn parse_element(token: &str) -> Result<Element, String> {
    let bad = || format!("malformed failure `{token}`, expected v:<id> or e:<u>-<v>");
    let (kind, rest) = token.split_once(':').ok_or_else(bad)?;
    match kind {
        "v" => rest.parse().map(Element::Vertex).map_err(|_| bad()),
        "e" => {
            let (u, v) = rest.split_once('-').ok_or_else(bad)?;
            Ok(Element::Edge(u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?))
        }
        _ => Err(bad()),
    }
}

fn parse_range(token: &str) -> Result<(i64, i64), String> {
    let bad = || format!("malformed range `{token}`, expected lo:hi");
    let (lo, hi) = token.split_once(':').ok_or_else(bad)?;
    let (lo, hi): (i64, i64) = (lo.parse().map_err(|_| bad())?, hi.parse().map_err(|_| bad())?);
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}
