use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use corona_core::CoronaKind;

/// Corona-vertex and corona-edge products of subdivision graphs: build them,
/// compute resistance distances and Kirchhoff indices, and cross-check the
/// closed forms against a brute-force oracle.
#[derive(Debug, Parser)]
#[command(name = "corona", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the product graph as an edge list plus a vertex-class manifest.
    Build(BuildArgs),
    /// All pairwise resistance distances of the product.
    Resistance(ResistanceArgs),
    /// The Kirchhoff index of the product, with the oracle value alongside.
    Kirchhoff(KirchhoffArgs),
    /// Run the consistency suite over the built-in corpus and/or given pairs.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct Inputs {
    /// Edge-list file for the base graph G1.
    #[arg(long)]
    pub g1: PathBuf,
    /// Edge-list file for the attached graph G2.
    #[arg(long)]
    pub g2: PathBuf,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Edge-list destination; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Manifest destination. Defaults to `<out>.manifest.json` when `--out`
    /// is given; otherwise no manifest is written.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ResistanceArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long, value_enum, default_value_t = Method::Oracle)]
    pub method: Method,
    /// Overrides the entry and residual tolerances.
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct KirchhoffArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    /// Product kind. Implied by `--formula` except for `oracle`, where it
    /// defaults to `vertex`.
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    #[arg(long, value_enum, default_value_t = Formula::Oracle)]
    pub formula: Formula,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Corpus::Builtin)]
    pub corpus: Corpus,
    /// An extra `(G1, G2)` pair of edge-list files; repeatable.
    #[arg(long, num_args = 2, value_names = ["G1", "G2"], action = clap::ArgAction::Append)]
    pub pair: Vec<PathBuf>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Vertex,
    Edge,
}

impl From<Kind> for CoronaKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Vertex => CoronaKind::Vertex,
            Kind::Edge => CoronaKind::Edge,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Oracle,
    ClosedForm,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Formula {
    /// Vertex corona, any G2.
    #[value(name = "thm4.1")]
    VertexGeneral,
    /// Vertex corona, regular G2.
    #[value(name = "cor4.2")]
    VertexRegular,
    /// Edge corona, regular G2.
    #[value(name = "thm4.3")]
    EdgeRegular,
    Oracle,
}

impl Formula {
    pub fn kind(self) -> Option<Kind> {
        match self {
            Formula::VertexGeneral | Formula::VertexRegular => Some(Kind::Vertex),
            Formula::EdgeRegular => Some(Kind::Edge),
            Formula::Oracle => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Corpus {
    Builtin,
    None,
}
