use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "lhur", version, about = "Cartier operators, Artin-Schreier covers and level-graph strata in characteristic p")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FieldArg {
    /// Field designator `p^k`.
    #[arg(long, env = "LHUR_FIELD", default_value = "2^4")]
    pub field: String,
}

#[derive(Debug, Args)]
pub struct FormArgs {
    #[command(flatten)]
    pub field: FieldArg,
    /// Rational function f, read as the form f·dy (or f·dy/dx).
    #[arg(long, short = 'e')]
    pub expr: String,
    /// Parameter binding `name=element`, repeatable.
    #[arg(long = "bind", value_name = "NAME=VALUE")]
    pub bind: Vec<String>,
    #[arg(long, default_value = "y")]
    pub var: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cartier operator of the differential f·dy.
    Cartier(FormArgs),
    /// Twisted Cartier operator of the bivariant form f·dy/dx.
    Tc(FormArgs),
    /// Exactness of f·dy/dx, with an antiderivative as witness.
    Exact(FormArgs),
    /// Quasi-exactness of f·dy/dx, with the constant as witness.
    QuasiExact(FormArgs),
    /// Artin-Schreier cover y^p - y = g(x).
    Ascover(AscoverArgs),
    /// Level graphs: validation, ledgers, monoid ranks, enumeration.
    #[command(subcommand)]
    Strata(StrataCommand),
    /// Exact and quasi-exact loci of marked lines.
    #[command(subcommand)]
    Loci(LociCommand),
    /// Recomputes the genus-one, four-point example in characteristic 2.
    Example6(Example6Args),
}

#[derive(Debug, Args)]
pub struct AscoverArgs {
    #[command(flatten)]
    pub field: FieldArg,
    /// Right-hand side g(x).
    #[arg(long)]
    pub rhs: String,
    #[arg(long = "bind", value_name = "NAME=VALUE")]
    pub bind: Vec<String>,
    /// Marked unramified point (element or `inf`), repeatable.
    #[arg(long = "mark")]
    pub mark: Vec<String>,
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Graph JSON file; standard input when absent or `-`.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Emit Graphviz instead of JSON.
    #[arg(long)]
    pub dot: bool,
}

#[derive(Debug, Args)]
pub struct DataArgs {
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    #[arg(long)]
    pub h: u64,
    #[arg(long, default_value_t = 0)]
    pub g: u64,
    /// Ramification indices λ_i, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub lambda: Vec<u32>,
    /// Wild data ξ_i, comma separated; zeros when absent.
    #[arg(long, value_delimiter = ',')]
    pub xi: Vec<u32>,
    #[arg(long, default_value = "mixed")]
    pub regime: String,
}

#[derive(Debug, Subcommand)]
pub enum StrataCommand {
    Validate(GraphInput),
    /// Dimension ledger of the stratum.
    Dim(GraphInput),
    /// Rank of the minimal log monoid.
    Monoid(GraphInput),
    /// Irreducible components (or all strata with `--all`) for given Hurwitz data.
    Enumerate {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Exact,
    QuasiExact,
}

#[derive(Debug, Args)]
pub struct PatternArgs {
    #[command(flatten)]
    pub field: FieldArg,
    /// Orders m_1, …, m_n summing to 2p - 2.
    #[arg(long, allow_hyphen_values = true)]
    pub pattern: String,
    #[arg(long, value_enum, default_value_t = KindArg::Exact)]
    pub kind: KindArg,
}

#[derive(Debug, Subcommand)]
pub enum LociCommand {
    /// All configurations in the locus with three markings pinned.
    Search {
        #[command(flatten)]
        pattern: PatternArgs,
        /// `0,1,inf` pins the last markings; `i=q,…` pins marking i at q.
        #[arg(long)]
        pin: Option<String>,
    },
    /// Tangent-space dimension at a configuration, or at every searched one.
    Tangent {
        #[command(flatten)]
        pattern: PatternArgs,
        /// Points of the configuration, comma separated.
        #[arg(long)]
        config: Option<String>,
        #[arg(long)]
        pin: Option<String>,
    },
    /// Closed-form dimension of the locus.
    Formula {
        #[command(flatten)]
        pattern: PatternArgs,
    },
}

#[derive(Debug, Args)]
pub struct Example6Args {
    /// A characteristic-2 field; the checks do not depend on it.
    #[arg(long, default_value = "2^4")]
    pub field: String,
    /// Changes the slope of the first graph to 2 as a negative control.
    #[arg(long)]
    pub perturb: bool,
}
