use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "pade",
    version,
    about = "Reduced Pade approximants with minimal-degree denominators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced approximant with indices, rank data and roots
    Approximate(OrderArgs),
    /// Classical baseline next to the reduced approximant, with doublets
    Compare(OrderArgs),
    /// Zeros and poles of the reduced approximant with multiplicities
    Roots(OrderArgs),
    /// Grid of reduced approximants grouped into equivalence classes
    Table(TableArgs),
}

#[derive(Args, Debug)]
pub struct OrderArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Numerator degree bound
    #[arg(short = 'm', value_name = "INT")]
    pub m: usize,

    /// Denominator degree bound
    #[arg(short = 'n', value_name = "INT")]
    pub n: usize,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Largest numerator degree in the grid
    #[arg(long, value_name = "INT")]
    pub mmax: usize,

    /// Largest denominator degree in the grid
    #[arg(long, value_name = "INT")]
    pub nmax: usize,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = true)]
pub struct InputArgs {
    /// Numerator coefficients, lowest order first, space separated (`re` or `re,im`)
    #[arg(
        long,
        value_name = "COEFFS",
        allow_hyphen_values = true,
        requires = "den",
        conflicts_with = "coeffs"
    )]
    pub num: Option<String>,

    /// Denominator coefficients, lowest order first, space separated (`re` or `re,im`)
    #[arg(
        long,
        value_name = "COEFFS",
        allow_hyphen_values = true,
        requires = "num",
        conflicts_with = "coeffs"
    )]
    pub den: Option<String>,

    /// Series coefficient file (one `re [im]` per line, optional `# center re [im]` header)
    #[arg(long, value_name = "PATH")]
    pub coeffs: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Expansion point `re[,im]`
    #[arg(long, value_name = "RE[,IM]", allow_hyphen_values = true)]
    pub center: Option<String>,

    /// Absolute singular value threshold for every rank decision
    #[arg(long, env = "PADE_TOL", value_name = "FLOAT")]
    pub tol: Option<f64>,

    /// Keep numerically vanishing coefficients instead of zeroing them
    #[arg(long)]
    pub no_cleanup: bool,

    /// Relative distance under which a zero and a pole count as a doublet
    #[arg(long, value_name = "FLOAT", default_value_t = pade_core::DEFAULT_PAIRING_TOL)]
    pub pairing_tol: f64,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}
