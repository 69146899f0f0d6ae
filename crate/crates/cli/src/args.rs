use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperappell::Rational;

#[derive(Debug, Parser)]
#[command(name = "hyperappell", version, about = "Exact hypercomplex Appell polynomial sequences in Cl(0,n)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate the coefficient table of a sequence
    Gen(SeqArgs),
    /// Certify monogenicity, the Appell ladder and the intertwining identity
    Verify(VerifyArgs),
    /// Evaluate phi_0..phi_m at a paravector point
    Eval(EvalArgs),
    /// Print the creation, derivation, Pascal and transfer matrices
    Matrices(MatricesArgs),
    /// Evaluate the truncated generalized exponential Exp_n
    Exp(ExpArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Canonical,
    Bernoulli,
    Euler,
    FrobeniusEuler,
    Hermite,
}

impl FamilyName {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyName::Canonical => "canonical",
            FamilyName::Bernoulli => "bernoulli",
            FamilyName::Euler => "euler",
            FamilyName::FrobeniusEuler => "frobenius-euler",
            FamilyName::Hermite => "hermite",
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SeqArgs {
    /// Number of Clifford generators
    #[arg(long)]
    pub n: Option<usize>,
    /// Highest degree
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, value_enum, default_value = "canonical")]
    pub family: FamilyName,
    /// Frobenius-Euler parameter, p/q
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub lambda: Option<Rational>,
    /// Degree s of the monogenic factor Q_s
    #[arg(long = "shift", default_value_t = 0)]
    pub shift: usize,
    /// Leading coefficient, p/q
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, default_value = "1")]
    pub c0: Rational,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    /// Verify a sequence read from a JSON file produced by `gen`
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    /// Comma-separated rationals x0,x1,..,xn
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Add a decimal rendering of each value
    #[arg(long = "float")]
    pub float: bool,
}

#[derive(Debug, Clone, Args)]
pub struct MatricesArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    /// Include the derivation matrix for the vector variable (needs --n)
    #[arg(long)]
    pub tilde: bool,
    /// Argument of the Pascal matrix P(x0)
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true, default_value = "1")]
    pub x0: Rational,
}

#[derive(Debug, Clone, Args)]
pub struct ExpArgs {
    /// Number of Clifford generators; inferred from --point when omitted
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Truncation order T
    #[arg(long, default_value_t = 10)]
    pub order: usize,
    #[arg(long = "float")]
    pub float: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}
