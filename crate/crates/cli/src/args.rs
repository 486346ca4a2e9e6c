use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "mdseries",
    version,
    about = "Exact series tables and finite-order verifiers for the monomer-dimer free energy"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Truncation order N.
    #[arg(long, global = true, default_value_t = 6)]
    pub order: usize,

    /// Dimension d as a rational, e.g. `3` or `5/2`.
    #[arg(long, global = true)]
    pub d: Option<String>,

    /// Dimer density p as a rational, e.g. `1/10`.
    #[arg(long, global = true)]
    pub p: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Mayer coefficients: lines `i n/m`, or the single keyword `catalan`.
    #[arg(long = "b-file", global = true)]
    pub b_file: Option<PathBuf>,

    /// Digits after the decimal point in numeric output.
    #[arg(long, global = true, default_value_t = 50)]
    pub precision: usize,

    /// Negative control: add `delta` to input coefficient `k`, as `k:delta`.
    #[arg(long, global = true)]
    pub perturb: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Map between Mayer coefficients and cluster kernels.
    Transform {
        #[command(subcommand)]
        which: TransformKind,
    },
    /// Coefficients a_k of either series expression.
    Coeffs {
        #[command(subcommand)]
        which: CoeffsKind,
    },
    /// Finite-order verification runs.
    Verify {
        #[command(subcommand)]
        which: VerifyKind,
    },
    /// Numeric evaluation.
    Eval {
        #[command(subcommand)]
        which: EvalKind,
    },
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum TransformKind {
    /// J_2..J_N from b (symbolic unless --b-file is given).
    JbarFromB,
    /// b_2..b_N from symbolic J.
    BFromJbar,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum CoeffsKind {
    /// a_k in the kernels J (or in b via the forward map with --b-file).
    First,
    /// a'_k in the Mayer coefficients b.
    Second,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum VerifyKind {
    /// Both composition routes of the master identity.
    Master,
    /// Catalan parts 1 and 2 and the closed forms.
    Catalan,
    /// Vanishing kernels at the Catalan sequence.
    Part3,
    /// Triangularity of all four maps.
    Triangularity,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum EvalKind {
    /// Q_1 + Q_2 at numeric d and p by both routes.
    Lambda,
}
