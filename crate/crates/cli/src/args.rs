use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "sod", version, about = "Euler-form lattices of glued categories, computed exactly")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Gram matrix, Serre analysis and Hochschild tables of a lattice
    Invariants(LatticeArgs),
    /// Numerical tests on a class
    Check {
        #[arg(value_enum)]
        what: CheckKind,
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Comma-separated coordinates
        #[arg(long = "class", allow_hyphen_values = true)]
        class: String,
    },
    /// Bounded search for an isometry between two lattices
    Isometry {
        /// Family such as rpg:1,2
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = sod_core::lattice::DEFAULT_BOUND)]
        bound: i64,
    },
    /// Compare each line-bundle complement form with that of a curve
    ClassifyBn {
        #[arg(long)]
        genus: u64,
    },
    /// Recompute every built-in matrix and dimension table
    VerifyAll {
        /// Run only items whose id contains this string
        #[arg(long)]
        filter: Option<String>,
    },
    /// Print a lattice in the lattice file format
    Lattice(LatticeArgs),
    /// Mutate a class through a numerically exceptional class
    Mutate {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long, allow_hyphen_values = true)]
        exceptional: String,
        #[arg(long = "class", allow_hyphen_values = true)]
        class: String,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// Orthogonal complement of a class
    Complement {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long = "class", allow_hyphen_values = true)]
        class: String,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
    },
    /// Line bundles with h0·h1 = g and their expected counts
    Bnp {
        #[arg(long)]
        genus: u64,
    },
    /// Randomized identities, seeded from SOD_SEED
    RandomCheck {
        #[arg(long, default_value_t = 64)]
        cases: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Exceptional,
    Predicates,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

/// A lattice given either as a family or as a lattice file.
#[derive(Args, Debug)]
pub struct LatticeArgs {
    /// augmented, ipg, rpg or bncomp, optionally with parameters (ipg:2,3)
    #[arg(long, required_unless_present = "lattice", conflicts_with = "lattice")]
    pub family: Option<String>,
    #[arg(long)]
    pub genus: Option<u64>,
    #[arg(long)]
    pub g1: Option<u64>,
    #[arg(long)]
    pub g2: Option<u64>,
    #[arg(long)]
    pub h0: Option<u64>,
    #[arg(long)]
    pub h1: Option<u64>,
    /// JSON lattice file
    #[arg(long)]
    pub lattice: Option<PathBuf>,
}
