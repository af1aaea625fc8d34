use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Format;

#[derive(Parser, Debug)]
#[command(name = "scattered", version, about = "Scattered subspaces, linear sets and the objects built from them")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Enumeration budget (overrides SCATTER_BUDGET).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for searches.
    #[arg(long, global = true, default_value_t = 1)]
    pub parallel: usize,
    /// Include elapsed time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub e: Option<u32>,
    /// Order of the base field, as an alternative to --p/--e.
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long, default_value_t = 2)]
    pub t: usize,
    #[arg(long, default_value_t = 2)]
    pub r: usize,
    /// Irreducible polynomial of GF(q^t) over GF(q), low degree first.
    #[arg(long)]
    pub irr: Option<String>,
    /// Irreducible polynomial of GF(q) over GF(p), low degree first.
    #[arg(long)]
    pub base_irr: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct SubspaceArg {
    /// Matrix file whose rows span U.
    #[arg(long)]
    pub subspace: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    External,
    Tangent,
    Secant,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Field tower data and exhaustive Frobenius, trace and norm checks.
    Field {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Build D_{r,t,q} and verify that it partitions the nonzero vectors.
    Spread {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Intersection profile, scatteredness and bounds for U.
    Analyze {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        subspace: SubspaceArg,
    },
    /// One scattered extension of U (zero subspace by default).
    Extend {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        subspace: SubspaceArg,
    },
    /// Greedy, randomized or exhaustive search for large scattered subspaces.
    Search {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        target: Option<usize>,
        /// Randomized greedy restarts; 0 runs the deterministic greedy pass.
        #[arg(long, default_value_t = 0)]
        restarts: u64,
        #[arg(long)]
        exhaustive: bool,
    },
    /// Dimension bounds for scattered subspaces.
    Bounds {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// The linear set B(U).
    Linset {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        subspace: SubspaceArg,
    },
    /// U^⊥ under the standard trace form and its linear set.
    Dual {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        subspace: SubspaceArg,
    },
    /// Splash of PG(r-1, q) on a line of PG(r-1, q^t).
    Splash {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value = "external")]
        kind: KindArg,
    },
    /// Secant lines and transversals of a scattered linear set in PG(2n-1, q^3).
    Pseudoregulus {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        subspace: SubspaceArg,
    },
    /// Hyperplane intersection sizes of B(U).
    Spectrum {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        subspace: SubspaceArg,
    },
    /// The two-weight code of a maximum scattered subspace.
    Code {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        subspace: SubspaceArg,
    },
    /// Multiple blocking property of B(U).
    Blocking {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        subspace: SubspaceArg,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Use the first m basis vectors of the constructed maximum subspace.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Rank distance of {a x + b f(x)} and the scattered test for {(x, f(x))}.
    Mrd {
        #[command(flatten)]
        field: FieldArgs,
        /// Coefficients of f = Σ c_i x^{q^i}.
        #[arg(long)]
        poly: String,
    },
    /// Translation hyperoval from a scattered U, q = 2, r = 2.
    Hyperoval {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        subspace: SubspaceArg,
    },
    /// Translation cap in AG(r-1, 2^t) from a scattered U.
    Cap {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        subspace: SubspaceArg,
        /// Use the witness of an exhaustive maximum search.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Design and parallelism axioms of the ABB construction.
    DesignCheck {
        #[command(flatten)]
        field: FieldArgs,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Field { .. } => "field",
            Command::Spread { .. } => "spread",
            Command::Analyze { .. } => "analyze",
            Command::Extend { .. } => "extend",
            Command::Search { .. } => "search",
            Command::Bounds { .. } => "bounds",
            Command::Linset { .. } => "linset",
            Command::Dual { .. } => "dual",
            Command::Splash { .. } => "splash",
            Command::Pseudoregulus { .. } => "pseudoregulus",
            Command::Spectrum { .. } => "spectrum",
            Command::Code { .. } => "code",
            Command::Blocking { .. } => "blocking",
            Command::Mrd { .. } => "mrd",
            Command::Hyperoval { .. } => "hyperoval",
            Command::Cap { .. } => "cap",
            Command::DesignCheck { .. } => "design-check",
        }
    }
}
