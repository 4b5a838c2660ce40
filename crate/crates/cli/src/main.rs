use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hasse_core::{Error, Limits};

mod commands;

/// Finite posets, distributive lattices and submodule-lattice reconstruction.
#[derive(Debug, Parser)]
#[command(name = "hasse", version)]
struct Cli {
    /// Cap on every enumerated size (ideals, lattice elements, chains).
    #[arg(long, global = true, env = "LATTICE_LIMIT", value_name = "N")]
    limit: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Test a lattice property; exits 1 when it fails.
    Check {
        /// Lattice JSON file.
        file: PathBuf,
        #[arg(long, value_enum)]
        property: Property,
        /// Compute interval classes even if the lattice is not modular.
        #[arg(long)]
        allow_nonmodular: bool,
    },
    /// Down-set lattices and join-irreducible posets.
    Birkhoff {
        #[command(subcommand)]
        action: BirkhoffAction,
    },
    /// Build J(P) one join irreducible at a time, writing a DOT file per step.
    Stanley {
        /// Poset JSON file.
        file: PathBuf,
        #[arg(long, value_name = "DIR")]
        trace_dir: PathBuf,
    },
    /// Free distributive lattices.
    Freedist {
        #[command(subcommand)]
        action: FreedistAction,
    },
    /// Number of monotone Boolean functions of K variables.
    Dedekind {
        #[arg(long, value_name = "K")]
        n: usize,
    },
    /// Rebuild a lattice of submodules from its join irreducibles.
    Reconstruct {
        /// Reconstruction spec JSON file.
        file: PathBuf,
        /// Adjoin the module itself as top and the simple socle as bottom.
        #[arg(long)]
        with_bounds: bool,
        /// Add order relations implied by the composition factors.
        #[arg(long)]
        infer: bool,
        /// Write the labelled lattice as JSON.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Write a Hasse diagram as DOT.
    Render {
        /// Poset, lattice or reconstruction spec JSON file.
        file: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Composition factors of an element of a labelled lattice.
    Factors {
        /// Labelled lattice or reconstruction spec JSON file.
        file: PathBuf,
        element: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Property {
    Modular,
    Distributive,
    Semimodular,
    Graded,
    Multfree,
    Jordanholder,
}

#[derive(Debug, Subcommand)]
enum BirkhoffAction {
    /// Lattice of order ideals of a poset, as labelled lattice JSON.
    Ideals {
        file: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Poset of nonzero join irreducibles of a distributive lattice.
    Irr {
        file: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Check L ≅ J(irr(L)) and irr(J(P)) ≅ P; exits 1 when it fails.
    Roundtrip { file: PathBuf },
}

#[derive(Debug, Subcommand)]
enum FreedistAction {
    /// Number of elements of extended Λ_K.
    Count {
        #[arg(long, value_name = "K")]
        n: usize,
    },
    /// Write Λ_K as lattice JSON.
    Generate {
        #[arg(long, value_name = "K")]
        n: usize,
        /// Include the adjoined bottom and top.
        #[arg(long)]
        extended: bool,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Canonical clause form of an expression such as "P1 & (P2 | P3)".
    Dnf {
        expr: String,
        /// Number of generators (defaults to the largest one used).
        #[arg(long)]
        arity: Option<usize>,
    },
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Success,
    PropertyFails,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::SizeLimitExceeded { .. } | Error::ChainCapExceeded(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let limits = match cli.limit {
        Some(n) => Limits::default().with_global_cap(n),
        None => Limits::default(),
    };
    match commands::run(cli.command, &limits) {
        Ok(Verdict::Success) => ExitCode::SUCCESS,
        Ok(Verdict::PropertyFails) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
