//! twistk: Mackey-machine decompositions of equivariant K-theory for
//! finite groups, with exact character tables, obstruction cocycles and
//! twisted Atiyah-Hirzebruch computations.

mod algebra;
mod load;
mod manifest;
mod render;
mod topo;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use twistk_core::ToleranceConfig;

/// Exit codes: 0 success, 1 computation inconsistency, 2 bad input.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: String) -> Self {
        Failure { code: 2, message }
    }

    pub fn computation(message: String) -> Self {
        Failure { code: 1, message }
    }
}

impl From<twistk_core::Error> for Failure {
    fn from(e: twistk_core::Error) -> Self {
        use twistk_core::Error as E;
        let code = match &e {
            E::Parse(_)
            | E::InvalidPermutation(_)
            | E::InvalidCayley(_)
            | E::InvalidAction(_)
            | E::NotASubgroup(_)
            | E::NotNormal
            | E::OrderCapExceeded { .. }
            | E::GroupMismatch
            | E::Invalid(_) => 2,
            E::Inconsistency(_) | E::SplittingFailure | E::SnapFailure { .. } => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<twistk_topology::Error> for Failure {
    fn from(e: twistk_topology::Error) -> Self {
        use twistk_topology::Error as E;
        let code = match &e {
            E::Parse(_) | E::Invalid(_) | E::DegreeMismatch(_) | E::CapExceeded(_) => 2,
            E::D3NotSquareZero(_)
            | E::NoSurvivor
            | E::InconsistentTables(_)
            | E::CollapseNotForced { .. } => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GlobalOpts {
    pub json: bool,
    pub seed: u64,
    pub tol: ToleranceConfig,
}

#[derive(Parser)]
#[command(
    name = "twistk",
    version,
    about = "Mackey-machine decompositions and twisted K-theory computations for finite groups"
)]
struct Cli {
    /// emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// RNG seed for the representation-matrix layer
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// matrix residual tolerance
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// snapping tolerance for roots of unity
    #[arg(long, global = true, default_value_t = 1e-6)]
    snap_tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact character table of a group
    Chartable {
        /// `catalog:<name>` or a JSON group file
        group: String,
        /// write unitary representation matrices to a JSON file
        #[arg(long, value_name = "FILE")]
        dump_reps: Option<PathBuf>,
    },
    /// Decompose R(G) along the orbits of Irr(A) for a normal subgroup A
    Mackey {
        group: String,
        /// normal subgroup: `center`, `z<k>`, `gen:<i,..>`, `elements:<i,..>`, `trivial`, `full`
        #[arg(long)]
        normal: String,
        /// verify the bundle decomposition on a JSON bundle file
        #[arg(long, value_name = "FILE")]
        bundle: Option<PathBuf>,
    },
    /// Frobenius induction of a subgroup character
    Induce {
        group: String,
        #[arg(long)]
        subgroup: String,
        /// index of the character in the subgroup's table
        #[arg(long = "char", value_name = "INDEX")]
        char_index: usize,
    },
    /// Verify the vector-bundle decomposition theorem on a bundle file
    BundleVerify {
        group: String,
        #[arg(long)]
        normal: String,
        #[arg(long, value_name = "FILE")]
        bundle: PathBuf,
    },
    /// Twisted Atiyah-Hirzebruch spectral sequence
    Ahss {
        /// `catalog:<name>` or a JSON space file
        #[arg(long)]
        space: String,
        /// twist class expression (`x^2*y + x*y^2`, `z3`, or `0`)
        #[arg(long)]
        twist: String,
        /// run the mod-2 (Morava K(1)) page
        #[arg(long)]
        mod2: bool,
        /// run the integral page plus extension resolution and the UCT check
        #[arg(long)]
        integral: bool,
    },
    /// Künneth middle term for the K-theory of a product
    Kunneth {
        /// `catalog:rp2|s2|point` or a JSON K-theory file
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// The full Q8 example: S² × S² with the center acting trivially
    Q8Pipeline,
}

fn run(cli: Cli) -> Result<(), Failure> {
    let opts = GlobalOpts {
        json: cli.json,
        seed: cli.seed,
        tol: ToleranceConfig {
            matrix_tol: cli.tol,
            snap_tol: cli.snap_tol,
        },
    };
    match cli.command {
        Command::Chartable { group, dump_reps } => {
            algebra::cmd_chartable(&group, dump_reps.as_deref(), &opts)
        }
        Command::Mackey {
            group,
            normal,
            bundle,
        } => algebra::cmd_mackey(&group, &normal, bundle.as_deref(), &opts),
        Command::Induce {
            group,
            subgroup,
            char_index,
        } => algebra::cmd_induce(&group, &subgroup, char_index, &opts),
        Command::BundleVerify {
            group,
            normal,
            bundle,
        } => algebra::cmd_bundle_verify(&group, &normal, &bundle, &opts),
        Command::Ahss {
            space,
            twist,
            mod2,
            integral,
        } => topo::cmd_ahss(&space, &twist, mod2, integral, &opts),
        Command::Kunneth { left, right } => topo::cmd_kunneth(&left, &right, &opts),
        Command::Q8Pipeline => topo::cmd_q8_pipeline(&opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
