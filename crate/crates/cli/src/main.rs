use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod run;

#[derive(Parser)]
#[command(name = "tubelat", version, about = "Maximal tubings, L_G, weak-order congruences and tubing Hopf algebras")]
pub struct Cli {
    /// Emit JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for the parallel sweeps.
    #[arg(long, global = true, env = "TUBELAT_JOBS")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone)]
pub struct GraphArg {
    /// Descriptor such as `path:4`, `cycle:5`, `h:2:6`, `A:{1,3}:5`.
    #[arg(long, conflicts_with = "graph_file")]
    pub graph: Option<String>,
    /// File with a graph in JSON (`{"n":..,"edges":[[i,j],..]}`) or text form.
    #[arg(long)]
    pub graph_file: Option<std::path::PathBuf>,
}

#[derive(Args, Clone)]
pub struct FamilyArg {
    /// `path`, `complete`, `empty`, `cycle`, `oddbip`, `h:k`, `A:{..}` or `A:all`.
    #[arg(long)]
    pub family: String,
}

#[derive(Subcommand)]
pub enum Command {
    /// Enumerate maximal tubings.
    Tubings {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        count: bool,
        /// Print G-forests as parent arrays.
        #[arg(long)]
        forests: bool,
    },
    /// Print the poset L_G.
    Poset {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Property checks; exit status 1 means false, with a witness.
    Check {
        #[arg(value_enum)]
        property: Property,
        #[command(flatten)]
        graph: GraphArg,
        /// lattice-map: check meets only.
        #[arg(long, conflicts_with = "join_only")]
        meet_only: bool,
        /// lattice-map: check joins only.
        #[arg(long)]
        join_only: bool,
        /// lattice: also list minimal minors whose L_G is not a lattice.
        #[arg(long)]
        minimal_minors: bool,
    },
    /// Ψ_G of a permutation.
    Psi {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        perm: String,
    },
    /// Weak-order congruences from Θ_G or from explicit arcs.
    Congruence {
        #[arg(value_enum)]
        action: CongruenceAction,
        #[command(flatten)]
        graph: GraphArg,
        /// Comma-separated arcs such as `2-4:+,1-3:-` (needs --n).
        #[arg(long, requires = "n")]
        arcs: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Arc deletion, insertion and the subarc relation.
    Arc {
        #[arg(value_enum)]
        action: ArcAction,
        /// Arc `i-k:signs` on [n].
        #[arg(long)]
        arc: String,
        #[arg(long)]
        n: usize,
        #[arg(long, required_if_eq_any = [("action", "delete"), ("action", "insert")])]
        vertex: Option<usize>,
        /// subarc: the candidate superarc.
        #[arg(long, required_if_eq("action", "subarc"))]
        of: Option<String>,
    },
    /// Product of two basis elements.
    Product {
        /// Family for tubings; omit and pass permutations for the permutation algebra.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Coproduct of a basis element.
    Coproduct {
        #[arg(long)]
        family: Option<String>,
        /// A tubing such as `{1}{1,2}` (with --family) or a permutation.
        #[arg(long)]
        element: String,
    },
    /// Möbius value over the interval of maximal tubings containing a tubing.
    Mobius {
        #[command(flatten)]
        graph: GraphArg,
        /// Defaults to the component tubes, i.e. the whole poset.
        #[arg(long)]
        tubing: Option<String>,
    },
    /// Family-level properties, verified through a finite degree.
    Family {
        #[arg(value_enum)]
        property: FamilyProperty,
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Replay the acceptance criteria and worked examples.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Hasse diagram of L_G in DOT, with any lattice failure highlighted.
    ExportDot {
        #[command(flatten)]
        graph: GraphArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Property {
    Filled,
    Lattice,
    Semidistributive,
    LatticeMap,
    /// Faces are intervals, with the predicted Möbius values.
    Nrc,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum CongruenceAction {
    Generators,
    Classes,
    Quotient,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ArcAction {
    Delete,
    Insert,
    Subarc,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FamilyProperty {
    Admissible,
    RestrictionCompatible,
    Translational,
    Insertional,
    Associative,
    RecoverA,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    All,
    Criteria,
    Examples,
    Mobius,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs.filter(|&j| j > 0) {
        tubelat::par::set_jobs(j);
    }
    match run::dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
