use std::path::PathBuf;
use std::process::ExitCode;

use alcoved::Error;
use clap::{Args, Parser, Subcommand};

mod commands;

/// Exact computations with Weyl groups, alcoves and alcoved polytopes.
#[derive(Parser, Debug)]
#[command(name = "alcoved", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Root system type letter (A-G), or a full name such as C3.
    #[arg(long = "type", global = true)]
    pub type_label: Option<String>,
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    /// Polytope description in JSON; its type and rank win over the flags.
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Upper bound on enumerated box points or group elements.
    #[arg(long, global = true, default_value_t = 100_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Worker threads for enumeration (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Lower simple-root bounds, comma separated (default all 0).
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub lo: Option<Vec<i64>>,
    /// Upper simple-root bounds, comma separated (default all 1).
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub hi: Option<Vec<i64>>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cartan matrix, marks, h and the group order.
    Info,
    /// List Weyl group elements with length, descents and cdes.
    Enumerate {
        #[arg(long, default_value_t = 50)]
        limit: usize,
    },
    /// cdes distribution, the group C and the cmaj class of each element.
    Stats {
        #[arg(long, default_value_t = 50)]
        limit: usize,
    },
    /// Both sides of the q-analogue of the order formula.
    Qweyl,
    /// Alcove count, BFS alcove count and lattice points of a polytope.
    Volume,
    /// Volume against the lattice-point sum over coset translates.
    VolIdentity {
        /// Check this many seeded random polytopes instead of one given polytope.
        #[arg(long)]
        random: Option<usize>,
        /// Range of the random simple-root bounds.
        #[arg(long, default_value_t = 2)]
        spread: i64,
    },
    /// Hypersimplex volumes and the descent statistic behind them.
    Hypersimplex {
        /// Only this slice.
        #[arg(long)]
        k: Option<i64>,
    },
    /// Thick hypersimplex volume decomposition.
    ThickCheck {
        /// Widths b_i >= 1, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<i64>,
        /// Lower θ bound; with --kmax checks one window, otherwise all windows.
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        kmax: Option<i64>,
    },
    /// Marked quadratic binomials of a polytope.
    Groebner,
    /// Simplices of the alcove triangulation induced by the binomials.
    Triangulate,
    /// Joint distribution of cmaj and cmaj of the inverse.
    CrossTable,
    /// Runs every identity check for one type.
    Selfcheck {
        /// Random polytopes used for the volume identity.
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Alcove of a point given by its h-scaled ω-coordinates.
    AlcoveOf {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        point: Vec<i64>,
    },
}

/// What a command produced: text for people, JSON for machines, and
/// whether every identity it checked held.
pub struct Report {
    pub text: String,
    pub json: serde_json::Value,
    pub holds: bool,
}

pub enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Lib(e) if e.is_defect() => 2,
            Failure::Lib(e) if e.is_budget() => 3,
            Failure::Lib(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(s) => write!(f, "{s}"),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    let c = &cli.common;
    match &cli.command {
        Command::Info => commands::info(c),
        Command::Enumerate { limit } => commands::enumerate(c, *limit),
        Command::Stats { limit } => commands::stats(c, *limit),
        Command::Qweyl => commands::qweyl(c),
        Command::Volume => commands::volume(c),
        Command::VolIdentity { random, spread } => commands::vol_identity(c, *random, *spread),
        Command::Hypersimplex { k } => commands::hypersimplex(c, *k),
        Command::ThickCheck { b, k, kmax } => commands::thick_check(c, b, *k, *kmax),
        Command::Groebner => commands::groebner(c),
        Command::Triangulate => commands::triangulate(c),
        Command::CrossTable => commands::cross_table(c),
        Command::Selfcheck { samples } => commands::selfcheck(c, *samples),
        Command::AlcoveOf { point } => commands::alcove_of(c, point),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.common.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.common.jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match dispatch(&cli) {
        Ok(report) => {
            if cli.common.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("json values serialize"));
            } else {
                print!("{}", report.text);
            }
            if report.holds {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: identity violated");
                ExitCode::from(2)
            }
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
