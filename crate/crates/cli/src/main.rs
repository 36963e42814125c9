//! `racah`: run verification suites, enumerate coupling schemes, and print
//! expansions and transition tables.

mod commands;
mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use racah_core::exactnum::{ensure_admissible, sample_parameters, AdmissibilityMode, ParameterSet};
use racah_core::Error;

use output::Format;

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INADMISSIBLE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "racah", version, about = "Exact checks for Hahn and Racah algebra realisations")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Worker threads for suite-internal parallelism (0 = all cores).
    #[arg(long, env = "RACAH_JOBS", global = true)]
    jobs: Option<usize>,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Record wall-clock time in reports. Makes output non-reproducible.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Coupling schemes for n-fold tensor products.
    #[command(subcommand)]
    Schemes(SchemesCommand),
    /// Expand one eigenbasis in the other by exact linear algebra.
    Expand(ExpandArgs),
    /// Print the renormalised transition table and recurrence data.
    Table(TableArgs),
}

#[derive(Subcommand, Debug)]
enum SchemesCommand {
    /// List all coupling schemes of arity n.
    Enumerate {
        #[arg(long = "n", default_value_t = 4)]
        arity: usize,
        /// Also list the distinct commutative families.
        #[arg(long)]
        dedupe: bool,
    },
    /// Check commutativity and eigen-equations for one scheme or all of arity n.
    Eigencheck(EigencheckArgs),
}

#[derive(Args, Debug)]
struct Level {
    /// Representation level (total degree of the eigenvectors).
    #[arg(long = "N", default_value_t = 4)]
    n: u32,
    /// Largest monomial degree for operator identities.
    #[arg(long = "D", default_value_t = 8)]
    d: u32,
    /// Largest |k| for higher-rank eigenvectors.
    #[arg(long = "K", default_value_t = 4)]
    k: u32,
    /// Seed for sampling parameters when --params is omitted.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated rationals, e.g. 1/2,3/2.
    #[arg(long, allow_hyphen_values = true)]
    params: Option<String>,
}

impl Level {
    /// Parses `--params` or samples them from the seed, then checks them
    /// against `mode` at `level`. Sampled values are echoed on stderr.
    fn resolve(&self, count: usize, level: u32, mode: AdmissibilityMode) -> racah_core::Result<ParameterSet> {
        let params = match &self.params {
            Some(list) => ParameterSet::parse(list)?,
            None => {
                let p = sample_parameters(self.seed, count, level, mode)?;
                eprintln!("params sampled from seed {}: {p}", self.seed);
                p
            }
        };
        if params.len() != count {
            return Err(Error::ModeArityMismatch {
                mode: mode.name(),
                expected: count,
                got: params.len(),
            });
        }
        ensure_admissible(&params, level, mode)?;
        Ok(params)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    HahnAlgebra,
    RacahAlgebra,
    HahnConvolution,
    RacahConvolution,
    Orthogonality,
    GammaSums,
    Tridiagonal,
    Conjugation,
    CrossFamily,
    Counting,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Hahn,
    Racah,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    HahnX,
    HahnY,
    RacahX,
    RacahY,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Direction {
    /// w_l in the v basis.
    Forward,
    /// v_l in the w basis.
    Inverse,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[command(flatten)]
    level: Level,
    /// Family for orthogonality, gamma-sums and tridiagonal.
    #[arg(long, value_enum, default_value_t = FamilyArg::Hahn)]
    family: FamilyArg,
    /// Single side for tridiagonal; both sides of --family when omitted.
    #[arg(long, value_enum)]
    side: Option<SideArg>,
    /// Largest arity for counting.
    #[arg(long = "n", default_value_t = 6)]
    max_n: usize,
}

#[derive(Args, Debug)]
struct EigencheckArgs {
    /// A scheme such as "1|2|3 -> 12|3 -> 123".
    #[arg(long, conflicts_with = "arity")]
    scheme: Option<String>,
    /// Check every scheme of this arity.
    #[arg(long = "n", default_value_t = 4)]
    arity: usize,
    #[command(flatten)]
    level: Level,
}

#[derive(Args, Debug)]
struct ExpandArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::Hahn)]
    family: FamilyArg,
    #[arg(value_enum, default_value_t = Direction::Forward)]
    direction: Direction,
    #[command(flatten)]
    level: Level,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::Hahn)]
    family: FamilyArg,
    #[command(flatten)]
    level: Level,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("racah: cannot configure {jobs} jobs: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let result = commands::run(&cli.command, cli.timing);
    let outcome = match result {
        Ok(o) => o,
        Err(Error::InadmissibleParameters(violations)) => {
            eprintln!("racah: inadmissible parameters:");
            for v in violations {
                eprintln!("  {v}");
            }
            return ExitCode::from(EXIT_INADMISSIBLE);
        }
        Err(e) => {
            eprintln!("racah: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let body = outcome.render(cli.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &body) {
                eprintln!("racah: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE);
            }
        }
        None => print!("{body}"),
    }
    if outcome.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    }
}
