//! `pcells`: exact computations and checks for perverse sheaves on
//! simplicial complexes, with deterministic JSON reports.
//!
//! Exit status is 0 when every check passes, 1 when a check fails (the report
//! carries a witness) and 2 on bad input.

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use perverse_cells::AlgebraKind;

use commands::Options;
use input::{InputError, Inputs};
use report::RunReport;

#[derive(Parser)]
#[command(name = "pcells", version, about = "Perverse sheaves on simplicial complexes, computed exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Perversity: `0,-1,1`, `top` or `bottom` (default `top`)
    #[arg(long, global = true, allow_hyphen_values = true)]
    perversity: Option<String>,

    /// Which algebra: A (chain complexes) or B (equivalence relations)
    #[arg(long, global = true, value_enum, default_value_t = Which::A)]
    which: Which,

    /// Seed for every random choice
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Stop graded dimensions at this degree
    #[arg(long, global = true)]
    max_degree: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Let skeleton levels outside the perversity range clamp instead of failing
    #[arg(long, global = true)]
    clamp: bool,

    /// Reject complex documents listing non-maximal simplices
    #[arg(long, global = true)]
    strict: bool,

    /// Complex for sheaf documents that do not embed one
    #[arg(long, global = true)]
    complex: Option<PathBuf>,

    /// Write the report here instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Read a complex and summarize it
    Validate { complex: PathBuf },
    /// List the flags of the barycentric subdivision
    Subdivide { complex: PathBuf },
    /// Perverse triangulation census
    Ptriang {
        complex: PathBuf,
        /// Also list the skeleton at this level
        #[arg(long, allow_hyphen_values = true)]
        level: Option<i64>,
    },
    /// Nodes and arrows of Q(X, δ)
    Quiver { complex: PathBuf },
    /// Presentation and graded dimensions of A(X, δ) or B(X, δ)
    Algebra { input: PathBuf },
    /// Quadratic duality: A(δ)! = B(-δ)
    Dualcheck {
        input: PathBuf,
        /// Comparison algebra, for algebra documents
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// Opposites: B(δ) = B(-δ)^op
    Oppcheck {
        input: PathBuf,
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// Check the equivalence axiom on every diamond of an object
    TeaCheck { sheaf: PathBuf },
    /// Spread an object over (X, δ) to the subdivision
    Phi { sheaf: PathBuf },
    /// Collapse an object over the subdivision back to (X, δ)
    Psi { sobject: PathBuf },
    /// Check that Φ and Ψ are mutually inverse, on a document or on random modules
    Roundtrip {
        input: PathBuf,
        /// Number of random modules when the input is a complex
        #[arg(long, default_value_t = 16)]
        count: usize,
    },
    /// Morphisms between two objects over (X, δ)
    Hom { first: PathBuf, second: PathBuf },
    /// Restrict an object over the subdivision to a set of flags
    Restrict {
        sobject: PathBuf,
        /// Flag such as `a<ab<abc`; repeat for more
        #[arg(long = "flag")]
        flags: Vec<String>,
        /// Take the face closure of the given flags
        #[arg(long)]
        close: bool,
    },
    /// Minimal resolutions of the simples and a Koszulity verdict
    Koszul { input: PathBuf },
    /// Compare Ext between simples with the Koszul dual
    Extdual {
        input: PathBuf,
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// Run every check for one complex and perversity
    Report {
        complex: PathBuf,
        #[arg(long, default_value_t = 16)]
        count: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Subdivide { .. } => "subdivide",
            Command::Ptriang { .. } => "ptriang",
            Command::Quiver { .. } => "quiver",
            Command::Algebra { .. } => "algebra",
            Command::Dualcheck { .. } => "dualcheck",
            Command::Oppcheck { .. } => "oppcheck",
            Command::TeaCheck { .. } => "tea-check",
            Command::Phi { .. } => "phi",
            Command::Psi { .. } => "psi",
            Command::Roundtrip { .. } => "roundtrip",
            Command::Hom { .. } => "hom",
            Command::Restrict { .. } => "restrict",
            Command::Koszul { .. } => "koszul",
            Command::Extdual { .. } => "extdual",
            Command::Report { .. } => "report",
        }
    }
}

fn run(cli: &Cli, inputs: &mut Inputs) -> Result<report::Outcome, InputError> {
    let opts = Options {
        perversity: cli.perversity.clone(),
        which: match cli.which {
            Which::A => AlgebraKind::A,
            Which::B => AlgebraKind::B,
        },
        seed: cli.seed,
        max_degree: cli.max_degree,
        clamp: cli.clamp,
        complex: cli.complex.clone(),
    };
    match &cli.command {
        Command::Validate { complex } => commands::validate(inputs, complex),
        Command::Subdivide { complex } => commands::subdivide(inputs, complex),
        Command::Ptriang { complex, level } => commands::ptriang(inputs, complex, &opts, *level),
        Command::Quiver { complex } => commands::quiver(inputs, complex, &opts),
        Command::Algebra { input } => commands::algebra(inputs, input, &opts),
        Command::Dualcheck { input, against } => commands::dualcheck(inputs, input, &opts, against.as_deref()),
        Command::Oppcheck { input, against } => commands::oppcheck(inputs, input, &opts, against.as_deref()),
        Command::TeaCheck { sheaf } => commands::tea_check(inputs, sheaf, &opts),
        Command::Phi { sheaf } => commands::phi(inputs, sheaf, &opts),
        Command::Psi { sobject } => commands::psi(inputs, sobject, &opts),
        Command::Roundtrip { input, count } => commands::roundtrip(inputs, input, &opts, *count),
        Command::Hom { first, second } => commands::hom(inputs, first, second, &opts),
        Command::Restrict { sobject, flags, close } => commands::restrict_cmd(inputs, sobject, &opts, flags, *close),
        Command::Koszul { input } => commands::koszul(inputs, input, &opts),
        Command::Extdual { input, against } => commands::extdual(inputs, input, &opts, against.as_deref()),
        Command::Report { complex, count } => commands::report(inputs, complex, &opts, *count),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut inputs = Inputs { strict: cli.strict, ..Inputs::default() };
    let outcome = match run(&cli, &mut inputs) {
        Ok(outcome) => outcome,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let report = RunReport::new(cli.command.name(), inputs.digests, outcome);
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
