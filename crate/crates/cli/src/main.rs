//! `stonevn`: run single operations on instance files, or the whole
//! verification pipeline.

mod commands;
mod pretty;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Outcome;

#[derive(Debug, Parser)]
#[command(name = "stonevn", version, about = "Regular rings, Boolean algebras and their spectra")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Relative tolerance for floating-point comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Bound on the number of coordinates, atoms or points enumerated.
    #[arg(long, global = true, default_value_t = 20)]
    max_points: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

/// Input paths; `-` reads stdin.
#[derive(Debug, Subcommand)]
enum Command {
    /// The quasi-inverse of an element.
    QuasiInverse {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        element: PathBuf,
    },
    /// The idempotent generating the principal ideal of an element, with
    /// membership witnesses.
    IdempotentOf {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        element: PathBuf,
    },
    /// Every idempotent of a ring.
    Idempotents {
        #[arg(long)]
        ring: PathBuf,
    },
    /// Localize at an element, or at an idempotent with `--idempotent`.
    Localize {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long, required_unless_present = "idempotent", conflicts_with = "idempotent")]
        element: Option<PathBuf>,
        #[arg(long)]
        idempotent: Option<PathBuf>,
    },
    /// The prime spectrum of a ring.
    Spec {
        #[arg(long)]
        ring: PathBuf,
    },
    /// The basic open set of an element.
    DInf {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        element: PathBuf,
    },
    /// The residue field at a point, checked on seeded random elements.
    ResidueCheck {
        #[arg(long)]
        ring: PathBuf,
        /// Coordinate name of the prime.
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Meet, join or complement in a Boolean algebra.
    BaOps {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, value_enum)]
        op: BaOp,
        #[arg(long)]
        x: PathBuf,
        #[arg(long, required_if_eq_any = [("op", "meet"), ("op", "join")])]
        y: Option<PathBuf>,
    },
    /// The Stone space of an algebra, or with `--hom` the induced map.
    Stone {
        #[arg(long)]
        algebra: PathBuf,
        #[command(flatten)]
        morphism: Morphism,
    },
    /// The clopen algebra of a space, or with `--map` the induced hom.
    Clopen {
        #[arg(long)]
        space: PathBuf,
        #[command(flatten)]
        morphism: Morphism,
    },
    /// The isomorphism from idempotents to clopens of the spectrum.
    J {
        #[arg(long)]
        ring: PathBuf,
        /// Send a single idempotent instead of printing the whole table.
        #[arg(long)]
        element: Option<PathBuf>,
    },
    /// The quotient by a partition and its projection.
    Quotient {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        partition: PathBuf,
    },
    /// The limit of an inverse system: threads and projections.
    Limit {
        #[arg(long)]
        system: PathBuf,
    },
    /// The comparison map into the limit of all quotients.
    Delta {
        #[arg(long)]
        space: PathBuf,
    },
    /// The map between limits induced by a map of spaces.
    DeltaMap {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        codomain: PathBuf,
    },
    /// The ring of functions on a space, or with `--map` the induced hom.
    Khat {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, default_value = "Q")]
        field: String,
        #[command(flatten)]
        morphism: Morphism,
    },
    /// The ring of functions on the Stone space, or with `--hom` the
    /// induced hom.
    Kcheck {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value = "Q")]
        field: String,
        #[command(flatten)]
        morphism: Morphism,
    },
    /// The component of ε at a space, plus a square for `--map`.
    Epsilon {
        #[arg(long)]
        space: PathBuf,
        #[command(flatten)]
        morphism: Morphism,
    },
    /// The component of θ at an algebra, plus a square for `--hom`.
    Theta {
        #[arg(long)]
        algebra: PathBuf,
        #[command(flatten)]
        morphism: Morphism,
    },
    /// Every verification suite on a seeded corpus.
    Verify {
        /// Replace the idempotent join by symmetric difference.
        #[arg(long)]
        break_join: bool,
    },
    /// Projection and composition axioms on ℝ^m.
    CheckSmoothAxioms {
        #[arg(long, default_value_t = 4)]
        points: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Evaluate an expression at a point.
    Eval {
        /// e.g. `exp(x1) * sin(x2) + 1/2`
        #[arg(long)]
        expr: String,
        /// Comma-separated coordinates.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        point: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BaOp {
    Meet,
    Join,
    Complement,
}

/// A morphism given by its table file and the file of its other end.
#[derive(Debug, Clone, Args)]
struct Morphism {
    /// Map or hom file.
    #[arg(long, visible_alias = "hom", requires = "codomain")]
    map: Option<PathBuf>,
    #[arg(long, requires = "map")]
    codomain: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli.command, &cli.global) {
        Ok(outcome) => emit(&outcome, cli.global.format),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn emit(outcome: &Outcome, format: Format) -> ExitCode {
    let text = match format {
        Format::Json => stonevn_core::format::render(&outcome.value),
        Format::Pretty => Ok(pretty::render(&outcome.value)),
    };
    let text = match text {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(2);
    }
    if format == Format::Json {
        for line in &outcome.summary {
            eprintln!("{line}");
        }
    }
    match outcome.passed {
        Some(false) => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}
