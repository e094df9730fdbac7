use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use trace_shape::exactlat::{is_isometric, GramMatrix, Matrix};
use trace_shape::fieldkit::{enumerate_fields, fields_with_conductor};
use trace_shape::ideallat::craig_gram;
use trace_shape::shapelab::{scan, verify_main_theorem};
use trace_shape::{Error, FieldSpec, Gram, Int, Report};

mod output;

use output::Sink;

#[derive(Parser, Debug)]
#[command(name = "trace-shape", version, about = "Exact trace forms and shapes of cyclic fields of odd prime degree")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Worker threads for `scan`.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,

    /// Prepend a metadata header with version and timestamp.
    #[arg(long, global = true)]
    metadata: bool,

    /// Raise log verbosity (also settable through TRACE_SHAPE_LOG).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Shape report for one conductor (every field of it unless --subgroup).
    Compute(FieldArgs),
    /// Like `compute`; exits 1 unless every verdict holds.
    Verify(FieldArgs),
    /// Reports for every field with conductor up to a bound, plus a summary.
    Scan {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        max_conductor: u64,
    },
    #[command(subcommand)]
    Lattice(LatticeCommand),
}

#[derive(Subcommand, Debug)]
enum LatticeCommand {
    /// Decide whether two Gram matrices (JSON files) are isometric.
    Isometry {
        #[arg(long)]
        gram_a: PathBuf,
        #[arg(long)]
        gram_b: PathBuf,
    },
    /// Gram matrix of Craig's lattice on the ideal (1-ζ)^k.
    Craig {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        k: u32,
    },
}

#[derive(Args, Debug)]
struct FieldArgs {
    #[arg(long, required_unless_present = "field")]
    ell: Option<u64>,
    #[arg(long, conflicts_with_all = ["primes", "field"])]
    conductor: Option<u64>,
    /// Ramified primes other than ell, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "field")]
    primes: Vec<u64>,
    /// With --primes: also ramify ell (conductor gains a factor ell^2).
    #[arg(long, requires = "primes")]
    wild: bool,
    /// Residues of the defining subgroup, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "field")]
    subgroup: Option<Vec<u64>>,
    /// JSON field description {"ell", "conductor", "subgroup"}.
    #[arg(long)]
    field: Option<PathBuf>,
}

/// Process outcome; the exit code is the only thing callers may rely on.
#[derive(Debug)]
enum Outcome {
    Ok,
    Negative,
    Usage(String),
    Internal(String),
}

impl Outcome {
    fn code(&self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::Negative => 1,
            Outcome::Usage(_) => 2,
            Outcome::Internal(_) => 3,
        }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Outcome::Internal(e.to_string())
        } else {
            Outcome::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for Outcome {
    fn from(e: io::Error) -> Self {
        Outcome::Usage(e.to_string())
    }
}

fn resolve_fields(a: &FieldArgs) -> Result<Vec<FieldSpec>, Outcome> {
    if let Some(path) = &a.field {
        let text = std::fs::read_to_string(path)?;
        let spec: FieldSpec = serde_json::from_str(&text)
            .map_err(|e| Outcome::Usage(format!("{}: {e}", path.display())))?;
        if a.ell.is_some_and(|l| l != spec.ell()) {
            return Err(Outcome::Usage("--ell disagrees with the field file".into()));
        }
        return Ok(vec![spec]);
    }
    let ell = a.ell.expect("clap enforces --ell");
    let fields = match (a.conductor, a.primes.is_empty()) {
        (Some(f), _) => fields_with_conductor(ell, f)?,
        (None, false) => enumerate_fields(ell, &a.primes, a.wild)?,
        (None, true) => {
            return Err(Outcome::Usage("one of --conductor, --primes or --field is required".into()))
        }
    };
    if fields.is_empty() {
        return Err(Outcome::Usage("no field has this conductor".into()));
    }
    match &a.subgroup {
        None => Ok(fields),
        Some(h) => {
            let f = fields[0].conductor();
            Ok(vec![FieldSpec::new(ell, f, h.clone())?])
        }
    }
}

fn read_gram(path: &Path) -> Result<Gram, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::Usage(format!("{}: {e}", path.display())))?;
    let m: Matrix<Int> = serde_json::from_str(&text)
        .map_err(|e| Outcome::Usage(format!("{}: {e}", path.display())))?;
    Ok(GramMatrix::new(m)?)
}

fn run(cli: &Cli, sink: &mut Sink) -> Result<Outcome, Outcome> {
    match &cli.command {
        Command::Compute(a) | Command::Verify(a) => {
            let specs = resolve_fields(a)?;
            let reports: Vec<Report> = specs
                .iter()
                .map(verify_main_theorem)
                .collect::<Result<_, _>>()?;
            sink.reports(&reports)?;
            let all = reports.iter().all(|r| r.verdicts.all());
            Ok(match (&cli.command, all) {
                (Command::Verify(_), false) => Outcome::Negative,
                _ => Outcome::Ok,
            })
        }
        Command::Scan { ell, max_conductor } => {
            let outcome = scan::<Int>(*ell, *max_conductor, cli.jobs)?;
            sink.scan(&outcome)?;
            Ok(Outcome::Ok)
        }
        Command::Lattice(LatticeCommand::Isometry { gram_a, gram_b }) => {
            let a = read_gram(gram_a)?;
            let b = read_gram(gram_b)?;
            let w = match is_isometric(&a, &b) {
                Ok(w) => w,
                Err(Error::RankMismatch(..)) => None,
                Err(e) => return Err(e.into()),
            };
            sink.isometry(w.as_ref())?;
            Ok(if w.is_some() { Outcome::Ok } else { Outcome::Negative })
        }
        Command::Lattice(LatticeCommand::Craig { ell, k }) => {
            let g = craig_gram::<Int>(*ell, *k)?;
            sink.gram(&g)?;
            Ok(Outcome::Ok)
        }
    }
}

fn init_logging(verbose: u8) {
    let mut b = env_logger::Builder::from_env(env_logger::Env::new().filter_or("TRACE_SHAPE_LOG", "warn"));
    match verbose {
        0 => {}
        1 => {
            b.filter_level(log::LevelFilter::Info);
        }
        _ => {
            b.filter_level(log::LevelFilter::Debug);
        }
    }
    let _ = b.try_init();
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    init_logging(cli.verbose);

    let writer: Box<dyn Write> = match &cli.output {
        Some(p) => match File::create(p) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut sink = Sink::new(writer, cli.format, cli.metadata);
    let outcome = run(&cli, &mut sink).unwrap_or_else(|o| o);
    let outcome = match (outcome, sink.finish()) {
        (o @ (Outcome::Usage(_) | Outcome::Internal(_)), _) => o,
        (_, Err(e)) => Outcome::Usage(e.to_string()),
        (o, Ok(())) => o,
    };
    match &outcome {
        Outcome::Usage(m) => eprintln!("error: {m}"),
        Outcome::Internal(m) => eprintln!("internal error: {m}"),
        _ => {}
    }
    ExitCode::from(outcome.code())
}
