use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use conway_core::verify::{self, Case, VerificationReport};
use conway_core::{
    descending_diagram, default_marking, parse_contours, parse_diagram, parse_diagrams, serialize_diagram,
    ConwayEngine, CrossingId, DiagramDocument,
};

#[derive(Parser)]
#[command(name = "conway", version, about = "Conway polynomial coefficients of link diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficient series of a diagram.
    Compute {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Check a property on a diagram file or on random diagrams.
    Verify(VerifyArgs),
    /// Check the embedded fixtures against their known series.
    Tables,
    /// Build a diagram from contours, with the descending crossing state.
    Ingest {
        #[arg(long)]
        contours: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Change one crossing.
    Switch(CrossingArgs),
    /// Smooth one crossing.
    Smooth(CrossingArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    property: Property,
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    input: Option<PathBuf>,
    #[arg(long, requires_all = ["trials", "seed"])]
    random: bool,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 4)]
    max_degree: u32,
    /// Crossing bound for random diagrams.
    #[arg(long, default_value_t = 7)]
    max_crossings: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Skein,
    Ordering,
    Marking,
    Moves,
}

#[derive(Args)]
struct CrossingArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    crossing: u32,
}

/// Exit status for input problems; property failures use 1.
const INPUT_ERROR: u8 = 2;
const WALK_STEPS: usize = 15;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path) -> Result<DiagramDocument> {
    parse_diagram(&read(path)?).with_context(|| format!("in {}", path.display()))
}

/// Writes to standard output; a closed pipe is not an error.
fn write_stdout(text: &str) -> Result<()> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_report(report: &VerificationReport) -> Result<ExitCode> {
    write_stdout(&format!("{}\n", serde_json::to_string_pretty(report)?))?;
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn verify(args: &VerifyArgs) -> Result<ExitCode> {
    let cases = match &args.input {
        Some(path) => {
            let docs = parse_diagrams(&read(path)?).with_context(|| format!("in {}", path.display()))?;
            if docs.is_empty() {
                bail!("{} holds no diagram", path.display());
            }
            docs.into_iter().map(|d| Case::named(d.name, d.diagram)).collect()
        }
        None => verify::random_cases(
            args.trials.expect("clap requires trials"),
            args.seed.expect("clap requires seed"),
            args.max_crossings,
        ),
    };
    let engine = ConwayEngine::new();
    let n = args.max_degree;
    let report = match args.property {
        Property::Skein => verify::skein_report(&engine, &cases, n),
        Property::Ordering => verify::ordering_report(&engine, &cases, n, verify::DEFAULT_ORDER_CAP),
        Property::Marking => verify::marking_report(&engine, &cases, n, verify::DEFAULT_MARKING_CAP),
        Property::Moves => verify::moves_report(&engine, &cases, args.seed.unwrap_or(0), WALK_STEPS, n),
    };
    print_report(&report)
}

fn emit(doc: &DiagramDocument, out: Option<&Path>) -> Result<()> {
    let text = serialize_diagram(doc);
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => write_stdout(&text),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Compute {
            input,
            max_degree,
            json,
        } => {
            let doc = load(&input)?;
            let series = ConwayEngine::new().conway_polynomial(&doc.diagram, max_degree)?;
            let text = if json {
                serde_json::to_string(series.nonzero())?
            } else {
                series.to_text()
            };
            write_stdout(&format!("{text}\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => verify(&args),
        Command::Tables => print_report(&verify::table_check(&ConwayEngine::new())),
        Command::Ingest { contours, out } => {
            let set = parse_contours(&read(&contours)?)
                .with_context(|| format!("in {}", contours.display()))?
                .to_set();
            let (shadow, _) = set.compute_shadow()?;
            let d = descending_diagram(&shadow, &default_marking(shadow.diagram()))?;
            let name = contours
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "contours".to_string());
            emit(&DiagramDocument::new(name, d), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Switch(args) => {
            let doc = load(&args.input)?;
            let d = doc.diagram.change_crossing(CrossingId(args.crossing))?;
            emit(&DiagramDocument::new(doc.name, d), None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Smooth(args) => {
            let doc = load(&args.input)?;
            let d = doc.diagram.smooth_crossing(CrossingId(args.crossing))?;
            emit(&DiagramDocument::new(doc.name, d), None)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
