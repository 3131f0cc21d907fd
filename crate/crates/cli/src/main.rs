//! `contractible`: analyze contractive automorphisms of Lie algebras over
//! local fields, run the contraction-group demos and the self-check suite.

mod examples;
mod report;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use contractible::gradlie::SpecFile;
use contractible::ErrorClass;
use report::{run_demo_report, run_selfcheck_report, run_spec, AnalysisReport, Command, Failure};

#[derive(Parser, Debug)]
#[command(name = "contractible", version, about = "Contractive automorphisms over local fields")]
struct Cli {
    /// Working precision in digits.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u32).range(16..))]
    precision: u32,
    /// Seed for every random sample.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Contractivity, characteristic decomposition and adapted norm.
    Analyze { file: PathBuf },
    /// `analyze` plus the N-gradation of the automorphism.
    Gradation { file: PathBuf },
    /// `gradation` plus the spectral filtration and lower central series.
    CentralSeries { file: PathBuf },
    /// `analyze` plus the BCH group law and its contraction certificate.
    Integrate { file: PathBuf },
    /// Run a named contraction-group demo.
    Demo {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(contractible::cgroups::DEMO_NAMES))]
        name: String,
    },
    /// Run acceptance criteria 1 to 9.
    Selfcheck,
    /// Write the embedded example spec files into DIR.
    DumpExamples {
        #[arg(default_value = "contractible-examples")]
        dir: PathBuf,
    },
}

/// Write via a sibling temporary file and rename, so readers never see a
/// partial report.
pub(crate) fn write_atomic(path: &Path, text: &str) -> io::Result<()> {
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = path.with_file_name(format!(".{name}.tmp{}", std::process::id()));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

fn spec_command(cmd: Command, file: &Path, report: &mut AnalysisReport) -> Result<(), Failure> {
    report.input = Some(file.display().to_string());
    let text = examples::load(file).map_err(|e| Failure {
        name: "IoError".into(),
        class: ErrorClass::Precondition,
        message: format!("{}: {e}", file.display()),
    })?;
    let spec = SpecFile::from_json(&text)?;
    run_spec(cmd, spec, report)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, file) = match &cli.command {
        Cmd::Analyze { file } => (Command::Analyze, file),
        Cmd::Gradation { file } => (Command::Gradation, file),
        Cmd::CentralSeries { file } => (Command::CentralSeries, file),
        Cmd::Integrate { file } => (Command::Integrate, file),
        Cmd::Demo { name } => {
            let mut r = AnalysisReport::new("demo", cli.precision, cli.seed);
            let out = run_demo_report(name, &mut r).map_err(Failure::from);
            return emit(&cli, r.finish(out));
        }
        Cmd::Selfcheck => {
            let mut r = AnalysisReport::new("selfcheck", cli.precision, cli.seed);
            run_selfcheck_report(&mut r, cli.json || cli.out.is_some());
            return emit(&cli, r.finish(Ok(())));
        }
        Cmd::DumpExamples { dir } => {
            return match examples::dump(dir) {
                Ok(paths) => {
                    for p in paths {
                        println!("{}", p.display());
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {}: {e}", dir.display());
                    ExitCode::from(2)
                }
            };
        }
    };
    let mut r = AnalysisReport::new(name.name(), cli.precision, cli.seed);
    let out = spec_command(name, file, &mut r);
    emit(&cli, r.finish(out))
}

fn emit(cli: &Cli, report: AnalysisReport) -> ExitCode {
    let text = if cli.json { report.to_json() } else { report.to_text() };
    let written = match &cli.out {
        Some(path) => write_atomic(path, &text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code as u8)
}
