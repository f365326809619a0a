use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use bvext_core::field::Field;
use bvext_core::hochschild::DEFAULT_BUDGET;
use bvext_core::io::{load_presentation, Presentation};
use bvext_core::runner::{instance_report, run_suite, Report, RunConfig, Status, Suite, SuiteRun};
use bvext_core::Error;
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 3;
const EXIT_SCHEMA: u8 = 4;
const EXIT_BUDGET: u8 = 5;
const EXIT_OTHER: u8 = 6;

#[derive(Parser, Debug)]
#[command(name = "bvext", version, about = "Verify operad, cyclic and BV structures on Hochschild and Hopf-Ext complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Algebra, Frobenius and Hopf axioms
    Validate(Args),
    /// Cohomology dimension tables
    Cohomology(Args),
    /// Operad-with-multiplication identities on basis cochains
    Operad(Args),
    /// Contraaction axioms, cyclic operad identities and the B homotopy
    Cyclic(Args),
    /// Gerstenhaber and BV identities on cohomology
    Bv(Args),
    /// Weight splitting under the Nakayama automorphism
    Nakayama(Args),
    /// Translation map and Hopf-Galois identities on the dual
    Dual(Args),
    /// Every suite
    All(Args),
}

#[derive(clap::Args, Debug, Clone)]
struct Args {
    /// Presentation files (JSON)
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Highest cochain degree examined
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_degree: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// Coefficient field, overriding the file: Q or GFp
    #[arg(long, value_parser = parse_field)]
    field: Option<Field>,
    /// Largest cochain-space dimension any suite may allocate
    #[arg(long, default_value_t = DEFAULT_BUDGET as u64, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Table,
    Json,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl Command {
    fn split(&self) -> (&'static str, &Args, Vec<Suite>) {
        match self {
            Command::Validate(a) => ("validate", a, vec![Suite::Validate]),
            Command::Cohomology(a) => ("cohomology", a, vec![Suite::Cohomology]),
            Command::Operad(a) => ("operad", a, vec![Suite::Operad]),
            Command::Cyclic(a) => ("cyclic", a, vec![Suite::Cyclic]),
            Command::Bv(a) => ("bv", a, vec![Suite::Bv]),
            Command::Nakayama(a) => ("nakayama", a, vec![Suite::Nakayama]),
            Command::Dual(a) => ("dual", a, vec![Suite::Dual]),
            Command::All(a) => ("all", a, Suite::ALL.to_vec()),
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::Schema(_) => EXIT_SCHEMA,
        Error::BudgetExceeded(_) => EXIT_BUDGET,
        _ => EXIT_OTHER,
    }
}

fn run(name: &str, args: &Args, suites: &[Suite]) -> Result<Report, Error> {
    let started = Instant::now();
    let cfg = RunConfig {
        max_degree: args.max_degree.map(|n| n as usize),
        budget: usize::try_from(args.budget).unwrap_or(usize::MAX),
    };
    let inputs: Vec<(String, Presentation)> = args
        .inputs
        .iter()
        .map(|path| Ok((path.display().to_string(), load_presentation(path, args.field)?)))
        .collect::<Result<_, Error>>()?;

    let tasks: Vec<(usize, Suite)> = (0..inputs.len()).flat_map(|i| suites.iter().map(move |&s| (i, s))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs as usize)
        .build()
        .map_err(|e| Error::AxiomViolation(format!("thread pool: {e}")))?;
    let results: Vec<SuiteRun> =
        pool.install(|| tasks.par_iter().map(|&(i, s)| run_suite(&inputs[i].1, s, &cfg)).collect::<Result<_, Error>>())?;

    let mut runs = results.into_iter();
    let instances = inputs
        .iter()
        .map(|(path, p)| instance_report(p, Some(path.clone()), &cfg, runs.by_ref().take(suites.len()).collect()))
        .collect();
    Ok(Report::new(name, instances, started))
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skipped => "SKIP",
    }
}

fn render_table(r: &Report) -> String {
    let mut out = String::new();
    for inst in &r.instances {
        let _ = writeln!(
            out,
            "{} [{}] over {}, dim {}, degrees ≤ {}",
            inst.name,
            inst.source.as_deref().unwrap_or("-"),
            inst.field,
            inst.dim,
            inst.max_degree
        );
        for run in &inst.suites {
            let _ = writeln!(out, "  {:<10} {}  ({:.2?})", run.suite.name(), status_word(run.status), std::time::Duration::from_micros(run.timing.elapsed_us));
            if let Some(reason) = &run.reason {
                let _ = writeln!(out, "    skipped: {reason}");
            }
            for row in &run.dimensions {
                let dims: Vec<String> = row.dims.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "    dim {:<14} ({})", row.complex, dims.join(", "));
            }
            for sec in &run.sections {
                let _ = writeln!(out, "    {}", sec.suite);
                for c in &sec.checks {
                    let mark = match (c.passed, c.informational) {
                        (true, _) => "ok  ",
                        (false, true) => "info",
                        (false, false) => "FAIL",
                    };
                    let _ = write!(out, "      {mark} {} [{} cases]", c.name, c.cases);
                    if let Some(w) = c.witness.as_deref().filter(|_| !c.passed) {
                        let _ = write!(out, ": {w}");
                    }
                    out.push('\n');
                }
                for n in &sec.notes {
                    let _ = writeln!(out, "      note: {n}");
                }
            }
        }
    }
    let _ = writeln!(out, "{}", if r.passed { "PASS" } else { "FAIL" });
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, args, suites) = cli.command.split();
    match run(name, args, &suites) {
        Ok(report) => {
            let text = match args.format {
                Format::Json => serde_json::to_string_pretty(&report).expect("report serialises") + "\n",
                Format::Table => render_table(&report),
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILED)
            }
        }
        Err(e) => {
            eprintln!("bvext: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
