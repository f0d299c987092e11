//! The `quiddity` command-line tool.
//!
//! Exit codes: 0 on success, 1 when a theorem check finds a
//! counterexample, 2 on a usage error, 3 when the work limit stops a run.

pub mod commands;
pub mod config;
pub mod input;
pub mod report;
pub mod search;

use std::ffi::OsString;
use std::io::{Read, Write};

use anyhow::Result;
use clap::{Parser, Subcommand};
use quiddity::{Error, WorkLimit, WORK_LIMIT_ENV};

use crate::commands::{
    ClassifyArgs, DecomposeArgs, EnumerateArgs, PhiArgs, RescaleArgs, TriangulateArgs, TupleArgs,
};
use crate::config::{Format, RunConfig};
use crate::report::{check_format, emit, usage, Status, UsageError};
use crate::search::EvenSearchArgs;

#[derive(Parser, Debug)]
#[command(
    name = "quiddity",
    version,
    about = "Exact computations with lambda-quiddities"
)]
pub struct Cli {
    /// Worker threads (defaults to one per core). Output does not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Maximum number of search nodes a run may visit.
    #[arg(long, global = true, env = WORK_LIMIT_ENV)]
    pub work_limit: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check whether a tuple is a quiddity and report its sign.
    Verify(TupleArgs),
    /// List every quiddity of one size with bounded coefficients.
    Enumerate(EnumerateArgs),
    /// Find the irreducible classes over a range of sizes.
    Classify(ClassifyArgs),
    /// Split a quiddity as a sum of two smaller ones.
    Decompose(DecomposeArgs),
    /// Transport an even-size quiddity from <i*sqrt(k)> to <sqrt(k)>.
    Phi(PhiArgs),
    /// Rescale an even-size tuple over <sqrt(k)> to one over Z.
    Rescale(RescaleArgs),
    /// Realize a quiddity over Z by a labeled triangulation.
    Triangulate(TriangulateArgs),
    /// Search for evenly irreducible quiddities over Z, resumably.
    EvenSearch(EvenSearchArgs),
    /// Run a quick battery of consistency checks.
    Selftest,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Verify(_) => "verify",
            Command::Enumerate(_) => "enumerate",
            Command::Classify(_) => "classify",
            Command::Decompose(_) => "decompose",
            Command::Phi(_) => "phi",
            Command::Rescale(_) => "rescale",
            Command::Triangulate(_) => "triangulate",
            Command::EvenSearch(_) => "even-search",
            Command::Selftest => "selftest",
        }
    }

    fn lists_quiddities(&self) -> bool {
        matches!(
            self,
            Command::Verify(_)
                | Command::Enumerate(_)
                | Command::Classify(_)
                | Command::Phi(_)
                | Command::EvenSearch(_)
        )
    }

    fn tuple_arg(&self) -> Option<&str> {
        match self {
            Command::Verify(t) => Some(&t.tuple),
            Command::Decompose(a) => Some(&a.tuple.tuple),
            Command::Phi(a) => Some(&a.tuple.tuple),
            Command::Rescale(a) => Some(&a.tuple.tuple),
            Command::Triangulate(a) => Some(&a.tuple),
            _ => None,
        }
    }
}

fn dispatch(
    command: &Command,
    stdin: &mut dyn Read,
    cfg: &mut RunConfig,
    limit: WorkLimit,
) -> Result<report::Report> {
    match command {
        Command::Verify(a) => commands::verify(a, stdin, cfg),
        Command::Enumerate(a) => commands::enumerate(a, cfg, limit),
        Command::Classify(a) => commands::classify(a, cfg, limit),
        Command::Decompose(a) => commands::decompose(a, stdin, cfg),
        Command::Phi(a) => commands::phi_cmd(a, stdin, cfg),
        Command::Rescale(a) => commands::rescale(a, stdin, cfg),
        Command::Triangulate(a) => commands::triangulate(a, stdin, cfg, limit),
        Command::EvenSearch(a) => search::even_search(a, cfg, limit),
        Command::Selftest => commands::selftest_cmd(limit),
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<Status> {
    let limit = cli.work_limit.map(WorkLimit).unwrap_or_default();
    let mut cfg = RunConfig {
        subcommand: cli.command.name().into(),
        format: cli.format,
        work_limit: limit.0,
        workers: cli.workers,
        ..RunConfig::default()
    };
    check_format(cli.format, cli.command.lists_quiddities())?;
    let mut input = Vec::new();
    if cli.command.tuple_arg() == Some("-") {
        stdin.read_to_end(&mut input)?;
    }
    let mut reader: &[u8] = &input;
    let mut job = || dispatch(&cli.command, &mut reader, &mut cfg, limit);
    let report = match cli.workers {
        Some(0) => return Err(usage("--workers must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()?
            .install(job)?,
        None => job()?,
    };
    emit(&cfg, &report, out)?;
    Ok(report.status)
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain()
        .filter_map(|c| c.downcast_ref::<std::io::Error>())
        .any(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::WorkLimitExceeded { .. }) => 3,
        Some(Error::TheoremViolated(_)) => 1,
        _ => 2,
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                2
            } else {
                let _ = write!(out, "{rendered}");
                0
            };
        }
    };
    match execute(&cli, stdin, out) {
        Ok(status) => status.code(),
        Err(e) if is_broken_pipe(&e) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code(&e)
        }
    }
}
