//! The resumable search for evenly irreducible quiddities over `Z`.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;
use quiddity::{
    search_evenly_irreducible, Error, EvenMode, EvenSearchState, Generator, Quiddity,
    QuiddityRecord, SearchOutcome, WorkLimit,
};
use serde::Serialize;

use crate::config::RunConfig;
use crate::report::{usage, Report, Status};

#[derive(Args, Debug, Clone)]
pub struct EvenSearchArgs {
    /// Even size, at least 4.
    #[arg(long)]
    pub size: usize,
    #[arg(long)]
    pub bound: u32,
    /// `strict` splits the tuple as written; `equiv` allows any rotation or
    /// reversal.
    #[arg(long, default_value = "equiv")]
    pub mode: EvenMode,
    /// State file written after every run, complete or not.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Continue from the checkpoint (a missing file starts a fresh search).
    #[arg(long, requires = "checkpoint")]
    pub resume: bool,
    /// Process at most this many shards in this run.
    #[arg(long)]
    pub max_shards: Option<usize>,
    /// Append the finished result as one JSON line to this file.
    #[arg(long)]
    pub append: Option<PathBuf>,
}

#[derive(Serialize)]
struct SearchResult<'a> {
    n: usize,
    bound: u32,
    mode: EvenMode,
    complete: bool,
    count: usize,
    witnesses: &'a [Vec<i64>],
    examined: u64,
    completed_shards: usize,
    total_shards: usize,
}

impl<'a> SearchResult<'a> {
    fn of(state: &'a EvenSearchState) -> SearchResult<'a> {
        SearchResult {
            n: state.size,
            bound: state.bound,
            mode: state.mode,
            complete: state.is_complete(),
            count: state.found.len(),
            witnesses: &state.found,
            examined: state.examined,
            completed_shards: state.completed_shards(),
            total_shards: state.total_shards,
        }
    }
}

fn load_checkpoint(path: &Path, fresh: &EvenSearchState) -> Result<EvenSearchState> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading checkpoint {}", path.display()))?;
    let state: EvenSearchState = serde_json::from_str(&text)
        .map_err(|e| usage(format!("checkpoint {} is malformed: {e}", path.display())))?;
    state.validate()?;
    if (state.size, state.bound, state.mode, state.total_shards)
        != (fresh.size, fresh.bound, fresh.mode, fresh.total_shards)
    {
        return Err(usage(format!(
            "checkpoint {} is for n={} B={} mode {}, not n={} B={} mode {}",
            path.display(),
            state.size,
            state.bound,
            state.mode,
            fresh.size,
            fresh.bound,
            fresh.mode
        )));
    }
    Ok(state)
}

fn save_checkpoint(path: &Path, state: &EvenSearchState) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, serde_json::to_string_pretty(state)? + "\n")
        .with_context(|| format!("writing checkpoint {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("replacing checkpoint {}", path.display()))?;
    Ok(())
}

pub fn even_search(args: &EvenSearchArgs, cfg: &mut RunConfig, limit: WorkLimit) -> Result<Report> {
    cfg.size = Some(args.size);
    cfg.bound = Some(args.bound);
    cfg.mode = Some(args.mode);
    cfg.resume = args.resume;
    cfg.max_shards = args.max_shards;
    cfg.checkpoint = args.checkpoint.as_ref().map(|p| p.display().to_string());

    let fresh = EvenSearchState::new(args.size, args.bound, args.mode)?;
    let state = match &args.checkpoint {
        Some(path) if path.exists() => {
            if !args.resume {
                return Err(usage(format!(
                    "checkpoint {} already exists; pass --resume to continue it",
                    path.display()
                )));
            }
            load_checkpoint(path, &fresh)?
        }
        _ => fresh,
    };
    let before = state.completed_shards();
    let outcome = match search_evenly_irreducible(state.clone(), args.max_shards, limit) {
        Ok(outcome) => outcome,
        Err(e @ Error::WorkLimitExceeded { .. }) => {
            if let Some(path) = &args.checkpoint {
                save_checkpoint(path, &state)?;
            }
            return Err(e.into());
        }
        Err(e) => return Err(e.into()),
    };
    let complete = matches!(outcome, SearchOutcome::Complete(_));
    let state = outcome.into_state();
    if let Some(path) = &args.checkpoint {
        save_checkpoint(path, &state)?;
    }
    let done_now = state.completed_shards() - before;
    let status = if complete || args.max_shards.is_some_and(|m| done_now >= m) {
        Status::Success
    } else {
        Status::WorkLimit
    };

    let result = SearchResult::of(&state);
    if complete {
        if let Some(path) = &args.append {
            let line = serde_json::json!({"config": &*cfg, "result": &result});
            let mut file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .with_context(|| format!("opening {}", path.display()))?;
            writeln!(file, "{line}")?;
        }
    }

    let mut text = format!(
        "evenly irreducible quiddities of size {} with coefficients within {} ({} mode)\n",
        state.size, state.bound, state.mode
    );
    text += &format!(
        "shards {}/{}{}; {} classes examined\n",
        state.completed_shards(),
        state.total_shards,
        if complete { "" } else { " (incomplete)" },
        state.examined
    );
    for w in &state.found {
        text += &format!("  {w:?}\n");
    }
    text += &format!("{} found\n", state.found.len());

    let records = state
        .found
        .iter()
        .map(|w| {
            Ok(QuiddityRecord::new(
                &Quiddity::new(Generator::integers(), w.clone())?,
                None,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report::new(&result, text)?
        .with_records(records)?
        .with_status(status))
}
