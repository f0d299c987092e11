//! Even reducibility of even-size quiddities over `Z`, its link with
//! irreducibility over `<i>`, and a resumable search for evenly
//! irreducible quiddities.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{GenKind, Generator};
use crate::maps::phi;
use crate::quiddity::Quiddity;
use crate::solve::{
    enumerate_quiddities, find_decomposition, is_irreducible, Decomposition, DecompositionQuery,
    EnumSpec, Sharding, WorkLimit,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvenMode {
    /// `q` itself must be the sum, with no rotation or reversal.
    Strict,
    /// Some rotation or reversal of `q` must be the sum.
    #[default]
    UpToEquivalence,
}

impl EvenMode {
    fn query(self) -> DecompositionQuery {
        match self {
            EvenMode::Strict => DecompositionQuery::even().literal(),
            EvenMode::UpToEquivalence => DecompositionQuery::even(),
        }
    }
}

impl std::str::FromStr for EvenMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<EvenMode> {
        match s {
            "strict" => Ok(EvenMode::Strict),
            "equiv" | "up-to-equivalence" | "up_to_equivalence" => Ok(EvenMode::UpToEquivalence),
            _ => Err(Error::Parse(format!("unknown even mode {s:?}"))),
        }
    }
}

impl std::fmt::Display for EvenMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EvenMode::Strict => "strict",
            EvenMode::UpToEquivalence => "up_to_equivalence",
        })
    }
}

fn check_even_input(q: &Quiddity) -> Result<()> {
    if q.generator().kind() != (GenKind::Int { s: 1 }) {
        return Err(Error::WrongGenerator(
            q.generator().to_string(),
            "even reducibility is defined over Z".into(),
        ));
    }
    let n = q.len();
    if n % 2 == 1 {
        return Err(Error::OddSize(n));
    }
    if n < 4 {
        return Err(Error::SizeTooSmall { size: n, min: 4 });
    }
    Ok(())
}

/// A splitting of `q` into two quiddities over `Z` of even sizes `>= 4`.
pub fn even_decomposition(q: &Quiddity, mode: EvenMode) -> Result<Option<Decomposition>> {
    check_even_input(q)?;
    find_decomposition(q, &mode.query())
}

pub fn is_evenly_reducible(q: &Quiddity, mode: EvenMode) -> Result<bool> {
    Ok(even_decomposition(q, mode)?.is_some())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Phi1Mismatch {
    pub source: Vec<i64>,
    pub irreducible_over_i: bool,
    pub evenly_reducible_image: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Phi1LinkReport {
    pub max_size: usize,
    pub bound: u32,
    /// Classes over `<i>` examined, sizes `4..=max_size`.
    pub examined: usize,
    pub counterexamples: Vec<Phi1Mismatch>,
}

/// For every class over `<i>` with even size in `4..=max_size` inside the
/// bound: irreducible over `<i>` exactly when `φ_1` of it is evenly
/// irreducible over `Z` (up to equivalence).
pub fn phi1_link_check(max_size: usize, bound: u32, limit: WorkLimit) -> Result<Phi1LinkReport> {
    let gen = Generator::isqrt(1);
    let mut examined = 0;
    let mut counterexamples = Vec::new();
    for n in (4..=max_size).step_by(2) {
        let classes = enumerate_quiddities(&EnumSpec::new(gen, n, bound).canonical(), limit)?;
        let flags: Vec<(bool, bool)> = classes
            .par_iter()
            .map(|q| {
                let image = phi(q)?.target;
                Ok((
                    is_irreducible(q)?,
                    is_evenly_reducible(&image, EvenMode::UpToEquivalence)?,
                ))
            })
            .collect::<Result<_>>()?;
        for (q, (irr, red)) in classes.iter().zip(flags) {
            examined += 1;
            if irr == red {
                counterexamples.push(Phi1Mismatch {
                    source: q.coeffs().to_vec(),
                    irreducible_over_i: irr,
                    evenly_reducible_image: red,
                });
            }
        }
    }
    Ok(Phi1LinkReport {
        max_size,
        bound,
        examined,
        counterexamples,
    })
}

/// A resumable record of an even-irreducibility search over `Z`.
///
/// The prefix tree is cut into `total_shards` shards; `completed` lists the
/// finished shards as sorted, disjoint, non-adjacent half-open ranges.
/// Serializing a state twice gives the same bytes, and merging states that
/// cover disjoint shards is associative and commutative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenSearchState {
    pub size: usize,
    pub bound: u32,
    pub mode: EvenMode,
    pub total_shards: usize,
    pub completed: Vec<(usize, usize)>,
    /// Canonical classes examined in the completed shards.
    pub examined: u64,
    /// Canonical forms of the evenly irreducible classes found, sorted.
    pub found: Vec<Vec<i64>>,
}

fn normalize_ranges(mut ranges: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    ranges.retain(|(a, b)| a < b);
    ranges.sort_unstable();
    let mut out: Vec<(usize, usize)> = Vec::with_capacity(ranges.len());
    for (a, b) in ranges {
        match out.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

fn ranges_overlap(x: &[(usize, usize)], y: &[(usize, usize)]) -> bool {
    x.iter()
        .any(|&(a, b)| y.iter().any(|&(c, d)| a < d && c < b))
}

impl EvenSearchState {
    pub fn new(size: usize, bound: u32, mode: EvenMode) -> Result<EvenSearchState> {
        if size % 2 == 1 {
            return Err(Error::OddSize(size));
        }
        if size < 4 {
            return Err(Error::SizeTooSmall { size, min: 4 });
        }
        let sharding = Sharding::new(&search_spec(size, bound));
        Ok(EvenSearchState {
            size,
            bound,
            mode,
            total_shards: sharding.count,
            completed: Vec::new(),
            examined: 0,
            found: Vec::new(),
        })
    }

    pub fn is_complete(&self) -> bool {
        self.completed == [(0, self.total_shards)]
    }

    pub fn completed_shards(&self) -> usize {
        self.completed.iter().map(|(a, b)| b - a).sum()
    }

    fn pending(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut next = 0;
        for &(a, b) in &self.completed {
            out.extend(next..a);
            next = b;
        }
        out.extend(next..self.total_shards);
        out
    }

    fn same_search(&self, other: &EvenSearchState) -> bool {
        (self.size, self.bound, self.mode, self.total_shards)
            == (other.size, other.bound, other.mode, other.total_shards)
    }

    /// Combines two partial runs of the same search over disjoint shards.
    pub fn merge(&self, other: &EvenSearchState) -> Result<EvenSearchState> {
        if !self.same_search(other) {
            return Err(Error::Checkpoint(format!(
                "cannot merge search n={} B={} ({}) with n={} B={} ({})",
                self.size, self.bound, self.mode, other.size, other.bound, other.mode
            )));
        }
        if ranges_overlap(&self.completed, &other.completed) {
            return Err(Error::Checkpoint(
                "the two states share completed shards".into(),
            ));
        }
        let mut found: Vec<Vec<i64>> = self.found.iter().chain(&other.found).cloned().collect();
        found.sort_unstable();
        found.dedup();
        Ok(EvenSearchState {
            completed: normalize_ranges(
                self.completed
                    .iter()
                    .chain(&other.completed)
                    .copied()
                    .collect(),
            ),
            examined: self.examined + other.examined,
            found,
            ..self.clone()
        })
    }

    /// Checks internal consistency after loading from outside.
    pub fn validate(&self) -> Result<()> {
        let fresh = EvenSearchState::new(self.size, self.bound, self.mode)?;
        if fresh.total_shards != self.total_shards {
            return Err(Error::Checkpoint(format!(
                "expected {} shards, checkpoint has {}",
                fresh.total_shards, self.total_shards
            )));
        }
        if normalize_ranges(self.completed.clone()) != self.completed
            || self.completed.iter().any(|&(_, b)| b > self.total_shards)
        {
            return Err(Error::Checkpoint("completed ranges are malformed".into()));
        }
        if self.found.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Checkpoint(
                "found list is not sorted and unique".into(),
            ));
        }
        Ok(())
    }
}

fn search_spec(size: usize, bound: u32) -> EnumSpec {
    EnumSpec::new(Generator::integers(), size, bound)
}

/// How a call to [`search_evenly_irreducible`] ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Complete(EvenSearchState),
    /// Stopped at a shard boundary because the work limit or the shard
    /// budget ran out; the state resumes where this call stopped.
    Interrupted(EvenSearchState),
}

impl SearchOutcome {
    pub fn state(&self) -> &EvenSearchState {
        match self {
            SearchOutcome::Complete(s) | SearchOutcome::Interrupted(s) => s,
        }
    }

    pub fn into_state(self) -> EvenSearchState {
        match self {
            SearchOutcome::Complete(s) | SearchOutcome::Interrupted(s) => s,
        }
    }
}

struct ShardResult {
    index: usize,
    examined: u64,
    found: Vec<Vec<i64>>,
}

fn run_search_shard(
    state: &EvenSearchState,
    sharding: &Sharding,
    index: usize,
) -> Result<ShardResult> {
    let spec = search_spec(state.size, state.bound);
    let mut examined = 0;
    let mut found = Vec::new();
    for q in sharding.run(&spec, index) {
        if !q.is_canonical() {
            continue;
        }
        examined += 1;
        if !is_evenly_reducible(&q, state.mode)? {
            found.push(q.coeffs().to_vec());
        }
    }
    Ok(ShardResult {
        index,
        examined,
        found,
    })
}

/// Continues `state` over its pending shards, in shard order, until the
/// search is complete, the work limit is spent, or `max_shards` shards
/// have been processed in this call. Each call may visit at most `limit`
/// nodes; a single shard larger than that is an error.
pub fn search_evenly_irreducible(
    state: EvenSearchState,
    max_shards: Option<usize>,
    limit: WorkLimit,
) -> Result<SearchOutcome> {
    state.validate()?;
    let spec = search_spec(state.size, state.bound);
    let sharding = Sharding::new(&spec);
    let per_shard = sharding.nodes_per_shard(&spec);
    limit.check(per_shard)?;
    let affordable = (limit.0 as u128 / per_shard.max(1)).min(usize::MAX as u128) as usize;
    let pending = state.pending();
    let budget = max_shards.unwrap_or(usize::MAX).min(affordable);
    let batch: Vec<usize> = pending.iter().copied().take(budget).collect();
    let results: Vec<ShardResult> = batch
        .par_iter()
        .map(|&i| run_search_shard(&state, &sharding, i))
        .collect::<Result<_>>()?;
    let ranges: Vec<(usize, usize)> = results.iter().map(|r| (r.index, r.index + 1)).collect();
    let mut delta = EvenSearchState {
        completed: normalize_ranges(ranges),
        examined: results.iter().map(|r| r.examined).sum(),
        found: Vec::new(),
        ..state.clone()
    };
    delta.found = results.into_iter().flat_map(|r| r.found).collect();
    delta.found.sort_unstable();
    let merged = state.merge(&delta)?;
    Ok(if merged.is_complete() {
        SearchOutcome::Complete(merged)
    } else {
        SearchOutcome::Interrupted(merged)
    })
}

/// Runs a whole search from scratch.
pub fn evenly_irreducible(
    size: usize,
    bound: u32,
    mode: EvenMode,
    limit: WorkLimit,
) -> Result<Vec<Vec<i64>>> {
    let state = EvenSearchState::new(size, bound, mode)?;
    limit.check(search_spec(size, bound).nodes())?;
    match search_evenly_irreducible(state, None, limit)? {
        SearchOutcome::Complete(s) => Ok(s.found),
        SearchOutcome::Interrupted(s) => Err(Error::WorkLimitExceeded {
            required: search_spec(s.size, s.bound).nodes(),
            limit: limit.0,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zq(v: &[i64]) -> Quiddity {
        Quiddity::new(Generator::integers(), v.to_vec()).unwrap()
    }

    #[test]
    fn known_examples() {
        for mode in [EvenMode::Strict, EvenMode::UpToEquivalence] {
            assert!(is_evenly_reducible(&zq(&[2, 2, 1, 4, 1, 2]), mode).unwrap());
        }
        assert!(
            is_evenly_reducible(&zq(&[1, 2, 1, 2, 1, 2, 1, 2]), EvenMode::UpToEquivalence).unwrap()
        );
        assert!(!is_evenly_reducible(&zq(&[1; 6]), EvenMode::UpToEquivalence).unwrap());
        assert!(!is_evenly_reducible(&zq(&[1, 2, 1, 2]), EvenMode::Strict).unwrap());
    }

    #[test]
    fn input_errors() {
        assert_eq!(
            is_evenly_reducible(&zq(&[1, 1, 1]), EvenMode::Strict),
            Err(Error::OddSize(3))
        );
        assert!(matches!(
            is_evenly_reducible(&zq(&[0, 0]), EvenMode::Strict),
            Err(Error::SizeTooSmall { .. })
        ));
    }

    #[test]
    fn size_four_all_irreducible() {
        let found =
            evenly_irreducible(4, 2, EvenMode::UpToEquivalence, WorkLimit::default()).unwrap();
        let all =
            enumerate_quiddities(&search_spec(4, 2).canonical(), WorkLimit::default()).unwrap();
        let all: Vec<Vec<i64>> = all.iter().map(|q| q.coeffs().to_vec()).collect();
        assert_eq!(found, all);
    }

    #[test]
    fn size_six_contains_all_ones() {
        let found =
            evenly_irreducible(6, 1, EvenMode::UpToEquivalence, WorkLimit::default()).unwrap();
        assert!(found.contains(&vec![1; 6]));
    }

    #[test]
    fn resumed_search_matches_single_run() {
        let whole =
            evenly_irreducible(6, 2, EvenMode::UpToEquivalence, WorkLimit::default()).unwrap();
        let mut state = EvenSearchState::new(6, 2, EvenMode::UpToEquivalence).unwrap();
        let mut steps = 0;
        loop {
            let json = serde_json::to_string(&state).unwrap();
            let reloaded: EvenSearchState = serde_json::from_str(&json).unwrap();
            assert_eq!(serde_json::to_string(&reloaded).unwrap(), json);
            match search_evenly_irreducible(reloaded, Some(7), WorkLimit::default()).unwrap() {
                SearchOutcome::Complete(s) => {
                    state = s;
                    break;
                }
                SearchOutcome::Interrupted(s) => state = s,
            }
            steps += 1;
        }
        assert!(steps > 1);
        assert_eq!(state.found, whole);
    }

    #[test]
    fn merge_is_order_independent() {
        let base = EvenSearchState::new(6, 1, EvenMode::Strict).unwrap();
        let a = search_evenly_irreducible(base.clone(), Some(3), WorkLimit::default())
            .unwrap()
            .into_state();
        let mut b_start = base.clone();
        b_start.completed = vec![(0, 3)];
        let b = search_evenly_irreducible(b_start, None, WorkLimit::default())
            .unwrap()
            .into_state();
        let mut b_only = b.clone();
        b_only.completed = vec![(3, base.total_shards)];
        let ab = a.merge(&b_only).unwrap();
        let ba = b_only.merge(&a).unwrap();
        assert_eq!(ab, ba);
        assert!(ab.is_complete());
        assert!(a.merge(&a).is_err());
    }

    #[test]
    fn work_limit_interrupts_at_shard_boundary() {
        let state = EvenSearchState::new(8, 2, EvenMode::UpToEquivalence).unwrap();
        let spec = search_spec(8, 2);
        let per = Sharding::new(&spec).nodes_per_shard(&spec) as u64;
        let out = search_evenly_irreducible(state, None, WorkLimit(per * 4)).unwrap();
        let SearchOutcome::Interrupted(s) = out else {
            panic!("expected an interruption");
        };
        assert_eq!(s.completed, vec![(0, 4)]);
        let tiny = EvenSearchState::new(8, 2, EvenMode::UpToEquivalence).unwrap();
        assert!(matches!(
            search_evenly_irreducible(tiny, None, WorkLimit(10)),
            Err(Error::WorkLimitExceeded { .. })
        ));
    }

    #[test]
    fn phi1_link_small() {
        let r = phi1_link_check(6, 1, WorkLimit::default()).unwrap();
        assert!(r.counterexamples.is_empty(), "{:?}", r.counterexamples);
        assert!(r.examined > 0);
    }
}
