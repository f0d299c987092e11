//! Tail completion, bounded enumeration, exact reducibility and the
//! irreducible classification built on top of them.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::matrix::{Mat2, Sign};
use crate::quiddity::{dihedral_representative, product_unchecked, quiddity_sign, Quiddity};
use crate::ring::RingElem;

/// Default cap on the number of search-tree nodes a single call may visit.
pub const DEFAULT_WORK_LIMIT: u64 = 100_000_000;

/// Environment variable consulted by [`WorkLimit::from_env`].
pub const WORK_LIMIT_ENV: &str = "QUIDDITY_WORK_LIMIT";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkLimit(pub u64);

impl Default for WorkLimit {
    fn default() -> Self {
        WorkLimit(DEFAULT_WORK_LIMIT)
    }
}

impl WorkLimit {
    /// The value of `QUIDDITY_WORK_LIMIT` when set and valid, else the default.
    pub fn from_env() -> WorkLimit {
        std::env::var(WORK_LIMIT_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(WorkLimit)
            .unwrap_or_default()
    }

    pub fn check(self, required: u128) -> Result<()> {
        if required > self.0 as u128 {
            Err(Error::WorkLimitExceeded {
                required,
                limit: self.0,
            })
        } else {
            Ok(())
        }
    }
}

/// One way of closing a prefix: `M(y) M(x) P = sign * Id`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Completion {
    pub x: i64,
    pub y: i64,
    pub sign: Sign,
}

/// The unique candidate `(x, y, sign)` as ring elements, before any
/// subgroup membership test.
fn forced_tail(p: &Mat2) -> Option<(RingElem, RingElem, Sign)> {
    let sign = if p.e11.is_one() {
        Sign::Minus
    } else if p.e11.is_minus_one() {
        Sign::Plus
    } else {
        return None;
    };
    let x = sign.apply(&-&p.e21);
    let y = sign.apply(&p.e12);
    let lhs = sign.apply(&p.e22);
    let rhs = &(&x * &y) - &RingElem::one();
    (lhs == rhs).then_some((x, y, sign))
}

/// All `(x, y)` in the subgroup with `M(y) M(x) P = e * Id`. The sign is
/// forced by the `(1,1)` entry of `P`, so there is at most one completion.
pub fn solve_tail2(p: &Mat2, gen: &Generator) -> Result<Vec<Completion>> {
    if !p.det().is_one() {
        return Err(Error::NotUnimodular);
    }
    let Some((x, y, sign)) = forced_tail(p) else {
        return Ok(Vec::new());
    };
    match (gen.coefficient(&x)?, gen.coefficient(&y)?) {
        (Some(x), Some(y)) => Ok(vec![Completion { x, y, sign }]),
        _ => Ok(Vec::new()),
    }
}

/// A bounded enumeration request.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumSpec {
    pub gen: Generator,
    pub size: usize,
    pub bound: u32,
    pub canonical_only: bool,
}

impl EnumSpec {
    pub fn new(gen: Generator, size: usize, bound: u32) -> EnumSpec {
        EnumSpec {
            gen,
            size,
            bound,
            canonical_only: false,
        }
    }

    pub fn canonical(self) -> EnumSpec {
        EnumSpec {
            canonical_only: true,
            ..self
        }
    }

    /// Nodes of the prefix tree: `sum_{j=0}^{n-2} R^j` for `R` allowed
    /// coefficients.
    pub fn nodes(&self) -> u128 {
        search_nodes(self.gen.coeff_range(self.bound).len(), self.size)
    }
}

fn search_nodes(r: usize, size: usize) -> u128 {
    let depth = size.saturating_sub(2) as u32;
    let r = r as u128;
    let mut total: u128 = 0;
    let mut level: u128 = 1;
    for _ in 0..=depth {
        total = total.saturating_add(level);
        level = level.saturating_mul(r);
    }
    total
}

impl std::fmt::Display for EnumSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} n={} B={}", self.gen, self.size, self.bound)
    }
}

struct Search<'a> {
    gen: Generator,
    size: usize,
    bound: u32,
    range: &'a [i64],
    elems: &'a [RingElem],
}

impl Search<'_> {
    fn tail(&self, p: &Mat2) -> Option<(i64, i64, Sign)> {
        let (x, y, sign) = forced_tail(p)?;
        // an overflowing coefficient is certainly outside the bound
        let x = self.gen.coefficient(&x).ok().flatten()?;
        let y = self.gen.coefficient(&y).ok().flatten()?;
        (self.gen.in_bound(x, self.bound) && self.gen.in_bound(y, self.bound))
            .then_some((x, y, sign))
    }

    fn dfs(&self, prefix: &mut Vec<i64>, p: &Mat2, out: &mut Vec<Quiddity>) {
        if prefix.len() + 2 == self.size {
            if let Some((x, y, sign)) = self.tail(p) {
                let mut coeffs = Vec::with_capacity(self.size);
                coeffs.extend_from_slice(prefix);
                coeffs.push(x);
                coeffs.push(y);
                out.push(Quiddity::from_verified(self.gen, coeffs, sign));
            }
            return;
        }
        for (c, a) in self.range.iter().zip(self.elems) {
            let next = p.left_factor(a);
            prefix.push(*c);
            self.dfs(prefix, &next, out);
            prefix.pop();
        }
    }
}

/// How the prefix tree of an enumeration is cut into independent shards:
/// shard `i` fixes the first `depth` coefficients to the base-`R` digits of
/// `i`, most significant first, so shard order is lexicographic order.
#[derive(Clone, Debug)]
pub(crate) struct Sharding {
    pub range: Vec<i64>,
    pub elems: Vec<RingElem>,
    pub depth: usize,
    pub count: usize,
}

impl Sharding {
    pub fn new(spec: &EnumSpec) -> Sharding {
        let range = spec.gen.coeff_range(spec.bound);
        let elems = spec.gen.elements(&range);
        let depth = spec.size.saturating_sub(2).min(2);
        let count = range.len().pow(depth as u32);
        Sharding {
            range,
            elems,
            depth,
            count,
        }
    }

    /// Nodes visited below (and including) one shard root.
    pub fn nodes_per_shard(&self, spec: &EnumSpec) -> u128 {
        search_nodes(self.range.len(), spec.size - self.depth)
    }

    fn digits(&self, mut index: usize) -> Vec<usize> {
        let r = self.range.len();
        let mut d = vec![0; self.depth];
        for slot in d.iter_mut().rev() {
            *slot = index % r;
            index /= r;
        }
        d
    }

    /// All quiddities in shard `index`, in lexicographic order.
    pub fn run(&self, spec: &EnumSpec, index: usize) -> Vec<Quiddity> {
        let search = Search {
            gen: spec.gen,
            size: spec.size,
            bound: spec.bound,
            range: &self.range,
            elems: &self.elems,
        };
        let digits = self.digits(index);
        let prefix_elems: Vec<RingElem> = digits.iter().map(|&i| self.elems[i].clone()).collect();
        let p = product_unchecked(&prefix_elems);
        let mut prefix: Vec<i64> = digits.iter().map(|&i| self.range[i]).collect();
        let mut out = Vec::new();
        search.dfs(&mut prefix, &p, &mut out);
        out
    }
}

/// Every quiddity of the given size with all coefficients inside the bound,
/// sorted by coefficients. With `canonical_only`, one representative (the
/// canonical form) per dihedral class.
///
/// The first one or two coefficients are split across the current rayon
/// pool; the output does not depend on the number of threads.
pub fn enumerate_quiddities(spec: &EnumSpec, limit: WorkLimit) -> Result<Vec<Quiddity>> {
    if spec.size < 2 {
        return Err(Error::SizeTooSmall {
            size: spec.size,
            min: 2,
        });
    }
    limit.check(spec.nodes())?;
    let sharding = Sharding::new(spec);
    let parts: Vec<Vec<Quiddity>> = (0..sharding.count)
        .into_par_iter()
        .map(|index| {
            let mut out = sharding.run(spec, index);
            if spec.canonical_only {
                out.retain(Quiddity::is_canonical);
            }
            out
        })
        .collect();
    let mut all: Vec<Quiddity> = parts.into_iter().flatten().collect();
    all.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    Ok(all)
}

/// Which summand sizes are allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    #[default]
    Any,
    EvenOnly,
}

/// Which images of the tuple may carry the splitting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Equivalence {
    /// All `2n` rotations and reversals.
    #[default]
    Dihedral,
    /// The tuple exactly as given.
    Literal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionQuery {
    pub min_a: usize,
    pub min_b: usize,
    pub parity: Parity,
    pub equivalence: Equivalence,
}

impl Default for DecompositionQuery {
    fn default() -> Self {
        DecompositionQuery {
            min_a: 3,
            min_b: 3,
            parity: Parity::Any,
            equivalence: Equivalence::Dihedral,
        }
    }
}

impl DecompositionQuery {
    /// Even summands of size at least 4.
    pub fn even() -> DecompositionQuery {
        DecompositionQuery {
            min_a: 4,
            min_b: 4,
            parity: Parity::EvenOnly,
            equivalence: Equivalence::Dihedral,
        }
    }

    pub fn literal(self) -> DecompositionQuery {
        DecompositionQuery {
            equivalence: Equivalence::Literal,
            ..self
        }
    }

    fn admits(&self, m: usize, l: usize) -> bool {
        m >= self.min_a
            && l >= self.min_b
            && (self.parity == Parity::Any || (m.is_multiple_of(2) && l.is_multiple_of(2)))
    }
}

/// A witness `rep = a ⊕ b`, where `rep` is the image of the quiddity read
/// from `rotation` (then reversed if `reversed`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub rotation: usize,
    pub reversed: bool,
    pub a: Vec<i64>,
    pub a_sign: Sign,
    pub b: Vec<i64>,
    pub b_sign: Sign,
}

impl Decomposition {
    pub fn representative(&self, q: &Quiddity) -> Vec<i64> {
        dihedral_representative(q.coeffs(), self.rotation, self.reversed)
    }

    /// Re-checks the witness against `q` from scratch.
    pub fn verify(&self, q: &Quiddity, query: &DecompositionQuery) -> bool {
        let gen = q.generator();
        let (m, l) = (self.a.len(), self.b.len());
        if m + l != q.len() + 2 || !query.admits(m, l) {
            return false;
        }
        if query.equivalence == Equivalence::Literal && (self.rotation != 0 || self.reversed) {
            return false;
        }
        if gen.is_nonneg() && self.a.iter().chain(&self.b).any(|&c| c < 0) {
            return false;
        }
        let joined = match crate::quiddity::sum_oplus(&self.a, &self.b) {
            Ok(v) => v,
            Err(_) => return false,
        };
        joined == self.representative(q)
            && quiddity_sign(gen, &self.a) == Some(self.a_sign)
            && quiddity_sign(gen, &self.b) == Some(self.b_sign)
    }
}

/// Decides whether some dihedral image of `q` splits as `a ⊕ b` with both
/// summands quiddities over the same subgroup, for any coefficient size.
///
/// For each image `r` and each size `l` of `b`, the middle of `b` is the
/// window `r[m..n]`, `m = n + 2 - l`; the two boundary entries of `b` are
/// then forced exactly as in [`solve_tail2`]. Images are scanned by
/// rotation, then reversal, then `l` ascending, and the first witness wins.
pub fn find_decomposition(
    q: &Quiddity,
    query: &DecompositionQuery,
) -> Result<Option<Decomposition>> {
    let n = q.len();
    if n < 4 {
        return Ok(None);
    }
    let gen = q.generator();
    let images: Vec<(usize, bool)> = match query.equivalence {
        Equivalence::Dihedral => (0..n).flat_map(|r| [(r, false), (r, true)]).collect(),
        Equivalence::Literal => vec![(0, false)],
    };
    for (rotation, reversed) in images {
        let r = dihedral_representative(q.coeffs(), rotation, reversed);
        let elems = gen.elements(&r);
        let mut p = Mat2::identity();
        for l in 3..n {
            let m = n + 2 - l;
            // P = M(r[n-1]) ... M(r[m]), the middle of b
            p = p.right_factor(&elems[m]);
            if !query.admits(m, l) {
                continue;
            }
            if let Some(d) = close_window(gen, &r, m, &p, rotation, reversed)? {
                return Ok(Some(d));
            }
        }
    }
    Ok(None)
}

/// Solves `M(y) P M(x) = e * Id` for the boundary of `b` and checks the
/// induced `a`.
fn close_window(
    gen: &Generator,
    r: &[i64],
    m: usize,
    p: &Mat2,
    rotation: usize,
    reversed: bool,
) -> Result<Option<Decomposition>> {
    // M(y) P M(x) = e Id  <=>  P = e M(y)^{-1} M(x)^{-1} = e [[-1, x], [-y, xy - 1]]
    let b_sign = if p.e11.is_one() {
        Sign::Minus
    } else if p.e11.is_minus_one() {
        Sign::Plus
    } else {
        return Ok(None);
    };
    let x = b_sign.apply(&p.e12);
    let y = b_sign.apply(&-&p.e21);
    if b_sign.apply(&p.e22) != &(&x * &y) - &RingElem::one() {
        return Ok(None);
    }
    let (Some(x), Some(y)) = (gen.coefficient(&x)?, gen.coefficient(&y)?) else {
        return Ok(None);
    };
    let n = r.len();
    let a_first = r[0].checked_sub(y).ok_or(Error::CoefficientOverflow)?;
    let a_last = r[m - 1].checked_sub(x).ok_or(Error::CoefficientOverflow)?;
    if gen.is_nonneg() && (a_first < 0 || a_last < 0) {
        return Ok(None);
    }
    let mut a = Vec::with_capacity(m);
    a.push(a_first);
    a.extend_from_slice(&r[1..m - 1]);
    a.push(a_last);
    let Some(a_sign) = quiddity_sign(gen, &a) else {
        return Ok(None);
    };
    let mut b = Vec::with_capacity(n + 2 - m);
    b.push(x);
    b.extend_from_slice(&r[m..]);
    b.push(y);
    debug_assert_eq!(quiddity_sign(gen, &b), Some(b_sign));
    Ok(Some(Decomposition {
        rotation,
        reversed,
        a,
        a_sign,
        b,
        b_sign,
    }))
}

/// Size 2 is never irreducible, size 3 always is; from size 4 on, a
/// quiddity is irreducible when no decomposition with summands of size at
/// least 3 exists.
pub fn is_irreducible(q: &Quiddity) -> Result<bool> {
    match q.len() {
        0..=2 => Ok(false),
        3 => Ok(true),
        _ => Ok(find_decomposition(q, &DecompositionQuery::default())?.is_none()),
    }
}

/// True when at least two entries have modulus below 2.
pub fn check_two_small_entries(q: &Quiddity) -> Result<bool> {
    let gen = q.generator();
    if !gen.has_modulus() {
        return Err(Error::NoModulus(gen.to_string()));
    }
    let mut small = 0;
    for e in q.elements() {
        if e.cmp_abs2_with4()? == Ordering::Less {
            small += 1;
            if small >= 2 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// A classification request over a range of sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifySpec {
    pub gen: Generator,
    pub min_size: usize,
    pub max_size: usize,
    pub bound: u32,
}

impl ClassifySpec {
    pub fn nodes(&self) -> u128 {
        (self.min_size..=self.max_size)
            .map(|n| EnumSpec::new(self.gen, n, self.bound).nodes())
            .fold(0u128, u128::saturating_add)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeSummary {
    pub size: usize,
    /// Quiddities within the bound, counted as tuples.
    pub quiddities: usize,
    /// Dihedral classes among them.
    pub classes: usize,
    /// Irreducible classes.
    pub irreducible: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub spec: ClassifySpec,
    pub sizes: Vec<SizeSummary>,
    /// Canonical forms of the irreducible classes, by size then coefficients.
    pub irreducibles: Vec<Quiddity>,
    /// Canonical forms failing [`check_two_small_entries`]; always empty
    /// unless the two-small-entries theorem is false.
    pub two_small_violations: Vec<Quiddity>,
}

/// Enumerates every size in the range within the bound and keeps the
/// irreducible classes. The work limit covers the whole range and is
/// checked before anything runs.
pub fn classify_irreducibles(spec: &ClassifySpec, limit: WorkLimit) -> Result<Classification> {
    if spec.min_size < 2 {
        return Err(Error::SizeTooSmall {
            size: spec.min_size,
            min: 2,
        });
    }
    limit.check(spec.nodes())?;
    let mut sizes = Vec::new();
    let mut irreducibles = Vec::new();
    let mut two_small_violations = Vec::new();
    for n in spec.min_size..=spec.max_size {
        let all = enumerate_quiddities(&EnumSpec::new(spec.gen, n, spec.bound), limit)?;
        let classes: Vec<Quiddity> = all.iter().filter(|q| q.is_canonical()).cloned().collect();
        let flags: Vec<(bool, bool)> = classes
            .par_iter()
            .map(|q| -> Result<(bool, bool)> {
                let two_small = if spec.gen.has_modulus() {
                    check_two_small_entries(q)?
                } else {
                    true
                };
                Ok((is_irreducible(q)?, two_small))
            })
            .collect::<Result<_>>()?;
        let mut irreducible = 0;
        for (q, (irr, two_small)) in classes.iter().zip(flags) {
            if irr {
                irreducible += 1;
                irreducibles.push(q.clone());
            }
            if !two_small {
                two_small_violations.push(q.clone());
            }
        }
        sizes.push(SizeSummary {
            size: n,
            quiddities: all.len(),
            classes: classes.len(),
            irreducible,
        });
    }
    Ok(Classification {
        spec: *spec,
        sizes,
        irreducibles,
        two_small_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Generator {
        Generator::integers()
    }

    #[test]
    fn empty_prefix_closes_with_zeros() {
        let c = solve_tail2(&Mat2::identity(), &z()).unwrap();
        assert_eq!(
            c,
            vec![Completion {
                x: 0,
                y: 0,
                sign: Sign::Minus
            }]
        );
    }

    #[test]
    fn prefix_one_closes_to_all_ones() {
        let p = Mat2::factor(&RingElem::one());
        let c = solve_tail2(&p, &z()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].x, c[0].y), (1, 1));
        let size3 = enumerate_quiddities(&EnumSpec::new(z(), 3, 5), WorkLimit::default()).unwrap();
        let coeffs: Vec<_> = size3.iter().map(|q| q.coeffs().to_vec()).collect();
        assert_eq!(coeffs, vec![vec![-1, -1, -1], vec![1, 1, 1]]);
    }

    #[test]
    fn sqrt2_prefix_closes() {
        let g = Generator::sqrt(2);
        let p = product_unchecked(&g.elements(&[1, 1]));
        let c = solve_tail2(&p, &g).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].x, c[0].y), (1, 1));
    }

    #[test]
    fn non_unimodular_rejected() {
        let p = Mat2::new(2.into(), 0.into(), 0.into(), 1.into());
        assert_eq!(solve_tail2(&p, &z()), Err(Error::NotUnimodular));
    }

    #[test]
    fn size_two_over_z() {
        let all = enumerate_quiddities(&EnumSpec::new(z(), 2, 3), WorkLimit::default()).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].coeffs(), &[0, 0]);
    }

    #[test]
    fn size_four_classes_over_z() {
        let spec = EnumSpec::new(z(), 4, 3).canonical();
        let all = enumerate_quiddities(&spec, WorkLimit::default()).unwrap();
        let coeffs: Vec<_> = all.iter().map(|q| q.coeffs().to_vec()).collect();
        assert_eq!(
            coeffs,
            vec![
                vec![-3, 0, 3, 0],
                vec![-2, -1, -2, -1],
                vec![-2, 0, 2, 0],
                vec![-1, 0, 1, 0],
                vec![0, 0, 0, 0],
                vec![1, 2, 1, 2],
            ]
        );
    }

    #[test]
    fn odd_sizes_empty_over_imaginary_generators() {
        for k in 1..=3 {
            for n in [3, 5] {
                let spec = EnumSpec::new(Generator::isqrt(k), n, 3);
                assert!(enumerate_quiddities(&spec, WorkLimit::default())
                    .unwrap()
                    .is_empty());
            }
        }
    }

    #[test]
    fn work_limit_enforced_up_front() {
        let spec = EnumSpec::new(z(), 10, 10);
        match enumerate_quiddities(&spec, WorkLimit(1000)) {
            Err(Error::WorkLimitExceeded { required, limit }) => {
                assert_eq!(limit, 1000);
                assert!(required > 1000);
            }
            other => panic!("expected work limit error, got {other:?}"),
        }
    }

    #[test]
    fn even_example_decomposes() {
        let q = Quiddity::new(z(), vec![2, 2, 1, 4, 1, 2]).unwrap();
        let query = DecompositionQuery::default();
        let d = find_decomposition(&q, &query).unwrap().expect("reducible");
        assert!(d.verify(&q, &query));
    }

    #[test]
    fn all_ones_six_has_no_even_split() {
        let q = Quiddity::new(z(), vec![1; 6]).unwrap();
        assert!(find_decomposition(&q, &DecompositionQuery::even())
            .unwrap()
            .is_none());
    }

    #[test]
    fn zero_entry_forces_size_four_summand() {
        let q = Quiddity::new(z(), vec![1, 1, 0, 0, 1]).unwrap();
        let d = find_decomposition(&q, &DecompositionQuery::default())
            .unwrap()
            .unwrap();
        assert!(d.verify(&q, &DecompositionQuery::default()));
        assert!(d.a.len() == 4 || d.b.len() == 4);
    }

    #[test]
    fn irreducibility_examples() {
        let nn = Generator::integers().nonneg();
        assert!(is_irreducible(&Quiddity::new(nn, vec![0, 0, 0, 0]).unwrap()).unwrap());
        for m in [0, 2, -3, 4] {
            let q = Quiddity::new(z(), vec![0, m, 0, -m]).unwrap();
            assert!(is_irreducible(&q).unwrap(), "m = {m}");
        }
        let q = Quiddity::new(z(), vec![0, 1, 0, -1]).unwrap();
        assert!(!is_irreducible(&q).unwrap());
        assert!(!is_irreducible(&Quiddity::new(z(), vec![0, 0]).unwrap()).unwrap());
        assert!(is_irreducible(&Quiddity::new(z(), vec![1, 1, 1]).unwrap()).unwrap());
    }

    #[test]
    fn two_small_entries_examples() {
        assert!(check_two_small_entries(&Quiddity::new(z(), vec![0, 0]).unwrap()).unwrap());
        let r2 = Quiddity::new(Generator::sqrt(2), vec![1; 4]).unwrap();
        assert!(check_two_small_entries(&r2).unwrap());
        let alpha = Quiddity::new(Generator::alpha(), vec![0, 0]).unwrap();
        assert!(matches!(
            check_two_small_entries(&alpha),
            Err(Error::NoModulus(_))
        ));
    }

    #[test]
    fn sqrt2_classification_small() {
        let spec = ClassifySpec {
            gen: Generator::sqrt(2),
            min_size: 3,
            max_size: 6,
            bound: 2,
        };
        let c = classify_irreducibles(&spec, WorkLimit::default()).unwrap();
        let coeffs: Vec<_> = c.irreducibles.iter().map(|q| q.coeffs().to_vec()).collect();
        assert_eq!(
            coeffs,
            vec![
                vec![-2, 0, 2, 0],
                vec![-1, -1, -1, -1],
                vec![-1, 0, 1, 0],
                vec![0, 0, 0, 0],
                vec![1, 1, 1, 1],
            ]
        );
        assert!(c.two_small_violations.is_empty());
    }
}
