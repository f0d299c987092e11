//! Triangulated convex polygons with integer labels on the triangles, and
//! the quiddities read off from their vertex sums.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{GenKind, Generator};
use crate::quiddity::{canonical_form, dihedral_representative, Quiddity};
use crate::solve::WorkLimit;

/// Largest polygon accepted by [`enumerate_triangulations`].
pub const MAX_POLYGON: usize = 12;

/// Largest quiddity accepted by [`find_labeling`].
pub const MAX_LABELING_SIZE: usize = 10;

/// A triangulation of the convex polygon with vertices `0..n` in cyclic
/// order. Triangles are sorted vertex triples; the dual tree joins
/// triangles sharing a diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTriangulation", into = "RawTriangulation")]
pub struct Triangulation {
    n: usize,
    triangles: Vec<[usize; 3]>,
    adjacency: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawTriangulation {
    n: usize,
    triangles: Vec<[usize; 3]>,
}

impl TryFrom<RawTriangulation> for Triangulation {
    type Error = Error;
    fn try_from(raw: RawTriangulation) -> Result<Triangulation> {
        Triangulation::from_triangles(raw.n, raw.triangles)
    }
}

impl From<Triangulation> for RawTriangulation {
    fn from(t: Triangulation) -> RawTriangulation {
        RawTriangulation {
            n: t.n,
            triangles: t.triangles,
        }
    }
}

fn is_side(n: usize, a: usize, b: usize) -> bool {
    let (a, b) = (a.min(b), a.max(b));
    b == a + 1 || (a == 0 && b == n - 1)
}

fn crosses(d: (usize, usize), e: (usize, usize)) -> bool {
    let (a, b) = d;
    let (c, f) = e;
    let inside = |x: usize| a < x && x < b;
    let distinct = a != c && a != f && b != c && b != f;
    distinct && (inside(c) != inside(f))
}

impl Triangulation {
    /// Validates a list of triangles as a triangulation of the `n`-gon. The
    /// triangle order is kept, so labels can be given in the same order.
    pub fn from_triangles(n: usize, triangles: Vec<[usize; 3]>) -> Result<Triangulation> {
        let bad = |why: &str| Error::Parse(format!("invalid triangulation: {why}"));
        if n < 3 {
            return Err(Error::SizeTooSmall { size: n, min: 3 });
        }
        if triangles.len() != n - 2 {
            return Err(bad("a polygon with n vertices needs n-2 triangles"));
        }
        let mut sorted = Vec::with_capacity(triangles.len());
        for t in triangles {
            let mut t = t;
            t.sort_unstable();
            if t[2] >= n || t[0] == t[1] || t[1] == t[2] {
                return Err(bad("triangle vertices must be distinct and below n"));
            }
            sorted.push(t);
        }
        let mut edges: Vec<(usize, usize)> = sorted
            .iter()
            .flat_map(|t| [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])])
            .collect();
        edges.sort_unstable();
        let mut diagonals = Vec::new();
        let mut i = 0;
        while i < edges.len() {
            let mut j = i;
            while j < edges.len() && edges[j] == edges[i] {
                j += 1;
            }
            let (a, b) = edges[i];
            let expected = if is_side(n, a, b) { 1 } else { 2 };
            if j - i != expected {
                return Err(bad(
                    "every side must lie in one triangle and every diagonal in two",
                ));
            }
            if expected == 2 {
                diagonals.push((a, b));
            }
            i = j;
        }
        for (x, d) in diagonals.iter().enumerate() {
            if diagonals[x + 1..].iter().any(|e| crosses(*d, *e)) {
                return Err(bad("diagonals cross"));
            }
        }
        Ok(Triangulation::build(n, sorted))
    }

    fn build(n: usize, triangles: Vec<[usize; 3]>) -> Triangulation {
        let shares_side =
            |s: &[usize; 3], t: &[usize; 3]| s.iter().filter(|v| t.contains(v)).count() == 2;
        let adjacency = (0..triangles.len())
            .map(|i| {
                (0..triangles.len())
                    .filter(|&j| j != i && shares_side(&triangles[i], &triangles[j]))
                    .collect()
            })
            .collect();
        Triangulation {
            n,
            triangles,
            adjacency,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Neighbors of triangle `t` in the dual tree.
    pub fn neighbors(&self, t: usize) -> &[usize] {
        &self.adjacency[t]
    }

    /// Dual-tree edges `(s, t)` with `s < t`, sorted.
    pub fn dual_edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(s, ns)| ns.iter().filter(move |&&t| t > s).map(move |&t| (s, t)))
            .collect()
    }
}

fn triangulate_range(i: usize, j: usize) -> Vec<Vec<[usize; 3]>> {
    if j < i + 2 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in i + 1..j {
        let left = triangulate_range(i, k);
        let right = triangulate_range(k, j);
        for l in &left {
            for r in &right {
                let mut t = vec![[i, k, j]];
                t.extend_from_slice(l);
                t.extend_from_slice(r);
                out.push(t);
            }
        }
    }
    out
}

/// All triangulations of the convex `n`-gon, `3 <= n <= 12`, in a fixed
/// order (by apex of the triangle on the side `(0, n-1)`, recursively).
pub fn enumerate_triangulations(n: usize) -> Result<Vec<Triangulation>> {
    if n < 3 {
        return Err(Error::SizeTooSmall { size: n, min: 3 });
    }
    if n > MAX_POLYGON {
        return Err(Error::SizeLimit {
            size: n,
            max: MAX_POLYGON,
        });
    }
    Ok(triangulate_range(0, n - 1)
        .into_iter()
        .map(|mut ts| {
            ts.sort_unstable();
            Triangulation::build(n, ts)
        })
        .collect())
}

/// The Catalan number `C_m`.
pub fn catalan(m: usize) -> u128 {
    (0..m as u128).fold(1u128, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

/// How labels equal to 0 are treated by admissibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroPolicy {
    /// 0 is not a unit, so a 0-labeled triangle pairs with an adjacent
    /// 0-labeled triangle like any other label.
    #[default]
    Strict,
    /// 0-labeled triangles need no partner.
    Exempt,
}

impl ZeroPolicy {
    fn needs_partner(self, label: i64) -> bool {
        match label {
            1 | -1 => false,
            0 => self == ZeroPolicy::Strict,
            _ => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Labeling {
    pub triangulation: Triangulation,
    pub labels: Vec<i64>,
}

impl Labeling {
    pub fn new(triangulation: Triangulation, labels: Vec<i64>) -> Result<Labeling> {
        if labels.len() != triangulation.triangles.len() {
            return Err(Error::Parse(format!(
                "{} labels for {} triangles",
                labels.len(),
                triangulation.triangles.len()
            )));
        }
        Ok(Labeling {
            triangulation,
            labels,
        })
    }

    /// Label sums at vertices `0..n` in cyclic order.
    pub fn vertex_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.triangulation.n];
        for (t, &label) in self.triangulation.triangles.iter().zip(&self.labels) {
            for &v in t {
                sums[v] += label;
            }
        }
        sums
    }

    /// A text picture: one line per triangle, the pairing used, and the vertex sums.
    pub fn diagram(&self, policy: ZeroPolicy) -> String {
        let mut s = String::new();
        let tri = &self.triangulation;
        let _ = writeln!(
            s,
            "{}-gon, vertices 0..{} in cyclic order",
            tri.n,
            tri.n - 1
        );
        for (i, (t, l)) in tri.triangles.iter().zip(&self.labels).enumerate() {
            let _ = writeln!(s, "  t{i} = ({}, {}, {})  label {l}", t[0], t[1], t[2]);
        }
        match admissible_pairing(self, policy) {
            Some(pairs) if pairs.is_empty() => {
                let _ = writeln!(s, "  pairs: none");
            }
            Some(pairs) => {
                let list: Vec<String> = pairs.iter().map(|(a, b)| format!("t{a}~t{b}")).collect();
                let _ = writeln!(s, "  pairs: {}", list.join(" "));
            }
            None => {
                let _ = writeln!(s, "  not admissible");
            }
        }
        let sums: Vec<String> = self
            .vertex_sums()
            .iter()
            .enumerate()
            .map(|(v, c)| format!("v{v}={c}"))
            .collect();
        let _ = writeln!(s, "  vertex sums: {}", sums.join(" "));
        s
    }
}

/// The pairing of the triangles whose labels need a partner, as dual-tree
/// edges `(s, t)` with labels `a` and `-a`, or `None` if there is none.
///
/// Compatible edges form a forest, so matching leaves to their parents in
/// post-order finds a maximum matching; the labeling is admissible exactly
/// when that matching covers every triangle needing a partner.
pub fn admissible_pairing(l: &Labeling, policy: ZeroPolicy) -> Option<Vec<(usize, usize)>> {
    let tri = &l.triangulation;
    let m = tri.triangles.len();
    let needs: Vec<bool> = l.labels.iter().map(|&a| policy.needs_partner(a)).collect();
    let mut parent = vec![usize::MAX; m];
    let mut order = Vec::with_capacity(m);
    let mut seen = vec![false; m];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(t) = stack.pop() {
        order.push(t);
        for &u in &tri.adjacency[t] {
            if !seen[u] {
                seen[u] = true;
                parent[u] = t;
                stack.push(u);
            }
        }
    }
    let mut matched = vec![false; m];
    let mut pairs = Vec::new();
    for &t in order.iter().rev() {
        let p = parent[t];
        if !needs[t] || matched[t] || p == usize::MAX {
            continue;
        }
        if needs[p] && !matched[p] && l.labels[t] == -l.labels[p] {
            matched[t] = true;
            matched[p] = true;
            pairs.push((t.min(p), t.max(p)));
        }
    }
    if (0..m).any(|t| needs[t] && !matched[t]) {
        return None;
    }
    pairs.sort_unstable();
    Some(pairs)
}

pub fn is_admissible(l: &Labeling) -> bool {
    is_admissible_with(l, ZeroPolicy::default())
}

pub fn is_admissible_with(l: &Labeling, policy: ZeroPolicy) -> bool {
    admissible_pairing(l, policy).is_some()
}

/// The canonical form of the vertex-sum cycle, checked to be a quiddity
/// over `Z`.
pub fn quiddity_of_labeling(l: &Labeling) -> Result<Quiddity> {
    quiddity_of_labeling_with(l, ZeroPolicy::default())
}

pub fn quiddity_of_labeling_with(l: &Labeling, policy: ZeroPolicy) -> Result<Quiddity> {
    if !is_admissible_with(l, policy) {
        return Err(Error::NotAdmissible);
    }
    let sums = canonical_form(&l.vertex_sums());
    Quiddity::new(Generator::integers(), sums.clone()).map_err(|_| {
        Error::TheoremViolated(format!(
            "labels {:?} give {:?}, which is not a quiddity",
            l.labels, sums
        ))
    })
}

/// Every admissible labeling of `tri` with labels in `[-bound, bound]`,
/// built from the matchings of the dual tree (each labeling arises from
/// exactly one matching). Sorted by labels.
pub fn admissible_labelings(tri: &Triangulation, bound: u32, policy: ZeroPolicy) -> Vec<Labeling> {
    let b = bound as i64;
    let pair_values: Vec<i64> = (0..=b).filter(|&a| policy.needs_partner(a)).collect();
    let free_values: Vec<i64> = (-b..=b).filter(|&a| !policy.needs_partner(a)).collect();
    let edges = tri.dual_edges();
    let m = tri.triangles.len();
    let mut matchings = Vec::new();
    collect_matchings(
        &edges,
        0,
        &mut vec![false; m],
        &mut Vec::new(),
        &mut matchings,
    );

    let mut out = Vec::new();
    for matching in matchings {
        let mut free = vec![true; m];
        for &(s, t) in &matching {
            free[s] = false;
            free[t] = false;
        }
        let free_slots: Vec<usize> = (0..m).filter(|&t| free[t]).collect();
        // each pair takes (a, -a) or (-a, a); a = 0 only once
        let mut pair_choices: Vec<(i64, i64)> = Vec::new();
        for &a in &pair_values {
            pair_choices.push((a, -a));
            if a != 0 {
                pair_choices.push((-a, a));
            }
        }
        let mut labels = vec![0i64; m];
        fill_labels(
            &matching,
            &pair_choices,
            &free_slots,
            &free_values,
            0,
            &mut labels,
            &mut |ls| {
                out.push(ls.to_vec());
            },
        );
    }
    out.sort_unstable();
    out.into_iter()
        .map(|labels| Labeling {
            triangulation: tri.clone(),
            labels,
        })
        .collect()
}

fn collect_matchings(
    edges: &[(usize, usize)],
    from: usize,
    used: &mut Vec<bool>,
    current: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if from == edges.len() {
        out.push(current.clone());
        return;
    }
    collect_matchings(edges, from + 1, used, current, out);
    let (s, t) = edges[from];
    if !used[s] && !used[t] {
        used[s] = true;
        used[t] = true;
        current.push((s, t));
        collect_matchings(edges, from + 1, used, current, out);
        current.pop();
        used[s] = false;
        used[t] = false;
    }
}

fn fill_labels(
    pairs: &[(usize, usize)],
    pair_choices: &[(i64, i64)],
    free_slots: &[usize],
    free_values: &[i64],
    step: usize,
    labels: &mut Vec<i64>,
    emit: &mut impl FnMut(&[i64]),
) {
    if step < pairs.len() {
        let (s, t) = pairs[step];
        for &(a, b) in pair_choices {
            labels[s] = a;
            labels[t] = b;
            fill_labels(
                pairs,
                pair_choices,
                free_slots,
                free_values,
                step + 1,
                labels,
                emit,
            );
        }
    } else if step < pairs.len() + free_slots.len() {
        let slot = free_slots[step - pairs.len()];
        for &v in free_values {
            labels[slot] = v;
            fill_labels(
                pairs,
                pair_choices,
                free_slots,
                free_values,
                step + 1,
                labels,
                emit,
            );
        }
    } else {
        emit(labels);
    }
}

/// The labels of `tri` with vertex sums exactly `target`, if any. Labels
/// are forced: a vertex lying in a single remaining triangle fixes that
/// triangle's label, and peeling such ears exhausts the triangulation.
pub fn solve_labels(tri: &Triangulation, target: &[i64]) -> Option<Vec<i64>> {
    let n = tri.n;
    if target.len() != n {
        return None;
    }
    let m = tri.triangles.len();
    let mut residual: Vec<i128> = target.iter().map(|&c| c as i128).collect();
    let mut degree = vec![0usize; n];
    for t in &tri.triangles {
        for &v in t {
            degree[v] += 1;
        }
    }
    let mut alive = vec![true; m];
    let mut labels = vec![0i128; m];
    for _ in 0..m {
        let (t, v) = (0..m).filter(|&t| alive[t]).find_map(|t| {
            tri.triangles[t]
                .iter()
                .find(|&&v| degree[v] == 1)
                .map(|&v| (t, v))
        })?;
        let label = residual[v];
        labels[t] = label;
        alive[t] = false;
        for &u in &tri.triangles[t] {
            residual[u] -= label;
            degree[u] -= 1;
        }
    }
    if residual.iter().any(|&r| r != 0) {
        return None;
    }
    labels.into_iter().map(|l| i64::try_from(l).ok()).collect()
}

/// An admissible labeling with labels in `[-label_bound, label_bound]`
/// whose quiddity is equivalent to `q`, searching triangulations in
/// [`enumerate_triangulations`] order and then the dihedral images of `q`.
/// `None` only means no witness exists within the label bound.
pub fn find_labeling(q: &Quiddity, label_bound: u32, limit: WorkLimit) -> Result<Option<Labeling>> {
    find_labeling_with(q, label_bound, ZeroPolicy::default(), limit)
}

pub fn find_labeling_with(
    q: &Quiddity,
    label_bound: u32,
    policy: ZeroPolicy,
    limit: WorkLimit,
) -> Result<Option<Labeling>> {
    if q.generator().kind() != (GenKind::Int { s: 1 }) {
        return Err(Error::WrongGenerator(
            q.generator().to_string(),
            "labelings describe quiddities over Z".into(),
        ));
    }
    let n = q.len();
    if n < 3 {
        return Err(Error::SizeTooSmall { size: n, min: 3 });
    }
    if n > MAX_LABELING_SIZE {
        return Err(Error::SizeLimit {
            size: n,
            max: MAX_LABELING_SIZE,
        });
    }
    limit.check(catalan(n - 2) * 2 * n as u128)?;
    let targets: Vec<Vec<i64>> = (0..n)
        .flat_map(|r| [false, true].map(|rev| dihedral_representative(q.coeffs(), r, rev)))
        .collect();
    let bound = label_bound as i64;
    let found = enumerate_triangulations(n)?
        .into_par_iter()
        .find_map_first(|tri| {
            targets.iter().find_map(|target| {
                let labels = solve_labels(&tri, target)?;
                if labels.iter().any(|l| l.abs() > bound) {
                    return None;
                }
                let l = Labeling {
                    triangulation: tri.clone(),
                    labels,
                };
                is_admissible_with(&l, policy).then_some(l)
            })
        });
    if let Some(l) = &found {
        let image = quiddity_of_labeling_with(l, policy)?;
        if image.coeffs() != q.canonical().as_slice() {
            return Err(Error::TheoremViolated(format!(
                "witness for {:?} reads back as {:?}",
                q.coeffs(),
                image.coeffs()
            )));
        }
    }
    Ok(found)
}
