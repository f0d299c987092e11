//! A fast battery of consistency checks, each a scaled-down version of the
//! full acceptance suite, for use as a smoke test of a build.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::even::{is_evenly_reducible, phi1_link_check, EvenMode};
use crate::generator::Generator;
use crate::maps::{
    phi_bijection_check, phi_preserves_irreducibility_check, rescale_even, PhiIrreducibilityReport,
};
use crate::quiddity::{
    continuant, continuant_euler, matrix_from_continuants, product_matrix, quiddity_sign, Quiddity,
};
use crate::solve::{
    check_two_small_entries, classify_irreducibles, enumerate_quiddities, ClassifySpec, EnumSpec,
    WorkLimit,
};
use crate::triangulation::{
    admissible_labelings, enumerate_triangulations, find_labeling, quiddity_of_labeling, ZeroPolicy,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// True when the failure contradicts a theorem rather than an
    /// implementation expectation.
    pub counterexample: bool,
}

impl AuditCheck {
    fn new(name: &str, passed: bool, detail: String) -> AuditCheck {
        AuditCheck {
            name: name.into(),
            passed,
            detail,
            counterexample: false,
        }
    }

    fn probe(name: &str, passed: bool, detail: String) -> AuditCheck {
        AuditCheck {
            counterexample: !passed,
            ..AuditCheck::new(name, passed, detail)
        }
    }
}

/// Canonical forms of the irreducible classes over `<√k>` (or `<0>` for
/// `k = 0`) predicted for sizes `3..=8` and coefficients in `[-bound, bound]`.
pub fn expected_sqrt_irreducibles(k: u64, bound: u32) -> Vec<Vec<i64>> {
    let b = bound as i64;
    let mut out = vec![vec![0, 0, 0, 0]];
    if k == 0 {
        return out;
    }
    let first = if k == 1 { 2 } else { 1 };
    out.extend((first..=b).map(|m| vec![-m, 0, m, 0]));
    match k {
        1 if b >= 1 => {
            out.push(vec![1, 1, 1]);
            out.push(vec![-1, -1, -1]);
        }
        2 | 3 if b >= 1 => {
            let len = if k == 2 { 4 } else { 6 };
            out.push(vec![1; len]);
            out.push(vec![-1; len]);
        }
        _ => {}
    }
    sort_by_size(&mut out);
    out
}

/// Sorts tuples by size, then lexicographically.
pub fn sort_by_size(v: &mut [Vec<i64>]) {
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

fn coeffs_of(qs: &[Quiddity]) -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = qs.iter().map(|q| q.coeffs().to_vec()).collect();
    sort_by_size(&mut v);
    v
}

fn classify_check(
    name: &str,
    gen: Generator,
    max_size: usize,
    bound: u32,
    expected: Vec<Vec<i64>>,
    limit: WorkLimit,
) -> Result<Vec<AuditCheck>> {
    let c = classify_irreducibles(
        &ClassifySpec {
            gen,
            min_size: 3,
            max_size,
            bound,
        },
        limit,
    )?;
    let got = coeffs_of(&c.irreducibles);
    Ok(vec![
        AuditCheck::probe(
            name,
            got == expected,
            format!(
                "{gen} sizes 3..={max_size} B={bound}: {} irreducible classes",
                got.len()
            ),
        ),
        AuditCheck::probe(
            &format!("{name}: two small entries"),
            c.two_small_violations.is_empty(),
            format!("{} violations", c.two_small_violations.len()),
        ),
    ])
}

/// Runs the battery. Takes a few seconds in an optimized build.
pub fn selftest(limit: WorkLimit) -> Result<Vec<AuditCheck>> {
    let mut checks = Vec::new();

    for k in [0, 1, 2, 3, 5] {
        checks.extend(classify_check(
            &format!("classification over sqrt:{k}"),
            Generator::sqrt(k),
            6,
            2,
            expected_sqrt_irreducibles(k, 2)
                .into_iter()
                .filter(|t| t.len() <= 6)
                .collect(),
            limit,
        )?);
    }
    checks.extend(classify_check(
        "classification over N",
        Generator::integers().nonneg(),
        6,
        3,
        vec![vec![1, 1, 1], vec![0, 0, 0, 0]],
        limit,
    )?);

    for k in [1, 2, 3] {
        let r = phi_bijection_check(k, 2, 6, 2, limit)?;
        let odd_ok = if k == 1 {
            r.odd_targets().iter().any(|c| c.size == 3)
        } else {
            r.odd_targets().is_empty()
        };
        checks.push(AuditCheck::probe(
            &format!("phi_{k} bijection"),
            r.is_bijection() && odd_ok,
            format!(
                "{} failures; odd-size targets {:?}",
                r.failures.len(),
                r.odd_targets()
            ),
        ));
    }
    if let PhiIrreducibilityReport::Checked {
        examined,
        counterexamples,
        ..
    } = phi_preserves_irreducibility_check(2, 6, 2, limit)?
    {
        checks.push(AuditCheck::probe(
            "phi_2 preserves irreducibility",
            counterexamples.is_empty(),
            format!("{examined} classes, {} mismatches", counterexamples.len()),
        ));
    }

    let mut odd = 0;
    let mut nonzero_nonneg = 0;
    for k in 1..=4 {
        for n in [3, 5] {
            odd += enumerate_quiddities(&EnumSpec::new(Generator::isqrt(k), n, 2), limit)?.len();
        }
        for n in [2, 4, 6] {
            nonzero_nonneg +=
                enumerate_quiddities(&EnumSpec::new(Generator::isqrt(k).nonneg(), n, 2), limit)?
                    .iter()
                    .filter(|q| q.coeffs().iter().any(|&c| c != 0))
                    .count();
        }
    }
    checks.push(AuditCheck::probe(
        "no odd sizes over isqrt:k",
        odd == 0,
        format!("{odd} odd-size quiddities"),
    ));
    checks.push(AuditCheck::probe(
        "only zeros over isqrt:k+nonneg",
        nonzero_nonneg == 0,
        format!("{nonzero_nonneg} quiddities with a nonzero entry"),
    ));

    let mut continuant_failures = 0;
    for gen in [
        Generator::integers(),
        Generator::sqrt(2),
        Generator::isqrt(3),
        Generator::alpha(),
    ] {
        for n in 1..=7usize {
            for seed in 0..20i64 {
                let coeffs: Vec<i64> = (0..n as i64)
                    .map(|j| (seed * 7 + j * j * 3 + j) % 7 - 3)
                    .collect();
                let elems = gen.elements(&coeffs);
                let ok = continuant(&elems)? == continuant_euler(&elems)?
                    && matrix_from_continuants(&elems)? == product_matrix(&elems)?;
                if !ok {
                    continuant_failures += 1;
                }
            }
        }
    }
    checks.push(AuditCheck::new(
        "continuant identities",
        continuant_failures == 0,
        format!("{continuant_failures} mismatches"),
    ));

    let mut labeling_failures = 0;
    let mut labelings = 0;
    for n in 3..=6 {
        for tri in enumerate_triangulations(n)? {
            for l in admissible_labelings(&tri, 2, ZeroPolicy::Strict) {
                labelings += 1;
                if quiddity_of_labeling(&l).is_err() {
                    labeling_failures += 1;
                }
            }
        }
    }
    checks.push(AuditCheck::probe(
        "admissible labelings give quiddities",
        labeling_failures == 0,
        format!("{labelings} labelings, {labeling_failures} failures"),
    ));
    let mut missing = Vec::new();
    for n in 3..=5 {
        for q in enumerate_quiddities(
            &EnumSpec::new(Generator::integers(), n, 2).canonical(),
            limit,
        )? {
            if find_labeling(&q, 4, limit)?.is_none() {
                missing.push(q.coeffs().to_vec());
            }
        }
    }
    checks.push(AuditCheck::new(
        "quiddities over Z have labelings",
        missing.is_empty(),
        format!("missing {missing:?}"),
    ));

    let z = Generator::integers();
    let even_ok =
        is_evenly_reducible(
            &Quiddity::new(z, vec![2, 2, 1, 4, 1, 2])?,
            EvenMode::UpToEquivalence,
        )? && is_evenly_reducible(
            &Quiddity::new(z, vec![1, 2, 1, 2, 1, 2, 1, 2])?,
            EvenMode::UpToEquivalence,
        )? && !is_evenly_reducible(&Quiddity::new(z, vec![1; 6])?, EvenMode::UpToEquivalence)?;
    checks.push(AuditCheck::new(
        "even reducibility examples",
        even_ok,
        String::new(),
    ));
    let link = phi1_link_check(6, 2, limit)?;
    checks.push(AuditCheck::probe(
        "phi_1 link with even irreducibility",
        link.counterexamples.is_empty(),
        format!(
            "{} classes, {} mismatches",
            link.examined,
            link.counterexamples.len()
        ),
    ));

    let mut rescale_failures = 0;
    for k in [2u64, 3, 5] {
        let g = Generator::sqrt(k);
        for code in 0..5i64.pow(4) {
            let coeffs: Vec<i64> = (0..4).map(|i| code / 5i64.pow(i) % 5 - 2).collect();
            let lhs = quiddity_sign(&g, &coeffs).is_some();
            let rhs = quiddity_sign(&z, &rescale_even(&coeffs, k)?).is_some();
            if lhs != rhs {
                rescale_failures += 1;
            }
        }
    }
    checks.push(AuditCheck::new(
        "rescaling transfers quiddities",
        rescale_failures == 0,
        format!("{rescale_failures} mismatches"),
    ));

    let mut small_failures = 0;
    for gen in [
        Generator::integers(),
        Generator::sqrt(2),
        Generator::sqrt(3),
        Generator::isqrt(1),
    ] {
        for n in 2..=6 {
            for q in enumerate_quiddities(&EnumSpec::new(gen, n, 2), limit)? {
                if !check_two_small_entries(&q)? {
                    small_failures += 1;
                }
            }
        }
    }
    checks.push(AuditCheck::probe(
        "two small entries",
        small_failures == 0,
        format!("{small_failures} counterexamples"),
    ));
    Ok(checks)
}
