//! The sign-alternating map `φ_k` between `<i√k>` and `<√k>`, and the
//! even-size rescaling of `<√k>` tuples onto `Z`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{GenKind, Generator};
use crate::quiddity::Quiddity;
use crate::solve::{enumerate_quiddities, is_irreducible, EnumSpec, WorkLimit};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiImage {
    pub source: Quiddity,
    pub target: Quiddity,
}

/// `(k_1, -k_2, k_3, -k_4, ...)`.
pub fn alternate_signs(coeffs: &[i64]) -> Vec<i64> {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 1 { -c } else { c })
        .collect()
}

/// The `k` of a generator `i√k`.
fn imaginary_k(gen: &Generator) -> Result<u64> {
    match gen.kind() {
        GenKind::ISqrt { k } => Ok(k),
        _ => Err(Error::WrongGenerator(
            gen.to_string(),
            "expected isqrt:k".into(),
        )),
    }
}

/// The `k` of a generator `√k`, including perfect squares stored as `<s>`.
fn real_k(gen: &Generator) -> Result<u64> {
    match gen.kind() {
        GenKind::Sqrt { k } => Ok(k),
        GenKind::Int { s } if s > 0 => s
            .checked_mul(s)
            .ok_or_else(|| Error::WrongGenerator(gen.to_string(), "generator too large".into())),
        _ => Err(Error::WrongGenerator(
            gen.to_string(),
            "expected sqrt:k".into(),
        )),
    }
}

fn transport(q: &Quiddity, target_gen: Generator) -> Result<PhiImage> {
    if q.len() % 2 == 1 {
        return Err(Error::OddSize(q.len()));
    }
    let coeffs = alternate_signs(q.coeffs());
    let target = Quiddity::new(target_gen, coeffs).map_err(|e| match e {
        Error::NotAQuiddity => Error::TheoremViolated(format!(
            "image of {:?} over {} is not a quiddity over {}",
            q.coeffs(),
            q.generator(),
            target_gen
        )),
        other => other,
    })?;
    Ok(PhiImage {
        source: q.clone(),
        target,
    })
}

/// `φ_k`: an even-size quiddity over `<i√k>` to one over `<√k>` (over `Z`
/// when `k = 1`, over `<s>` when `k = s^2`).
pub fn phi(q: &Quiddity) -> Result<PhiImage> {
    let k = imaginary_k(q.generator())?;
    transport(q, Generator::sqrt(k))
}

/// The inverse of [`phi`], from `<√k>` back to `<i√k>`.
pub fn phi_inverse(q: &Quiddity) -> Result<PhiImage> {
    let k = real_k(q.generator())?;
    transport(q, Generator::isqrt(k))
}

/// Per-size counts in a [`PhiBijectionReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiSizeCount {
    pub size: usize,
    /// Quiddities over `<i√k>` within the bound.
    pub source: usize,
    /// Quiddities over `<√k>` within the bound.
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiBijectionReport {
    pub k: u64,
    pub min_size: usize,
    pub max_size: usize,
    pub bound: u32,
    pub sizes: Vec<PhiSizeCount>,
    /// Descriptions of every failed check; empty exactly when the map is a
    /// verified bijection on the even sizes and odd sizes have no source.
    pub failures: Vec<String>,
}

impl PhiBijectionReport {
    pub fn is_bijection(&self) -> bool {
        self.failures.is_empty()
    }

    /// Odd sizes with target quiddities, which have no preimage.
    pub fn odd_targets(&self) -> Vec<PhiSizeCount> {
        self.sizes
            .iter()
            .filter(|c| c.size % 2 == 1 && c.target > 0)
            .copied()
            .collect()
    }
}

/// Enumerates both sides for every size in range and checks that `φ_k`
/// maps the even-size sources onto the even-size targets, with
/// `phi_inverse ∘ phi = id`. Odd sizes are counted on both sides; a source
/// of odd size is reported as a failure.
pub fn phi_bijection_check(
    k: u64,
    min_size: usize,
    max_size: usize,
    bound: u32,
    limit: WorkLimit,
) -> Result<PhiBijectionReport> {
    let (src_gen, dst_gen) = (Generator::isqrt(k), Generator::sqrt(k));
    imaginary_k(&src_gen)?;
    let mut sizes = Vec::new();
    let mut failures = Vec::new();
    for n in min_size.max(2)..=max_size {
        let source = enumerate_quiddities(&EnumSpec::new(src_gen, n, bound), limit)?;
        let target = enumerate_quiddities(&EnumSpec::new(dst_gen, n, bound), limit)?;
        sizes.push(PhiSizeCount {
            size: n,
            source: source.len(),
            target: target.len(),
        });
        if n % 2 == 1 {
            if !source.is_empty() {
                failures.push(format!(
                    "size {n}: {} odd-size quiddities over {src_gen}",
                    source.len()
                ));
            }
            continue;
        }
        let mut images = Vec::with_capacity(source.len());
        for q in &source {
            let image = phi(q)?;
            let back = phi_inverse(&image.target)?;
            if back.target != *q {
                failures.push(format!("size {n}: round trip of {:?} failed", q.coeffs()));
            }
            images.push(image.target);
        }
        images.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
        if images != target {
            failures.push(format!(
                "size {n}: {} images but {} targets, sets differ",
                images.len(),
                target.len()
            ));
        }
    }
    Ok(PhiBijectionReport {
        k,
        min_size,
        max_size,
        bound,
        sizes,
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityMismatch {
    pub source: Vec<i64>,
    pub source_irreducible: bool,
    pub target_irreducible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PhiIrreducibilityReport {
    Checked {
        k: u64,
        max_size: usize,
        bound: u32,
        examined: usize,
        irreducible: usize,
        counterexamples: Vec<IrreducibilityMismatch>,
    },
    Skipped {
        k: u64,
        reason: String,
    },
}

/// For every even-size quiddity over `<i√k>` with size in `2..=max_size`,
/// compares irreducibility of `q` and `φ_k(q)`. Skipped for `k = 1`, where
/// size-3 irreducibles over `Z` have no counterpart over `<i>`.
pub fn phi_preserves_irreducibility_check(
    k: u64,
    max_size: usize,
    bound: u32,
    limit: WorkLimit,
) -> Result<PhiIrreducibilityReport> {
    if k == 1 {
        return Ok(PhiIrreducibilityReport::Skipped {
            k,
            reason: "phi_1 does not preserve irreducibility: (1,1,1) is irreducible over Z \
                     and <i> has no quiddity of odd size"
                .into(),
        });
    }
    let gen = Generator::isqrt(k);
    imaginary_k(&gen)?;
    let mut examined = 0;
    let mut irreducible = 0;
    let mut counterexamples = Vec::new();
    for n in (2..=max_size).step_by(2) {
        let source = enumerate_quiddities(&EnumSpec::new(gen, n, bound).canonical(), limit)?;
        let flags: Vec<(bool, bool)> = source
            .par_iter()
            .map(|q| Ok((is_irreducible(q)?, is_irreducible(&phi(q)?.target)?)))
            .collect::<Result<_>>()?;
        for (q, (s, t)) in source.iter().zip(flags) {
            examined += 1;
            if s {
                irreducible += 1;
            }
            if s != t {
                counterexamples.push(IrreducibilityMismatch {
                    source: q.coeffs().to_vec(),
                    source_irreducible: s,
                    target_irreducible: t,
                });
            }
        }
    }
    Ok(PhiIrreducibilityReport::Checked {
        k,
        max_size,
        bound,
        examined,
        irreducible,
        counterexamples,
    })
}

/// `(k_1, k*k_2, k_3, k*k_4, ...)`: coefficients over `<√k>` to a tuple
/// over `Z` with the same even continuants.
pub fn rescale_even(coeffs: &[i64], k: u64) -> Result<Vec<i64>> {
    if coeffs.len() % 2 == 1 {
        return Err(Error::OddSize(coeffs.len()));
    }
    let k = i64::try_from(k).map_err(|_| Error::CoefficientOverflow)?;
    coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            if i % 2 == 1 {
                c.checked_mul(k).ok_or(Error::CoefficientOverflow)
            } else {
                Ok(c)
            }
        })
        .collect()
}

/// The inverse of [`rescale_even`]; every even-position entry (second,
/// fourth, ...) must be divisible by `k`.
pub fn rescale_even_inverse(coeffs: &[i64], k: u64) -> Result<Vec<i64>> {
    if coeffs.len() % 2 == 1 {
        return Err(Error::OddSize(coeffs.len()));
    }
    if k == 0 {
        return Err(Error::WrongGenerator(
            "sqrt:0".into(),
            "k must be positive".into(),
        ));
    }
    let kk = i64::try_from(k).map_err(|_| Error::CoefficientOverflow)?;
    coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            if i % 2 == 0 {
                Ok(c)
            } else if c % kk == 0 {
                Ok(c / kk)
            } else {
                Err(Error::NotDivisible(c, k))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_examples() {
        let i2 = Generator::isqrt(2);
        let q = Quiddity::new(i2, vec![1, -1, 1, -1]).unwrap();
        let image = phi(&q).unwrap();
        assert_eq!(image.target.coeffs(), &[1, 1, 1, 1]);
        assert_eq!(*image.target.generator(), Generator::sqrt(2));

        for m in [-3, 0, 2] {
            let q = Quiddity::new(Generator::isqrt(5), vec![0, m, 0, -m]).unwrap();
            assert_eq!(phi(&q).unwrap().target.coeffs(), &[0, -m, 0, m]);
        }
    }

    #[test]
    fn phi_inverse_examples() {
        let r3 = Quiddity::new(Generator::sqrt(3), vec![1; 6]).unwrap();
        let back = phi_inverse(&r3).unwrap();
        assert_eq!(back.target.coeffs(), &[1, -1, 1, -1, 1, -1]);
        let zero = Quiddity::new(Generator::sqrt(2), vec![0, 0]).unwrap();
        assert_eq!(phi_inverse(&zero).unwrap().target.coeffs(), &[0, 0]);
        let z = Quiddity::new(Generator::integers(), vec![1, 1, 1]).unwrap();
        assert_eq!(phi_inverse(&z).unwrap_err(), Error::OddSize(3));
    }

    #[test]
    fn phi_rejects_wrong_generator() {
        let q = Quiddity::new(Generator::sqrt(2), vec![0, 0]).unwrap();
        assert!(matches!(phi(&q), Err(Error::WrongGenerator(..))));
    }

    #[test]
    fn rescale_examples() {
        assert_eq!(rescale_even(&[1, 1, 1, 1], 2).unwrap(), vec![1, 2, 1, 2]);
        assert_eq!(rescale_even(&[1; 6], 3).unwrap(), vec![1, 3, 1, 3, 1, 3]);
        assert_eq!(
            rescale_even(&[0, 4, 0, -4], 5).unwrap(),
            vec![0, 20, 0, -20]
        );
        assert_eq!(rescale_even(&[1, 1, 1], 2).unwrap_err(), Error::OddSize(3));
        assert_eq!(
            rescale_even_inverse(&[1, 2, 1, 2], 2).unwrap(),
            vec![1, 1, 1, 1]
        );
        assert_eq!(
            rescale_even_inverse(&[1, 3, 1, 3], 2).unwrap_err(),
            Error::NotDivisible(3, 2)
        );
    }

    #[test]
    fn k1_irreducibility_is_skipped() {
        let r = phi_preserves_irreducibility_check(1, 8, 3, WorkLimit::default()).unwrap();
        assert!(matches!(r, PhiIrreducibilityReport::Skipped { k: 1, .. }));
    }

    #[test]
    fn small_bijection() {
        let r = phi_bijection_check(2, 2, 6, 2, WorkLimit::default()).unwrap();
        assert!(r.is_bijection(), "{:?}", r.failures);
        assert!(r.odd_targets().is_empty());
        let r1 = phi_bijection_check(1, 2, 5, 2, WorkLimit::default()).unwrap();
        assert!(r1.is_bijection());
        assert_eq!(r1.odd_targets().first().map(|c| c.size), Some(3));
    }
}
