//! Cyclic subgroups `<w> = Z*w` of `C` and the coefficient view of their
//! elements.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integer::Integer;
use crate::ring::{perfect_square_root, Ring, RingElem};

/// Which generator spans the subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    /// `<s>` for an integer `s >= 0`; `s = 1` is `Z` itself. Also houses
    /// `<sqrt(k)>` for perfect squares `k = s^2`.
    Int { s: u64 },
    /// `<sqrt(k)>` for `k >= 2` not a perfect square.
    Sqrt { k: u64 },
    /// `<i*sqrt(k)>` for `k >= 1`. When `k = s^2` the ambient ring is `Z[i]`
    /// and the generator is `s*i`.
    ISqrt { k: u64 },
    /// `<X>` inside `Z[X]`, modelling a transcendental generator.
    Alpha,
}

/// Whether coefficients range over `Z` or over `N` (the `N*w` variants).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum CoeffSign {
    #[default]
    Full,
    NonNegative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    kind: GenKind,
    sign: CoeffSign,
}

impl Generator {
    pub fn integers() -> Generator {
        Generator::int(1)
    }

    /// `<s>`; `<s>` and `<-s>` are the same subgroup so the sign is dropped.
    pub fn int(s: i64) -> Generator {
        Generator {
            kind: GenKind::Int {
                s: s.unsigned_abs(),
            },
            sign: CoeffSign::Full,
        }
    }

    /// `<sqrt(k)>`; perfect squares collapse onto the integer generator.
    pub fn sqrt(k: u64) -> Generator {
        let kind = match perfect_square_root(k) {
            Some(s) => GenKind::Int { s },
            None => GenKind::Sqrt { k },
        };
        Generator {
            kind,
            sign: CoeffSign::Full,
        }
    }

    /// `<i*sqrt(k)>`; `k = 0` is the zero group.
    pub fn isqrt(k: u64) -> Generator {
        let kind = if k == 0 {
            GenKind::Int { s: 0 }
        } else {
            GenKind::ISqrt { k }
        };
        Generator {
            kind,
            sign: CoeffSign::Full,
        }
    }

    pub fn alpha() -> Generator {
        Generator {
            kind: GenKind::Alpha,
            sign: CoeffSign::Full,
        }
    }

    /// The `N*w` variant of this generator.
    pub fn nonneg(self) -> Generator {
        Generator {
            sign: CoeffSign::NonNegative,
            ..self
        }
    }

    pub fn with_sign(self, sign: CoeffSign) -> Generator {
        Generator { sign, ..self }
    }

    pub fn kind(&self) -> GenKind {
        self.kind
    }

    pub fn coeff_sign(&self) -> CoeffSign {
        self.sign
    }

    pub fn is_nonneg(&self) -> bool {
        self.sign == CoeffSign::NonNegative
    }

    /// True for `<0>`, where every coefficient names the same element.
    pub fn is_trivial(&self) -> bool {
        matches!(self.kind, GenKind::Int { s: 0 })
    }

    /// Whether elements have a modulus (everything but the formal `X`).
    pub fn has_modulus(&self) -> bool {
        self.kind != GenKind::Alpha
    }

    /// `(d, scale)` for quadratic generators: `w = scale * sqrt(d)`.
    fn quadratic(&self) -> Option<(i64, i64)> {
        match self.kind {
            GenKind::Sqrt { k } => Some((k as i64, 1)),
            GenKind::ISqrt { k } => match perfect_square_root(k) {
                Some(s) => Some((-1, s as i64)),
                None => Some((-(k as i64), 1)),
            },
            _ => None,
        }
    }

    pub fn ring(&self) -> Ring {
        match self.kind {
            GenKind::Int { .. } => Ring::Integers,
            GenKind::Alpha => Ring::Polynomial,
            _ => Ring::Quadratic(self.quadratic().unwrap().0),
        }
    }

    /// The generator `w` as a ring element.
    pub fn generator(&self) -> RingElem {
        self.element(1)
    }

    /// `m * w`.
    pub fn element(&self, m: i64) -> RingElem {
        match self.kind {
            GenKind::Int { s } => RingElem::Int(Integer::from(m) * Integer::from(s)),
            GenKind::Alpha => RingElem::poly(vec![Integer::ZERO, Integer::from(m)]),
            _ => {
                let (d, scale) = self.quadratic().unwrap();
                RingElem::quad(0, Integer::from(m) * Integer::from(scale), d)
            }
        }
    }

    pub fn elements(&self, coeffs: &[i64]) -> Vec<RingElem> {
        coeffs.iter().map(|&m| self.element(m)).collect()
    }

    /// The coefficient `m` with `x = m * w`, if `x` lies in the subgroup
    /// (and `m >= 0` for the non-negative variant). On `<0>` the coefficient
    /// of `0` is reported as `0`.
    pub fn extract(&self, x: &RingElem) -> Option<i64> {
        self.coefficient(x).ok().flatten()
    }

    /// Like [`Generator::extract`], but a coefficient that exists and does
    /// not fit in 64 bits is an error instead of an absent result.
    pub fn coefficient(&self, x: &RingElem) -> Result<Option<i64>> {
        let Some(m) = self.extract_integer(x) else {
            return Ok(None);
        };
        let m = m.to_i64().ok_or(Error::CoefficientOverflow)?;
        Ok(if self.is_nonneg() && m < 0 {
            None
        } else {
            Some(m)
        })
    }

    fn extract_integer(&self, x: &RingElem) -> Option<Integer> {
        match (self.kind, x) {
            (GenKind::Int { s: 0 }, RingElem::Int(v)) => v.is_zero().then_some(Integer::ZERO),
            (GenKind::Int { s }, RingElem::Int(v)) => v.div_exact(&Integer::from(s)),
            (GenKind::Int { .. }, _) => None,
            (GenKind::Alpha, RingElem::Int(v)) => v.is_zero().then_some(Integer::ZERO),
            (GenKind::Alpha, RingElem::Poly(p)) => {
                let c = p.coeffs();
                (c.len() == 2 && c[0].is_zero()).then(|| c[1].clone())
            }
            (GenKind::Alpha, _) => None,
            (_, RingElem::Int(v)) => v.is_zero().then_some(Integer::ZERO),
            (_, RingElem::Quad(q)) => {
                let (d, scale) = self.quadratic().unwrap();
                if q.d() != d || !q.rational().is_zero() {
                    return None;
                }
                q.irrational().div_exact(&Integer::from(scale))
            }
            (_, RingElem::Poly(_)) => None,
        }
    }

    /// Coefficients allowed under a bound `B`: `-B..=B`, or `0..=B` for the
    /// non-negative variant, or just `0` on the zero group.
    pub fn coeff_range(&self, bound: u32) -> Vec<i64> {
        let b = bound as i64;
        if self.is_trivial() {
            vec![0]
        } else if self.is_nonneg() {
            (0..=b).collect()
        } else {
            (-b..=b).collect()
        }
    }

    pub fn in_bound(&self, m: i64, bound: u32) -> bool {
        let b = bound as i64;
        if self.is_trivial() {
            m == 0
        } else if self.is_nonneg() {
            (0..=b).contains(&m)
        } else {
            (-b..=b).contains(&m)
        }
    }

    pub fn descriptor(&self) -> GeneratorDescriptor {
        let (kind, s, k) = match self.kind {
            GenKind::Int { s } => ("z", Some(s), None),
            GenKind::Sqrt { k } => ("sqrt", None, Some(k)),
            GenKind::ISqrt { k } => ("isqrt", None, Some(k)),
            GenKind::Alpha => ("alpha", None, None),
        };
        GeneratorDescriptor {
            kind: kind.to_string(),
            s,
            k,
            nonneg: self.is_nonneg(),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::Int { s: 1 } => write!(f, "z")?,
            GenKind::Int { s } => write!(f, "z:{s}")?,
            GenKind::Sqrt { k } => write!(f, "sqrt:{k}")?,
            GenKind::ISqrt { k } => write!(f, "isqrt:{k}")?,
            GenKind::Alpha => write!(f, "alpha")?,
        }
        if self.is_nonneg() {
            write!(f, "+nonneg")?;
        }
        Ok(())
    }
}

/// Descriptor grammar: `z`, `z:s`, `sqrt:k`, `isqrt:k`, `alpha`, each with an
/// optional `+nonneg` suffix.
impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let (body, nonneg) = match text.strip_suffix("+nonneg") {
            Some(body) => (body, true),
            None => (text, false),
        };
        let bad = || Error::Parse(format!("bad generator descriptor `{s}`"));
        let (name, arg) = match body.split_once(':') {
            Some((n, a)) => (n, Some(a.parse::<u64>().map_err(|_| bad())?)),
            None => (body, None),
        };
        let gen = match (name, arg) {
            ("z", None) => Generator::integers(),
            ("z", Some(s)) => Generator::int(i64::try_from(s).map_err(|_| bad())?),
            ("sqrt", Some(k)) => Generator::sqrt(k),
            ("isqrt", Some(k)) => Generator::isqrt(k),
            ("alpha", None) => Generator::alpha(),
            _ => return Err(bad()),
        };
        Ok(if nonneg { gen.nonneg() } else { gen })
    }
}

/// JSON form of a generator, e.g. `{"kind":"sqrt","k":2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDescriptor {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub nonneg: bool,
}

impl TryFrom<&GeneratorDescriptor> for Generator {
    type Error = Error;

    fn try_from(desc: &GeneratorDescriptor) -> Result<Generator> {
        let bad = || Error::Parse(format!("bad generator object {desc:?}"));
        let gen = match (desc.kind.as_str(), desc.s, desc.k) {
            ("z", s, None) => Generator::int(i64::try_from(s.unwrap_or(1)).map_err(|_| bad())?),
            ("sqrt", None, Some(k)) => Generator::sqrt(k),
            ("isqrt", None, Some(k)) => Generator::isqrt(k),
            ("alpha", None, None) => Generator::alpha(),
            _ => return Err(bad()),
        };
        Ok(if desc.nonneg { gen.nonneg() } else { gen })
    }
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.descriptor().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let desc = GeneratorDescriptor::deserialize(deserializer)?;
        Generator::try_from(&desc).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extract_examples() {
        let s3 = Generator::sqrt(3);
        assert_eq!(s3.extract(&RingElem::quad(0, -3, 3)), Some(-3));
        assert_eq!(Generator::sqrt(2).extract(&RingElem::quad(1, 1, 2)), None);
        assert_eq!(Generator::int(2).extract(&RingElem::int(4)), Some(2));
        assert_eq!(Generator::int(2).extract(&RingElem::int(5)), None);
        assert_eq!(Generator::int(0).extract(&RingElem::int(0)), Some(0));
        assert_eq!(Generator::int(0).extract(&RingElem::int(1)), None);
        assert_eq!(Generator::alpha().extract(&RingElem::x()), Some(1));
        assert_eq!(
            Generator::alpha().extract(&(&RingElem::x() + &RingElem::one())),
            None
        );
        // wrong radicand
        assert_eq!(s3.extract(&RingElem::quad(0, 1, 2)), None);
        assert_eq!(
            Generator::integers().nonneg().extract(&RingElem::int(-1)),
            None
        );
    }

    #[test]
    fn square_generators_collapse() {
        assert_eq!(Generator::sqrt(4), Generator::int(2));
        assert_eq!(Generator::sqrt(1), Generator::integers());
        assert_eq!(Generator::sqrt(0), Generator::int(0));
        assert_eq!(Generator::int(-3), Generator::int(3));
        // <i*sqrt(4)> = Z*2i
        let g = Generator::isqrt(4);
        assert_eq!(g.element(3), RingElem::quad(0, 6, -1));
        assert_eq!(g.extract(&RingElem::quad(0, 6, -1)), Some(3));
        assert_eq!(g.extract(&RingElem::quad(0, 5, -1)), None);
        assert_eq!(g.ring(), Ring::Quadratic(-1));
    }

    #[test]
    fn descriptor_grammar() {
        for text in [
            "z",
            "z:3",
            "sqrt:2",
            "isqrt:5",
            "alpha",
            "z+nonneg",
            "isqrt:2+nonneg",
        ] {
            let g: Generator = text.parse().unwrap();
            assert_eq!(g.to_string(), text);
            let json = serde_json::to_string(&g).unwrap();
            let back: Generator = serde_json::from_str(&json).unwrap();
            assert_eq!(back, g);
        }
        assert_eq!("sqrt:9".parse::<Generator>().unwrap(), Generator::int(3));
        assert!("sqrt".parse::<Generator>().is_err());
        assert!("q:2".parse::<Generator>().is_err());
        assert_eq!(
            serde_json::to_string(&Generator::sqrt(2)).unwrap(),
            r#"{"kind":"sqrt","k":2}"#
        );
    }

    #[test]
    fn zero_group_has_one_coefficient() {
        let g = Generator::sqrt(0);
        assert!(g.is_trivial());
        assert_eq!(g.coeff_range(4), vec![0]);
    }
}
