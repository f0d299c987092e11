//! Exact coefficient rings: `Z`, quadratic rings `Z[w]` with `w^2 = d`, and
//! the polynomial ring `Z[X]` standing in for a transcendental generator.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::integer::Integer;

/// The ring an element lives in. `Integers` embeds into every other ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Quadratic(i64),
    Polynomial,
}

impl Ring {
    /// The smallest ring containing both, if there is one.
    pub fn join(self, other: Ring) -> Option<Ring> {
        match (self, other) {
            (Ring::Integers, r) | (r, Ring::Integers) => Some(r),
            (Ring::Quadratic(a), Ring::Quadratic(b)) if a == b => Some(self),
            (Ring::Polynomial, Ring::Polynomial) => Some(self),
            _ => None,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Quadratic(d) => write!(f, "Z[sqrt({d})]"),
            Ring::Polynomial => write!(f, "Z[X]"),
        }
    }
}

/// `a + b*w` with `w^2 = d`. Always has `b != 0` and `d` not a perfect
/// square; `d = -s^2` is stored as `d = -1` with `b` scaled by `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad {
    a: Integer,
    b: Integer,
    d: i64,
}

impl Quad {
    pub fn rational(&self) -> &Integer {
        &self.a
    }

    pub fn irrational(&self) -> &Integer {
        &self.b
    }

    pub fn d(&self) -> i64 {
        self.d
    }
}

/// Polynomial coefficients, lowest degree first. Degree is always at least 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Integer>,
}

impl Poly {
    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// An exact element of one of the supported rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingElem {
    Int(Integer),
    Quad(Quad),
    Poly(Poly),
}

pub(crate) fn perfect_square_root(k: u64) -> Option<u64> {
    let r = (k as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).find(|c| c.checked_mul(*c) == Some(k))
}

impl RingElem {
    pub fn int(v: impl Into<Integer>) -> RingElem {
        RingElem::Int(v.into())
    }

    pub fn zero() -> RingElem {
        RingElem::Int(Integer::ZERO)
    }

    pub fn one() -> RingElem {
        RingElem::Int(Integer::ONE)
    }

    /// `a + b*sqrt(d)`, normalized: square `d` collapses to an integer,
    /// `d = -s^2` becomes `a + (b*s)*i`.
    pub fn quad(a: impl Into<Integer>, b: impl Into<Integer>, d: i64) -> RingElem {
        let (a, mut b) = (a.into(), b.into());
        let mut d = d;
        if d >= 0 {
            if let Some(s) = perfect_square_root(d as u64) {
                return RingElem::Int(a + b * Integer::from(s));
            }
        } else if let Some(s) = perfect_square_root(d.unsigned_abs()) {
            b = b * Integer::from(s);
            d = -1;
        }
        if b.is_zero() {
            RingElem::Int(a)
        } else {
            RingElem::Quad(Quad { a, b, d })
        }
    }

    /// A polynomial from coefficients, lowest degree first.
    pub fn poly(coeffs: Vec<Integer>) -> RingElem {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(Integer::is_zero) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => RingElem::zero(),
            1 => RingElem::Int(coeffs.pop().unwrap()),
            _ => RingElem::Poly(Poly { coeffs }),
        }
    }

    /// The formal transcendental `X`.
    pub fn x() -> RingElem {
        RingElem::poly(vec![Integer::ZERO, Integer::ONE])
    }

    pub fn ring(&self) -> Ring {
        match self {
            RingElem::Int(_) => Ring::Integers,
            RingElem::Quad(q) => Ring::Quadratic(q.d),
            RingElem::Poly(_) => Ring::Polynomial,
        }
    }

    pub fn as_integer(&self) -> Option<&Integer> {
        match self {
            RingElem::Int(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RingElem::Int(v) if v.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, RingElem::Int(v) if v.is_one())
    }

    pub fn is_minus_one(&self) -> bool {
        matches!(self, RingElem::Int(v) if v.is_minus_one())
    }

    fn quad_parts(&self) -> (Integer, Integer) {
        match self {
            RingElem::Int(v) => (v.clone(), Integer::ZERO),
            RingElem::Quad(q) => (q.a.clone(), q.b.clone()),
            RingElem::Poly(_) => unreachable!("quad_parts on a polynomial"),
        }
    }

    fn poly_parts(&self) -> Vec<Integer> {
        match self {
            RingElem::Int(v) => vec![v.clone()],
            RingElem::Poly(p) => p.coeffs.clone(),
            RingElem::Quad(_) => unreachable!("poly_parts on a quadratic element"),
        }
    }

    fn common_ring(&self, other: &RingElem) -> Result<Ring> {
        self.ring()
            .join(other.ring())
            .ok_or_else(|| Error::MixedRing(self.ring().to_string(), other.ring().to_string()))
    }

    pub fn checked_add(&self, other: &RingElem) -> Result<RingElem> {
        Ok(match self.common_ring(other)? {
            Ring::Integers => RingElem::Int(self.int_ref() + other.int_ref()),
            Ring::Quadratic(d) => {
                let (a1, b1) = self.quad_parts();
                let (a2, b2) = other.quad_parts();
                RingElem::quad(a1 + a2, b1 + b2, d)
            }
            Ring::Polynomial => {
                let (p, q) = (self.poly_parts(), other.poly_parts());
                let len = p.len().max(q.len());
                let coeffs = (0..len)
                    .map(|i| {
                        let x = p.get(i).cloned().unwrap_or_default();
                        let y = q.get(i).cloned().unwrap_or_default();
                        x + y
                    })
                    .collect();
                RingElem::poly(coeffs)
            }
        })
    }

    pub fn checked_sub(&self, other: &RingElem) -> Result<RingElem> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &RingElem) -> Result<RingElem> {
        Ok(match self.common_ring(other)? {
            Ring::Integers => RingElem::Int(self.int_ref() * other.int_ref()),
            Ring::Quadratic(d) => {
                let (a1, b1) = self.quad_parts();
                let (a2, b2) = other.quad_parts();
                let rational = &a1 * &a2 + Integer::from(d) * (&b1 * &b2);
                let irrational = &a1 * &b2 + &a2 * &b1;
                RingElem::quad(rational, irrational, d)
            }
            Ring::Polynomial => {
                let (p, q) = (self.poly_parts(), other.poly_parts());
                let mut out = vec![Integer::ZERO; p.len() + q.len() - 1];
                for (i, x) in p.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in q.iter().enumerate() {
                        out[i + j] = &out[i + j] + &(x * y);
                    }
                }
                RingElem::poly(out)
            }
        })
    }

    fn int_ref(&self) -> &Integer {
        match self {
            RingElem::Int(v) => v,
            _ => unreachable!(),
        }
    }

    /// Exact comparison of `|x|^2` with 4, i.e. of the modulus with 2.
    pub fn cmp_abs2_with4(&self) -> Result<Ordering> {
        let four = Integer::from(4);
        match self {
            RingElem::Int(v) => Ok(v.square().cmp(&four)),
            RingElem::Quad(q) if q.d < 0 => {
                let norm = q.a.square() + Integer::from(-q.d) * q.b.square();
                Ok(norm.cmp(&four))
            }
            RingElem::Quad(q) => {
                // real x = a + b sqrt(d); |x| < 2 iff x - 2 < 0 < x + 2
                let two = Integer::from(2);
                let lower = sign_of_real_quad(&(&q.a + &two), &q.b, q.d);
                let upper = sign_of_real_quad(&(&q.a - &two), &q.b, q.d);
                Ok(if lower > 0 && upper < 0 {
                    Ordering::Less
                } else if lower == 0 || upper == 0 {
                    Ordering::Equal
                } else {
                    Ordering::Greater
                })
            }
            RingElem::Poly(_) => Err(Error::NoModulus(self.to_string())),
        }
    }

    /// Components along the non-rational basis directions, highest priority
    /// first: `X^j` by descending degree, then `sqrt(d)`.
    fn directions(&self) -> Vec<(Direction, &Integer)> {
        match self {
            RingElem::Int(_) => Vec::new(),
            RingElem::Quad(q) => vec![(Direction::Root(q.d), &q.b)],
            RingElem::Poly(p) => p.coeffs[1..]
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (Direction::Power(j + 1), c))
                .collect(),
        }
    }

    fn rational_part(&self) -> &Integer {
        match self {
            RingElem::Int(v) => v,
            RingElem::Quad(q) => &q.a,
            RingElem::Poly(p) => &p.coeffs[0],
        }
    }
}

/// Sign of `p + q*sqrt(d)` for `d > 0` not a square.
fn sign_of_real_quad(p: &Integer, q: &Integer, d: i64) -> i32 {
    let (sp, sq) = (p.signum(), q.signum());
    if sq == 0 {
        return sp;
    }
    if sp == 0 || sp == sq {
        return sq;
    }
    // opposite signs: compare p^2 with q^2 d
    match p.square().cmp(&(q.square() * Integer::from(d))) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => 0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Direction {
    Power(usize),
    Root(i64),
}

impl Direction {
    // larger = compared earlier
    fn priority(&self) -> (u8, i64) {
        match self {
            Direction::Power(j) => (1, *j as i64),
            Direction::Root(d) => (0, -*d),
        }
    }
}

/// A total order on all elements: lexicographic on the coordinates along
/// `X^j` (descending degree), then `sqrt(d)`, then the rational part. It is
/// compatible with addition, so `m*w <= n*w` iff `m <= n` for every
/// supported generator, and integers keep their natural order.
impl Ord for RingElem {
    fn cmp(&self, other: &Self) -> Ordering {
        let (xs, ys) = (self.directions(), other.directions());
        let (mut i, mut j) = (0, 0);
        let zero = Integer::ZERO;
        while i < xs.len() || j < ys.len() {
            let px = xs.get(i).map(|(d, _)| d.priority());
            let py = ys.get(j).map(|(d, _)| d.priority());
            let (cx, cy) = match (px, py) {
                (Some(a), Some(b)) if a == b => {
                    let r = (xs[i].1, ys[j].1);
                    i += 1;
                    j += 1;
                    r
                }
                (Some(a), Some(b)) if a > b => {
                    i += 1;
                    (xs[i - 1].1, &zero)
                }
                (Some(_), None) => {
                    i += 1;
                    (xs[i - 1].1, &zero)
                }
                _ => {
                    j += 1;
                    (&zero, ys[j - 1].1)
                }
            };
            match cx.cmp(cy) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        self.rational_part().cmp(other.rational_part())
    }
}

impl PartialOrd for RingElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for RingElem {
    fn from(v: i64) -> Self {
        RingElem::int(v)
    }
}

impl From<Integer> for RingElem {
    fn from(v: Integer) -> Self {
        RingElem::Int(v)
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        match self {
            RingElem::Int(v) => RingElem::Int(-v),
            RingElem::Quad(q) => RingElem::Quad(Quad {
                a: -&q.a,
                b: -&q.b,
                d: q.d,
            }),
            RingElem::Poly(p) => RingElem::Poly(Poly {
                coeffs: p.coeffs.iter().map(|c| -c).collect(),
            }),
        }
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

// Operator impls panic on mixed rings; use the `checked_*` methods when the
// operands have not been validated.
macro_rules! ring_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a RingElem> for &'a RingElem {
            type Output = RingElem;
            fn $method(self, rhs: &'a RingElem) -> RingElem {
                match (self, rhs) {
                    (RingElem::Int(a), RingElem::Int(b)) => RingElem::Int(a.$method(b)),
                    _ => self.$checked(rhs).expect("ring operation on mixed rings"),
                }
            }
        }

        impl $trait<RingElem> for RingElem {
            type Output = RingElem;
            fn $method(self, rhs: RingElem) -> RingElem {
                (&self).$method(&rhs)
            }
        }
    };
}

ring_op!(Add, add, checked_add);
ring_op!(Sub, sub, checked_sub);
ring_op!(Mul, mul, checked_mul);

fn root_symbol(d: i64) -> String {
    if d == -1 {
        "i".to_string()
    } else if d < 0 {
        format!("i*sqrt({})", d.unsigned_abs())
    } else {
        format!("sqrt({d})")
    }
}

fn scaled_symbol(coeff: &Integer, symbol: &str) -> String {
    if coeff.is_one() {
        symbol.to_string()
    } else if coeff.is_minus_one() {
        format!("-{symbol}")
    } else {
        format!("{coeff}*{symbol}")
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElem::Int(v) => write!(f, "{v}"),
            RingElem::Quad(q) => {
                let term = scaled_symbol(&q.b, &root_symbol(q.d));
                if q.a.is_zero() {
                    write!(f, "{term}")
                } else if q.b.is_negative() {
                    write!(f, "{}{term}", q.a)
                } else {
                    write!(f, "{}+{term}", q.a)
                }
            }
            RingElem::Poly(p) => {
                let mut out = String::new();
                for (j, c) in p.coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let term = match j {
                        0 => c.to_string(),
                        1 => scaled_symbol(c, "X"),
                        _ => scaled_symbol(c, &format!("X^{j}")),
                    };
                    if !out.is_empty() && !term.starts_with('-') {
                        out.push('+');
                    }
                    out.push_str(&term);
                }
                write!(f, "{out}")
            }
        }
    }
}

/// Parses the textual element syntax: sums of terms built from an integer
/// coefficient, `i`, `sqrt(k)` and `X^j`, e.g. `3`, `-2*sqrt(3)`,
/// `1+i*sqrt(5)`, `2-X+4*X^3`. Whitespace is ignored.
impl FromStr for RingElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let mut depth = 0i32;
        let bytes = text.as_bytes();
        for (i, &ch) in bytes.iter().enumerate() {
            match ch {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 && i > start => {
                    let prev = bytes[i - 1];
                    if prev != b'*' && prev != b'^' {
                        terms.push(&text[start..i]);
                        start = i;
                    }
                }
                _ => {}
            }
        }
        terms.push(&text[start..]);
        let mut total = RingElem::zero();
        for term in terms {
            let value = parse_term(term)?;
            total = total
                .checked_add(&value)
                .map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        }
        Ok(total)
    }
}

fn parse_term(term: &str) -> Result<RingElem> {
    let bad = || Error::Parse(format!("cannot parse term `{term}`"));
    let (negative, body) = match term.as_bytes().first() {
        Some(b'-') => (true, &term[1..]),
        Some(b'+') => (false, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let mut coeff = Integer::from(if negative { -1 } else { 1 });
    let mut i_count = 0u32;
    let mut radicand: Option<u64> = None;
    let mut power = 0usize;
    for factor in body.split('*') {
        if factor == "i" {
            i_count += 1;
        } else if factor == "X" {
            power += 1;
        } else if let Some(exp) = factor.strip_prefix("X^") {
            power += exp.parse::<usize>().map_err(|_| bad())?;
        } else if let Some(inner) = factor
            .strip_prefix("sqrt(")
            .and_then(|r| r.strip_suffix(')'))
        {
            let k = inner.parse::<u64>().map_err(|_| bad())?;
            radicand = Some(radicand.unwrap_or(1).checked_mul(k).ok_or_else(bad)?);
        } else {
            let v: Integer = factor.parse().map_err(|_| bad())?;
            coeff = coeff * v;
        }
    }
    if power > 0 && (i_count > 0 || radicand.is_some()) {
        return Err(bad());
    }
    if power > 0 {
        let mut coeffs = vec![Integer::ZERO; power + 1];
        coeffs[power] = coeff;
        return Ok(RingElem::poly(coeffs));
    }
    if i_count / 2 % 2 == 1 {
        coeff = -coeff;
    }
    let rad = radicand.unwrap_or(1);
    let d = i64::try_from(rad).map_err(|_| bad())?;
    if i_count % 2 == 1 {
        Ok(RingElem::quad(0, coeff, -d))
    } else {
        Ok(RingElem::quad(0, coeff, d))
    }
}
