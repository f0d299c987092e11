//! Arbitrary-precision integers with an inline fast path.
//!
//! Continuant values grow exponentially with the tuple length, so every ring
//! computation runs on unbounded integers. Almost all values met during a
//! desk-scale search fit in a machine word, so [`Integer`] keeps them inline
//! and only spills to [`BigInt`] when an operation overflows.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive, Zero};

/// An exact integer. `Big` is only used for values outside the `i64` range,
/// so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Integer {
    Small(i64),
    Big(BigInt),
}

impl Integer {
    pub const ZERO: Integer = Integer::Small(0);
    pub const ONE: Integer = Integer::Small(1);

    fn from_big(value: BigInt) -> Self {
        match value.to_i64() {
            Some(v) => Integer::Small(v),
            None => Integer::Big(value),
        }
    }

    fn to_big(&self) -> BigInt {
        match self {
            Integer::Small(v) => BigInt::from(*v),
            Integer::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Integer::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Integer::Small(1))
    }

    pub fn is_minus_one(&self) -> bool {
        matches!(self, Integer::Small(-1))
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self {
            Integer::Small(v) => v.signum() as i32,
            Integer::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Integer {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Integer::Small(v) => Some(*v),
            Integer::Big(_) => None,
        }
    }

    /// The quotient `self / divisor` when the division is exact.
    pub fn div_exact(&self, divisor: &Integer) -> Option<Integer> {
        if divisor.is_zero() {
            return None;
        }
        match (self, divisor) {
            (Integer::Small(a), Integer::Small(b)) => {
                if let Some(r) = a.checked_rem(*b) {
                    if r != 0 {
                        return None;
                    }
                    if let Some(q) = a.checked_div(*b) {
                        return Some(Integer::Small(q));
                    }
                }
                // i64::MIN / -1
                Some(Integer::from_big(BigInt::from(*a) / BigInt::from(*b)))
            }
            _ => {
                let (q, r) = self.to_big().div_rem(&divisor.to_big());
                if r.is_zero() {
                    Some(Integer::from_big(q))
                } else {
                    None
                }
            }
        }
    }

    pub fn square(&self) -> Integer {
        self * self
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer::Small(v)
    }
}

impl From<i32> for Integer {
    fn from(v: i32) -> Self {
        Integer::Small(v as i64)
    }
}

impl From<u64> for Integer {
    fn from(v: u64) -> Self {
        match i64::try_from(v) {
            Ok(s) => Integer::Small(s),
            Err(_) => Integer::Big(BigInt::from(v)),
        }
    }
}

impl From<BigInt> for Integer {
    fn from(v: BigInt) -> Self {
        Integer::from_big(v)
    }
}

impl Default for Integer {
    fn default() -> Self {
        Integer::ZERO
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Integer::Small(a), Integer::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Integer> for &'a Integer {
            type Output = Integer;
            #[inline]
            fn $method(self, rhs: &'a Integer) -> Integer {
                if let (Integer::Small(a), Integer::Small(b)) = (self, rhs) {
                    if let Some(v) = a.$checked(*b) {
                        return Integer::Small(v);
                    }
                }
                Integer::from_big(self.to_big().$method(rhs.to_big()))
            }
        }

        impl $trait<Integer> for Integer {
            type Output = Integer;
            #[inline]
            fn $method(self, rhs: Integer) -> Integer {
                (&self).$method(&rhs)
            }
        }

        impl<'a> $trait<&'a Integer> for Integer {
            type Output = Integer;
            #[inline]
            fn $method(self, rhs: &'a Integer) -> Integer {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        match self {
            Integer::Small(v) => match v.checked_neg() {
                Some(n) => Integer::Small(n),
                None => Integer::from_big(-BigInt::from(*v)),
            },
            Integer::Big(b) => Integer::from_big(-b),
        }
    }
}

impl Neg for Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        -&self
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integer::Small(v) => write!(f, "{v}"),
            Integer::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Integer {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Integer::Small(v));
        }
        s.parse::<BigInt>().map(Integer::from_big)
    }
}
