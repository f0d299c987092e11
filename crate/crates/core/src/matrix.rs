use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::ring::RingElem;

/// The sign `e` in `M = e*Id`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn apply(self, x: &RingElem) -> RingElem {
        match self {
            Sign::Plus => x.clone(),
            Sign::Minus => -x,
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.as_i8()
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> Result<Sign, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(format!("sign must be 1 or -1, got {v}")),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if *self == Sign::Plus { "+1" } else { "-1" })
    }
}

/// A 2x2 matrix `[[e11, e12], [e21, e22]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub e11: RingElem,
    pub e12: RingElem,
    pub e21: RingElem,
    pub e22: RingElem,
}

impl Mat2 {
    pub fn new(e11: RingElem, e12: RingElem, e21: RingElem, e22: RingElem) -> Mat2 {
        Mat2 { e11, e12, e21, e22 }
    }

    pub fn identity() -> Mat2 {
        Mat2::new(
            RingElem::one(),
            RingElem::zero(),
            RingElem::zero(),
            RingElem::one(),
        )
    }

    /// The elementary factor `M(a) = [[a, -1], [1, 0]]`.
    pub fn factor(a: &RingElem) -> Mat2 {
        Mat2::new(
            a.clone(),
            RingElem::int(-1),
            RingElem::one(),
            RingElem::zero(),
        )
    }

    /// `M(a) * self`, without materializing the factor.
    pub fn left_factor(&self, a: &RingElem) -> Mat2 {
        Mat2 {
            e11: &(a * &self.e11) - &self.e21,
            e12: &(a * &self.e12) - &self.e22,
            e21: self.e11.clone(),
            e22: self.e12.clone(),
        }
    }

    /// `self * M(a)`.
    pub fn right_factor(&self, a: &RingElem) -> Mat2 {
        Mat2 {
            e11: &(&self.e11 * a) + &self.e12,
            e12: -&self.e11,
            e21: &(&self.e21 * a) + &self.e22,
            e22: -&self.e21,
        }
    }

    pub fn det(&self) -> RingElem {
        &(&self.e11 * &self.e22) - &(&self.e12 * &self.e21)
    }

    /// `Some(e)` when the matrix is `e*Id`.
    pub fn sign_of_identity(&self) -> Option<Sign> {
        if !self.e12.is_zero() || !self.e21.is_zero() || self.e11 != self.e22 {
            return None;
        }
        if self.e11.is_one() {
            Some(Sign::Plus)
        } else if self.e11.is_minus_one() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    /// The adjugate, which is the inverse when `det = 1`.
    pub fn adjugate(&self) -> Mat2 {
        Mat2::new(self.e22.clone(), -&self.e12, -&self.e21, self.e11.clone())
    }

    pub fn scale(&self, sign: Sign) -> Mat2 {
        Mat2::new(
            sign.apply(&self.e11),
            sign.apply(&self.e12),
            sign.apply(&self.e21),
            sign.apply(&self.e22),
        )
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            e11: &(&self.e11 * &rhs.e11) + &(&self.e12 * &rhs.e21),
            e12: &(&self.e11 * &rhs.e12) + &(&self.e12 * &rhs.e22),
            e21: &(&self.e21 * &rhs.e11) + &(&self.e22 * &rhs.e21),
            e22: &(&self.e21 * &rhs.e12) + &(&self.e22 * &rhs.e22),
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e11, self.e12, self.e21, self.e22
        )
    }
}
