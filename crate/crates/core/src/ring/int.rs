use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Ring;

/// Arbitrary precision integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Int(pub BigInt);

impl Int {
    pub fn abs(&self) -> Int {
        Int(self.0.abs())
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int(BigInt::from(v))
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        Int(v)
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Int {
    type Output = Int;
    fn add(self, rhs: Int) -> Int {
        Int(self.0 + rhs.0)
    }
}

impl Sub for Int {
    type Output = Int;
    fn sub(self, rhs: Int) -> Int {
        Int(self.0 - rhs.0)
    }
}

impl Mul for Int {
    type Output = Int;
    fn mul(self, rhs: Int) -> Int {
        Int(self.0 * rhs.0)
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        Int(-self.0)
    }
}

/// Checks the `integer` production: optional `-` then one or more digits.
pub(crate) fn is_integer_literal(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

impl Ring for Int {
    const NAME: &'static str = "int";

    fn zero() -> Self {
        Int(BigInt::zero())
    }

    fn one() -> Self {
        Int(BigInt::one())
    }

    fn from_i64(v: i64) -> Self {
        Int::from(v)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "integer division by zero");
        let (q, r) = self.0.div_mod_floor(&d.0);
        (Int(q), Int(r))
    }

    fn normalize(&self) -> (Self, Self) {
        match self.0.sign() {
            Sign::Minus => (Int(-self.0.clone()), Int::from(-1)),
            _ => (self.clone(), Int::one()),
        }
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.0.is_one() || (-&self.0).is_one() {
            Some(self.clone())
        } else {
            None
        }
    }

    fn cmp_size(&self, other: &Self) -> Ordering {
        self.0
            .magnitude()
            .cmp(other.0.magnitude())
            .then_with(|| other.0.sign().cmp(&self.0.sign()))
    }

    fn parse_literal(s: &str) -> Result<Self, String> {
        if !is_integer_literal(s) {
            return Err(format!("invalid integer literal `{s}`"));
        }
        s.parse::<BigInt>()
            .map(Int)
            .map_err(|e| format!("invalid integer literal `{s}`: {e}"))
    }
}
