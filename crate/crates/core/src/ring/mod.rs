//! Commutative elementary divisor domains.
//!
//! Both shipped domains are Euclidean, so the Bezout data needed by the
//! normal-form eliminations comes from the extended Euclidean algorithm over
//! [`Ring::div_rem`].

mod int;
mod poly;

pub use int::Int;
pub use poly::Poly;

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// An exact commutative domain with Euclidean division and a fixed choice of
/// associate representatives.
pub trait Ring:
    Clone
    + PartialEq
    + Eq
    + Debug
    + Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Short name used by the CLI `--ring` flag.
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;

    /// Euclidean division `self = q·d + r` with `r` strictly smaller than `d`
    /// in the Euclidean size. When `d` is canonical the remainder is the
    /// canonical residue (integers: `0 ≤ r < d`; polynomials: `deg r < deg d`).
    ///
    /// Panics if `d` is zero.
    fn div_rem(&self, d: &Self) -> (Self, Self);

    /// Splits `self` into `(canonical, unit)` with `canonical · unit = self`.
    fn normalize(&self) -> (Self, Self);

    /// Inverse of `self` when it is a unit.
    fn unit_inverse(&self) -> Option<Self>;

    /// Order used for pivot selection: Euclidean size first, then a fixed
    /// tie-break so the choice is deterministic.
    fn cmp_size(&self, other: &Self) -> Ordering;

    /// Parses one scalar literal of the matrix file grammar.
    fn parse_literal(s: &str) -> std::result::Result<Self, String>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn is_unit(&self) -> bool {
        self.unit_inverse().is_some()
    }
}

/// Bezout data: `u·a + v·b = g` where `g` is the canonical gcd of `a, b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutTriple<R> {
    pub g: R,
    pub u: R,
    pub v: R,
}

/// Extended gcd. `ext_gcd(0, 0)` is `(0, 0, 0)`.
pub fn ext_gcd<R: Ring>(a: &R, b: &R) -> BezoutTriple<R> {
    if a.is_zero() && b.is_zero() {
        return BezoutTriple {
            g: R::zero(),
            u: R::zero(),
            v: R::zero(),
        };
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (R::one(), R::zero());
    let (mut t0, mut t1) = (R::zero(), R::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = s0 - q.clone() * s1.clone();
        let t = t0 - q * t1.clone();
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let (g, unit) = r0.normalize();
    let inv = unit.unit_inverse().expect("normalize returns a unit");
    BezoutTriple {
        g,
        u: s0 * inv.clone(),
        v: t0 * inv,
    }
}

/// The quotient `a / b`, required to be exact.
pub fn exact_div<R: Ring>(a: &R, b: &R) -> Result<R> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::NotDivisible {
            dividend: a.to_string(),
            divisor: b.to_string(),
        })
    }
}

/// `b | a`. Zero divides only zero.
pub fn divides<R: Ring>(b: &R, a: &R) -> bool {
    if b.is_zero() {
        return a.is_zero();
    }
    a.div_rem(b).1.is_zero()
}

pub fn normalize<R: Ring>(a: &R) -> (R, R) {
    a.normalize()
}

/// Canonical gcd.
pub fn gcd<R: Ring>(a: &R, b: &R) -> R {
    ext_gcd(a, b).g
}
