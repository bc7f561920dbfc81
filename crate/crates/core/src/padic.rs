//! Fixed-precision arithmetic in `Z/p^N`, the working model of `Z_p`.
//!
//! Every value is a residue in `[0, p^N)`. The valuation of the zero
//! residue is `N` by convention, so `valuation(a * b) = min(v(a) + v(b), N)`
//! holds without special cases.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// The coefficient ring `Z/p^N` for an odd prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PAdicRing {
    p: u64,
    precision: u32,
    modulus: u64,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PAdicRing {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if precision == 0 {
            return Err(Error::ZeroPrecision);
        }
        let modulus = p
            .checked_pow(precision)
            .ok_or(Error::ModulusOverflow { p, precision })?;
        Ok(Self {
            p,
            precision,
            modulus,
        })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// The absolute precision exponent `N`.
    #[inline]
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `p^N`.
    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left_p: self.p,
                left_n: self.precision,
                right_p: other.p,
                right_n: other.precision,
            })
        }
    }

    #[inline]
    pub(crate) fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.modulus as i128) as u64
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.modulus as u128) as u64
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.modulus - (b - a)
        }
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub(crate) fn pow_raw(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        let mut b = base % self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(acc, b);
            }
            b = self.mul_raw(b, b);
            exp >>= 1;
        }
        acc
    }

    pub(crate) fn valuation_raw(&self, mut a: u64) -> u32 {
        if a == 0 {
            return self.precision;
        }
        let mut k = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            k += 1;
        }
        k
    }

    pub(crate) fn inverse_raw(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            return None;
        }
        // extended Euclid on (a, p^N)
        let (mut r0, mut r1) = (self.modulus as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce_i128(t0))
    }

    /// Lift a signed integer into the ring.
    pub fn element(&self, v: i64) -> PAdicScalar {
        PAdicScalar {
            ring: *self,
            value: self.reduce_i128(v as i128),
        }
    }

    pub fn from_residue(&self, v: u64) -> PAdicScalar {
        PAdicScalar {
            ring: *self,
            value: v % self.modulus,
        }
    }

    pub fn zero(&self) -> PAdicScalar {
        self.from_residue(0)
    }

    pub fn one(&self) -> PAdicScalar {
        self.from_residue(1)
    }

    /// `p^k` (zero once `k >= N`).
    pub fn p_power(&self, k: u32) -> PAdicScalar {
        self.from_residue(self.pow_raw(self.p, k as u64))
    }
}

impl fmt::Display for PAdicRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}^{}", self.p, self.precision)
    }
}

/// A residue class modulo `p^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PAdicScalar {
    ring: PAdicRing,
    value: u64,
}

impl PAdicScalar {
    #[inline]
    pub fn ring(&self) -> PAdicRing {
        self.ring
    }

    /// The canonical residue in `[0, p^N)`.
    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Largest `k <= N` with `p^k | value`; `N` for the zero residue.
    pub fn valuation(&self) -> u32 {
        self.ring.valuation_raw(self.value)
    }

    pub fn is_unit(&self) -> bool {
        !self.value.is_multiple_of(self.ring.p)
    }

    /// The residue as a signed integer in `(-p^N/2, p^N/2]`.
    pub fn centered(&self) -> i128 {
        let m = self.ring.modulus as i128;
        let v = self.value as i128;
        if v > m / 2 {
            v - m
        } else {
            v
        }
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        self.ring.check_same(&rhs.ring)?;
        Ok(self.with(self.ring.add_raw(self.value, rhs.value)))
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        self.ring.check_same(&rhs.ring)?;
        Ok(self.with(self.ring.sub_raw(self.value, rhs.value)))
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        self.ring.check_same(&rhs.ring)?;
        Ok(self.with(self.ring.mul_raw(self.value, rhs.value)))
    }

    pub fn pow(self, exp: u64) -> Self {
        self.with(self.ring.pow_raw(self.value, exp))
    }

    /// Two-sided inverse of a unit.
    pub fn invert_unit(&self) -> Result<Self> {
        self.ring
            .inverse_raw(self.value)
            .map(|v| self.with(v))
            .ok_or(Error::NonUnit(self.value))
    }

    #[inline]
    fn with(&self, value: u64) -> Self {
        Self {
            ring: self.ring,
            value,
        }
    }
}

impl fmt::Display for PAdicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// Operator impls panic on mismatched rings; use the checked_* forms when the
// operands come from untrusted input.
impl Add for PAdicScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub for PAdicScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for PAdicScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for PAdicScalar {
    type Output = Self;
    fn neg(self) -> Self {
        self.with(self.ring.neg_raw(self.value))
    }
}

/// The unit root `alpha` of the Hecke polynomial `X^2 - a_p X + p`.
///
/// Newton iteration from the seed `alpha = a_p mod p`. The derivative
/// `2 alpha - a_p` is congruent to `a_p` mod `p`, hence a unit, so every step
/// is well defined and the precision doubles each round. The companion root
/// is `beta = a_p - alpha`.
pub fn unit_root(a_p: PAdicScalar) -> Result<PAdicScalar> {
    if !a_p.is_unit() {
        return Err(Error::NonOrdinary(a_p.value()));
    }
    let ring = a_p.ring();
    let p = ring.from_residue(ring.p() % ring.modulus());
    let hecke = |x: PAdicScalar| x * x - a_p * x + p;
    let mut alpha = ring.from_residue(a_p.value() % ring.p());
    for _ in 0..64 {
        let f = hecke(alpha);
        if f.is_zero() {
            return Ok(alpha);
        }
        let df = alpha + alpha - a_p;
        alpha = alpha - f * df.invert_unit()?;
    }
    unreachable!("Newton iteration for the unit root did not converge")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, n: u32) -> PAdicRing {
        PAdicRing::new(p, n).unwrap()
    }

    #[test]
    fn rejects_bad_primes() {
        assert_eq!(PAdicRing::new(4, 3), Err(Error::NotOddPrime(4)));
        assert_eq!(PAdicRing::new(2, 3), Err(Error::NotOddPrime(2)));
        assert_eq!(PAdicRing::new(5, 0), Err(Error::ZeroPrecision));
        assert!(matches!(
            PAdicRing::new(5, 40),
            Err(Error::ModulusOverflow { .. })
        ));
    }

    #[test]
    fn ring_arithmetic_examples() {
        let r = ring(5, 3);
        assert_eq!((r.element(124) + r.element(1)).value(), 0);
        assert_eq!((r.element(5) * r.element(25)).value(), 0);
        let r3 = ring(3, 4);
        // 82 mod 81
        assert_eq!((r3.element(2) * r3.element(41)).value(), 1);
        assert_eq!((r.element(0) - r.element(1)).value(), 124);
        assert_eq!(r.element(-1).value(), 124);
    }

    #[test]
    fn mismatched_rings_error() {
        let a = ring(5, 3).element(1);
        let b = ring(5, 4).element(1);
        let c = ring(3, 3).element(1);
        assert!(matches!(a.checked_add(b), Err(Error::RingMismatch { .. })));
        assert!(matches!(a.checked_mul(c), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn valuation_examples() {
        let r = ring(5, 4);
        assert_eq!(r.element(50).valuation(), 2);
        assert_eq!(r.element(0).valuation(), 4);
        assert_eq!(r.element(7).valuation(), 0);
        assert_eq!(r.element(625).valuation(), 4);
    }

    #[test]
    fn invert_unit_examples() {
        let r = ring(5, 2);
        assert_eq!(r.element(1).invert_unit().unwrap().value(), 1);
        assert_eq!(r.element(2).invert_unit().unwrap().value(), 13);
        assert_eq!(r.element(5).invert_unit(), Err(Error::NonUnit(5)));
    }

    #[test]
    fn unit_root_examples() {
        let r = ring(5, 2);
        let a_p = r.element(1);
        let alpha = unit_root(a_p).unwrap();
        assert_eq!(alpha.value(), 21);
        assert_eq!((alpha * (a_p - alpha)).value(), 5);

        let r1 = ring(5, 1);
        assert_eq!(unit_root(r1.element(2)).unwrap().value(), 2);
        assert_eq!(unit_root(r.element(10)), Err(Error::NonOrdinary(10)));
    }

    #[test]
    fn unit_root_full_precision() {
        let r = ring(5, 20);
        for a in [1i64, 2, 3, 4, 6, 7, -1, 123_456_789] {
            let a_p = r.element(a);
            let alpha = unit_root(a_p).unwrap();
            let beta = a_p - alpha;
            assert!(alpha.is_unit());
            assert!(beta.valuation() >= 1);
            assert_eq!(alpha * beta, r.element(5));
            assert_eq!(alpha + beta, a_p);
        }
    }
}
