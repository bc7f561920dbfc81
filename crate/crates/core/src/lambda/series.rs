use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::finite::FiniteLevelElt;
use super::poly;
use crate::error::{Error, Result};
use crate::padic::{PAdicRing, PAdicScalar};

/// An element of `Z_p[[T]]` known modulo `(p^N, T^{D+1})`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeriesElt {
    ring: PAdicRing,
    coeffs: Vec<u64>,
}

impl SeriesElt {
    /// Series with truncation degree `trunc`; `coeffs` may be shorter than
    /// `trunc + 1` and is zero padded.
    pub fn new(ring: PAdicRing, trunc: usize, coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.len() > trunc + 1 {
            return Err(Error::TruncationTooSmall {
                trunc,
                needed: coeffs.len() - 1,
            });
        }
        let m = ring.modulus();
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % m).collect();
        coeffs.resize(trunc + 1, 0);
        Ok(Self { ring, coeffs })
    }

    /// Like [`SeriesElt::new`] but drops terms above `trunc`.
    pub fn truncating(ring: PAdicRing, trunc: usize, coeffs: &[u64]) -> Self {
        let m = ring.modulus();
        let mut v: Vec<u64> = coeffs.iter().take(trunc + 1).map(|c| c % m).collect();
        v.resize(trunc + 1, 0);
        Self { ring, coeffs: v }
    }

    pub fn from_signed(ring: PAdicRing, trunc: usize, coeffs: &[i64]) -> Result<Self> {
        Self::new(
            ring,
            trunc,
            coeffs.iter().map(|&c| ring.element(c).value()).collect(),
        )
    }

    pub fn zero(ring: PAdicRing, trunc: usize) -> Self {
        Self {
            ring,
            coeffs: vec![0; trunc + 1],
        }
    }

    pub fn constant(c: PAdicScalar, trunc: usize) -> Self {
        let mut s = Self::zero(c.ring(), trunc);
        s.coeffs[0] = c.value();
        s
    }

    pub fn one(ring: PAdicRing, trunc: usize) -> Self {
        Self::constant(ring.one(), trunc)
    }

    /// `c T^k`; zero when `k > trunc`.
    pub fn monomial(ring: PAdicRing, trunc: usize, k: usize, c: PAdicScalar) -> Self {
        let mut s = Self::zero(ring, trunc);
        if k <= trunc {
            s.coeffs[k] = c.value();
        }
        s
    }

    pub fn ring(&self) -> PAdicRing {
        self.ring
    }

    /// The truncation degree `D`.
    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> PAdicScalar {
        self.ring.from_residue(self.coeffs[j])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Same series at a different truncation degree (padding or cutting).
    pub fn with_trunc(&self, trunc: usize) -> Self {
        Self::truncating(self.ring, trunc, &self.coeffs)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.ring.check_same(&other.ring)?;
        if self.trunc() != other.trunc() {
            return Err(Error::TruncationMismatch(self.trunc(), other.trunc()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            ring: self.ring,
            coeffs: poly::add(&self.ring, &self.coeffs, &other.coeffs),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            ring: self.ring,
            coeffs: poly::sub(&self.ring, &self.coeffs, &other.coeffs),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            ring: self.ring,
            coeffs: poly::mul_truncated(&self.ring, &self.coeffs, &other.coeffs, self.coeffs.len()),
        })
    }

    pub fn scale(&self, c: PAdicScalar) -> Self {
        assert_eq!(self.ring, c.ring(), "ring mismatch");
        Self {
            ring: self.ring,
            coeffs: poly::scale(&self.ring, &self.coeffs, c.value()),
        }
    }

    /// Image in `Lambda_n`: exact division of the truncated polynomial by
    /// `omega_n`.
    pub fn reduce_to_level(&self, level: u32) -> FiniteLevelElt {
        FiniteLevelElt::from_raw_poly(self.ring, level, &self.coeffs)
    }

    /// `P((1+T)^{-1} - 1)`, the involution `1+T -> (1+T)^{-1}` on `Z_p[[T]]`.
    ///
    /// Writes `P = sum_i c_i (1+T)^i` and expands
    /// `(1+T)^{-i} = sum_k (-1)^k C(i+k-1, k) T^k`.
    pub fn involution(&self) -> Self {
        let ring = self.ring;
        let d = self.trunc();
        let group = poly::poly_to_group(&ring, &self.coeffs);
        let mut out = vec![0u64; d + 1];
        out[0] = group[0];
        if d > 0 {
            // row m = i + k - 1 holds C(i+k-1, k) at position k
            poly::pascal_rows(&ring, 2 * d - 1, |m, row| {
                for (k, &binom) in row.iter().enumerate().take(d + 1) {
                    let i = m + 1 - k;
                    if i == 0 || i > d {
                        continue;
                    }
                    let ci = group[i];
                    if ci == 0 || binom == 0 {
                        continue;
                    }
                    let t = ring.mul_raw(ci, binom);
                    out[k] = if k % 2 == 0 {
                        ring.add_raw(out[k], t)
                    } else {
                        ring.sub_raw(out[k], t)
                    };
                }
            });
        }
        Self { ring, coeffs: out }
    }

    /// Composition `P(Q)` for `Q` with zero constant term, by Horner's rule.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_compatible(inner)?;
        if inner.coeffs[0] != 0 {
            return Err(Error::InvalidParameter(
                "inner series must have zero constant term".into(),
            ));
        }
        let mut acc = Self::zero(self.ring, self.trunc());
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(inner)?;
            acc.coeffs[0] = self.ring.add_raw(acc.coeffs[0], c);
        }
        Ok(acc)
    }
}

impl fmt::Debug for SeriesElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SeriesElt({}, deg {}, {:?})",
            self.ring,
            self.trunc(),
            self.coeffs
        )
    }
}

impl fmt::Display for SeriesElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::fmt_poly(f, &self.ring, &self.coeffs)?;
        write!(f, " + O(T^{})", self.coeffs.len())
    }
}

impl Add for &SeriesElt {
    type Output = SeriesElt;
    fn add(self, rhs: Self) -> SeriesElt {
        self.checked_add(rhs).expect("incompatible operands")
    }
}

impl Sub for &SeriesElt {
    type Output = SeriesElt;
    fn sub(self, rhs: Self) -> SeriesElt {
        self.checked_sub(rhs).expect("incompatible operands")
    }
}

impl Mul for &SeriesElt {
    type Output = SeriesElt;
    fn mul(self, rhs: Self) -> SeriesElt {
        self.checked_mul(rhs).expect("incompatible operands")
    }
}

impl Neg for &SeriesElt {
    type Output = SeriesElt;
    fn neg(self) -> SeriesElt {
        SeriesElt {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(|&c| self.ring.neg_raw(c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> PAdicRing {
        PAdicRing::new(5, 8).unwrap()
    }

    /// `(1+T)^{-1} - 1 = -T + T^2 - T^3 + ...`
    fn iota_t(r: PAdicRing, d: usize) -> SeriesElt {
        let v: Vec<i64> = (0..=d)
            .map(|k| match k {
                0 => 0,
                k if k % 2 == 0 => 1,
                _ => -1,
            })
            .collect();
        SeriesElt::from_signed(r, d, &v).unwrap()
    }

    #[test]
    fn involution_of_t() {
        let r = ring();
        let t = SeriesElt::monomial(r, 12, 1, r.one());
        assert_eq!(t.involution(), iota_t(r, 12));
        let one = SeriesElt::one(r, 12);
        assert_eq!(one.involution(), one);
    }

    #[test]
    fn involution_matches_horner_composition() {
        let r = ring();
        let d = 14;
        let p = SeriesElt::from_signed(r, d, &[3, -1, 4, 1, -5, 9, 2, 6, -5, 3, 5, 8, 9, 7, 9])
            .unwrap();
        assert_eq!(p.involution(), p.compose(&iota_t(r, d)).unwrap());
        assert_eq!(p.involution().involution(), p);
    }

    #[test]
    fn reduce_examples() {
        let r = ring();
        let w = SeriesElt::new(r, 30, poly::omega(&r, 2)).unwrap();
        assert!(w.reduce_to_level(2).is_zero());
        let t = SeriesElt::monomial(r, 30, 1, r.one());
        assert_eq!(
            t.reduce_to_level(1),
            FiniteLevelElt::monomial(r, 1, 1, r.one())
        );
    }

    #[test]
    fn reduce_of_t_to_the_p_power() {
        // T^{p^n} = omega_n - (lower binomial terms), by schoolbook division
        let r = PAdicRing::new(3, 6).unwrap();
        let t9 = SeriesElt::monomial(r, 20, 9, r.one());
        let w = poly::omega(&r, 2);
        let expected: Vec<u64> = w[..9].iter().map(|&c| r.neg_raw(c)).collect();
        assert_eq!(t9.reduce_to_level(2).coeffs(), &expected[..]);
    }

    #[test]
    fn too_many_coefficients() {
        let r = ring();
        assert!(SeriesElt::new(r, 2, vec![1, 2, 3, 4]).is_err());
    }
}
