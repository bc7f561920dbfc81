use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly;
use crate::error::{Error, Result};
use crate::padic::{PAdicRing, PAdicScalar};

/// An element of `Lambda_n = Z_p[G_n] = Z_p[[T]]/(omega_n)` at working
/// precision, stored by its canonical representative of degree `< p^n`
/// (`gamma` corresponds to `1 + T`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteLevelElt {
    ring: PAdicRing,
    level: u32,
    coeffs: Vec<u64>,
}

pub(crate) fn level_dim(ring: &PAdicRing, level: u32) -> usize {
    (ring.p() as usize).pow(level)
}

impl FiniteLevelElt {
    /// Builds an element from exactly `p^level` polynomial coefficients.
    pub fn new(ring: PAdicRing, level: u32, coeffs: Vec<u64>) -> Result<Self> {
        let dim = level_dim(&ring, level);
        if coeffs.len() != dim {
            return Err(Error::InvalidParameter(format!(
                "level {level} needs {dim} coefficients, got {}",
                coeffs.len()
            )));
        }
        let m = ring.modulus();
        Ok(Self {
            ring,
            level,
            coeffs: coeffs.into_iter().map(|c| c % m).collect(),
        })
    }

    /// Image of an arbitrary polynomial under `Z_p[T] -> Lambda_n`.
    pub fn from_polynomial(ring: PAdicRing, level: u32, coeffs: &[u64]) -> Self {
        let m = ring.modulus();
        let reduced: Vec<u64> = coeffs.iter().map(|c| c % m).collect();
        Self::from_raw_poly(ring, level, &reduced)
    }

    pub(crate) fn from_raw_poly(ring: PAdicRing, level: u32, coeffs: &[u64]) -> Self {
        let dim = level_dim(&ring, level);
        let coeffs = if coeffs.len() <= dim {
            let mut v = coeffs.to_vec();
            v.resize(dim, 0);
            v
        } else {
            poly::rem_monic(&ring, coeffs, &poly::omega(&ring, level))
        };
        Self {
            ring,
            level,
            coeffs,
        }
    }

    pub fn from_scalars(level: u32, scalars: &[PAdicScalar]) -> Result<Self> {
        let ring = scalars
            .first()
            .map(|s| s.ring())
            .ok_or_else(|| Error::InvalidParameter("no coefficients".into()))?;
        for s in scalars {
            ring.check_same(&s.ring())?;
        }
        Self::new(ring, level, scalars.iter().map(|s| s.value()).collect())
    }

    pub fn zero(ring: PAdicRing, level: u32) -> Self {
        Self {
            ring,
            level,
            coeffs: vec![0; level_dim(&ring, level)],
        }
    }

    pub fn constant(c: PAdicScalar, level: u32) -> Self {
        let mut x = Self::zero(c.ring(), level);
        x.coeffs[0] = c.value();
        x
    }

    pub fn one(ring: PAdicRing, level: u32) -> Self {
        Self::constant(ring.one(), level)
    }

    /// `c T^k` in `Lambda_n`, reduced if `k >= p^n`.
    pub fn monomial(ring: PAdicRing, level: u32, k: usize, c: PAdicScalar) -> Self {
        let mut v = vec![0u64; k + 1];
        v[k] = c.value();
        Self::from_raw_poly(ring, level, &v)
    }

    pub fn ring(&self) -> PAdicRing {
        self.ring
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `p^level`, the rank of `Lambda_n` over `Z_p`.
    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// Polynomial-basis residues, coefficient of `T^j` at index `j`.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> PAdicScalar {
        self.ring.from_residue(self.coeffs[j])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.ring.check_same(&other.ring)?;
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        Ok(())
    }

    fn with_coeffs(&self, coeffs: Vec<u64>) -> Self {
        Self {
            ring: self.ring,
            level: self.level,
            coeffs,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.with_coeffs(poly::add(&self.ring, &self.coeffs, &other.coeffs)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.with_coeffs(poly::sub(&self.ring, &self.coeffs, &other.coeffs)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let prod = poly::mul(&self.ring, &self.coeffs, &other.coeffs);
        Ok(Self::from_raw_poly(self.ring, self.level, &prod))
    }

    pub fn scale(&self, c: PAdicScalar) -> Self {
        assert_eq!(self.ring, c.ring(), "ring mismatch");
        self.with_coeffs(poly::scale(&self.ring, &self.coeffs, c.value()))
    }

    /// Natural projection `pi: Lambda_{n} -> Lambda_{n-1}`.
    pub fn project(&self) -> Result<Self> {
        if self.level == 0 {
            return Err(Error::InvalidLevel(0));
        }
        Ok(Self::from_raw_poly(self.ring, self.level - 1, &self.coeffs))
    }

    /// Projection to any lower (or equal) level.
    pub fn project_to(&self, level: u32) -> Result<Self> {
        if level > self.level {
            return Err(Error::InvalidLevel(level));
        }
        Ok(Self::from_raw_poly(self.ring, level, &self.coeffs))
    }

    /// Canonical lift to a higher level: same coefficients, zero padded.
    pub fn lift_to(&self, level: u32) -> Result<Self> {
        if level < self.level {
            return Err(Error::InvalidLevel(level));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(level_dim(&self.ring, level), 0);
        Ok(Self {
            ring: self.ring,
            level,
            coeffs,
        })
    }

    /// The norm map `xi: Lambda_n -> Lambda_{n+1}`, multiplication of the
    /// canonical lift by `Phi_{n+1}`. Independent of the lift because
    /// `Phi_{n+1} omega_n = omega_{n+1}`.
    pub fn norm_xi(&self) -> Self {
        let phi = poly::cyclo_phi(&self.ring, self.level + 1);
        let prod = poly::mul(&self.ring, &self.coeffs, &phi);
        Self::from_raw_poly(self.ring, self.level + 1, &prod)
    }

    /// The involution `gamma -> gamma^{-1}`, i.e. `1+T -> (1+T)^{p^n - 1}`.
    pub fn involution(&self) -> Self {
        let group = self.to_group_coeffs_raw();
        let dim = group.len();
        let flipped: Vec<u64> = (0..dim).map(|i| group[(dim - i) % dim]).collect();
        self.with_coeffs(poly::group_to_poly(&self.ring, &flipped))
    }

    pub(crate) fn to_group_coeffs_raw(&self) -> Vec<u64> {
        poly::poly_to_group(&self.ring, &self.coeffs)
    }

    /// Coefficients `c_i` in `x = sum_i c_i gamma^i`, `0 <= i < p^n`.
    pub fn to_group_coeffs(&self) -> Vec<PAdicScalar> {
        self.to_group_coeffs_raw()
            .into_iter()
            .map(|c| self.ring.from_residue(c))
            .collect()
    }

    pub fn from_group_coeffs(ring: PAdicRing, level: u32, group: &[u64]) -> Result<Self> {
        let dim = level_dim(&ring, level);
        if group.len() != dim {
            return Err(Error::InvalidParameter(format!(
                "level {level} needs {dim} group coefficients, got {}",
                group.len()
            )));
        }
        let reduced: Vec<u64> = group.iter().map(|c| c % ring.modulus()).collect();
        Ok(Self {
            ring,
            level,
            coeffs: poly::group_to_poly(&ring, &reduced),
        })
    }

    /// Whether `self - other` lies in `p^k Lambda_n`.
    pub fn congruent_mod_p_power(&self, other: &Self, k: u32) -> bool {
        if self.check_compatible(other).is_err() {
            return false;
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(&a, &b)| self.ring.valuation_raw(self.ring.sub_raw(a, b)) >= k)
    }

    /// First index where the coefficients differ, if any.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }
}

impl fmt::Debug for FiniteLevelElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteLevelElt({}, level {}, {:?})",
            self.ring, self.level, self.coeffs
        )
    }
}

impl fmt::Display for FiniteLevelElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::fmt_poly(f, &self.ring, &self.coeffs)?;
        write!(f, " mod omega_{}", self.level)
    }
}

impl Add for &FiniteLevelElt {
    type Output = FiniteLevelElt;
    fn add(self, rhs: Self) -> FiniteLevelElt {
        self.checked_add(rhs).expect("incompatible operands")
    }
}

impl Sub for &FiniteLevelElt {
    type Output = FiniteLevelElt;
    fn sub(self, rhs: Self) -> FiniteLevelElt {
        self.checked_sub(rhs).expect("incompatible operands")
    }
}

impl Mul for &FiniteLevelElt {
    type Output = FiniteLevelElt;
    fn mul(self, rhs: Self) -> FiniteLevelElt {
        self.checked_mul(rhs).expect("incompatible operands")
    }
}

impl Neg for &FiniteLevelElt {
    type Output = FiniteLevelElt;
    fn neg(self) -> FiniteLevelElt {
        self.with_coeffs(self.coeffs.iter().map(|&c| self.ring.neg_raw(c)).collect())
    }
}
