//! The `mu` and `lambda` invariants of finite-level and truncated elements.
//!
//! At level `n`, `mu` is the least valuation of a coefficient and `lambda` is
//! the order of the reduction of `p^{-mu} x` in the augmentation ideal of
//! `F_p[G_n] = F_p[T]/(T^{p^n})`, i.e. the lowest surviving power of `T`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lambda::{FiniteLevelElt, SeriesElt};
use crate::padic::PAdicRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Invariants {
    pub mu: u32,
    pub lambda: u32,
}

/// Outcome of an invariant computation. Elements that vanish modulo `p^N`
/// have no certified invariants and are reported as such rather than as an
/// error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvariantResult {
    Finite(Invariants),
    ZeroAtPrecision,
}

impl InvariantResult {
    pub fn mu(&self) -> Option<u32> {
        self.finite().map(|i| i.mu)
    }

    pub fn lambda(&self) -> Option<u32> {
        self.finite().map(|i| i.lambda)
    }

    pub fn finite(&self) -> Option<Invariants> {
        match self {
            InvariantResult::Finite(i) => Some(*i),
            InvariantResult::ZeroAtPrecision => None,
        }
    }

    pub fn is_zero_at_precision(&self) -> bool {
        matches!(self, InvariantResult::ZeroAtPrecision)
    }
}

impl fmt::Display for InvariantResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantResult::Finite(i) => write!(f, "mu={} lambda={}", i.mu, i.lambda),
            InvariantResult::ZeroAtPrecision => write!(f, "zero-at-precision"),
        }
    }
}

fn min_valuation(ring: &PAdicRing, coeffs: &[u64]) -> Option<u32> {
    coeffs
        .iter()
        .filter(|&&c| c != 0)
        .map(|&c| ring.valuation_raw(c))
        .min()
}

fn first_at_valuation(ring: &PAdicRing, coeffs: &[u64], mu: u32) -> usize {
    coeffs
        .iter()
        .position(|&c| c != 0 && ring.valuation_raw(c) == mu)
        .expect("mu is attained")
}

/// `mu(x)`, or `None` when every coefficient vanishes modulo `p^N`.
pub fn mu(x: &FiniteLevelElt) -> Option<u32> {
    min_valuation(&x.ring(), x.coeffs())
}

/// `mu(x)` read off the group-basis coefficients `c_sigma`. The change of
/// basis is unipotent and integral, so this always agrees with [`mu`].
pub fn mu_group_basis(x: &FiniteLevelElt) -> Option<u32> {
    let ring = x.ring();
    let group: Vec<u64> = x.to_group_coeffs().iter().map(|c| c.value()).collect();
    min_valuation(&ring, &group)
}

pub fn lambda(x: &FiniteLevelElt) -> Result<u32> {
    let mu = mu(x).ok_or(Error::ZeroAtPrecision)?;
    Ok(first_at_valuation(&x.ring(), x.coeffs(), mu) as u32)
}

pub fn invariants(x: &FiniteLevelElt) -> InvariantResult {
    match mu(x) {
        None => InvariantResult::ZeroAtPrecision,
        Some(mu) => InvariantResult::Finite(Invariants {
            mu,
            lambda: first_at_valuation(&x.ring(), x.coeffs(), mu) as u32,
        }),
    }
}

/// Invariants of a truncated series. `lambda` is only certified strictly
/// below the truncation degree.
pub fn invariants_series(s: &SeriesElt) -> Result<InvariantResult> {
    let ring = s.ring();
    let Some(mu) = min_valuation(&ring, s.coeffs()) else {
        return Ok(InvariantResult::ZeroAtPrecision);
    };
    let lambda = first_at_valuation(&ring, s.coeffs(), mu);
    if lambda >= s.trunc() {
        return Err(Error::LambdaExceedsTruncation(s.trunc()));
    }
    Ok(InvariantResult::Finite(Invariants {
        mu,
        lambda: lambda as u32,
    }))
}

impl FiniteLevelElt {
    pub fn invariants(&self) -> InvariantResult {
        invariants(self)
    }
}

impl SeriesElt {
    pub fn invariants(&self) -> Result<InvariantResult> {
        invariants_series(self)
    }
}

/// `q_n = p^{n-1} - p^{n-2} + ... + p - 1` for even `n`,
/// `p^{n-1} - p^{n-2} + ... + p^2 - p` for odd `n`, with `q_0 = q_1 = 0`.
pub fn q(p: u64, n: u32) -> u64 {
    let lowest = if n.is_multiple_of(2) { 0 } else { 1 };
    let mut total: i128 = 0;
    for k in lowest..n {
        let term = (p as i128).pow(k);
        if (n - 1 - k).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    total as u64
}

fn random_residue<R: Rng + ?Sized>(ring: &PAdicRing, rng: &mut R) -> u64 {
    rng.gen_range(0..ring.modulus())
}

fn random_unit<R: Rng + ?Sized>(ring: &PAdicRing, rng: &mut R) -> u64 {
    loop {
        let v = random_residue(ring, rng);
        if !v.is_multiple_of(ring.p()) {
            return v;
        }
    }
}

/// `p^mu (T^lambda + p r(T)) u(T)` with `deg r < lambda` and `u` a random
/// unit series, truncated to degree `trunc`. Its invariants are exactly
/// `(mu, lambda)`.
pub fn make_with_invariants<R: Rng + ?Sized>(
    ring: PAdicRing,
    trunc: usize,
    mu: u32,
    lambda: u32,
    rng: &mut R,
) -> Result<SeriesElt> {
    if mu >= ring.precision() {
        return Err(Error::InvalidParameter(format!(
            "mu = {mu} must be below the precision {}",
            ring.precision()
        )));
    }
    let lambda = lambda as usize;
    if lambda >= trunc {
        return Err(Error::InvalidParameter(format!(
            "lambda = {lambda} must be below the truncation degree {trunc}"
        )));
    }
    let p = ring.p();
    let mut core = vec![0u64; lambda + 1];
    for c in core.iter_mut().take(lambda) {
        *c = ring.mul_raw(p, random_residue(&ring, rng));
    }
    core[lambda] = 1;
    let mut unit: Vec<u64> = (0..=trunc).map(|_| random_residue(&ring, rng)).collect();
    unit[0] = random_unit(&ring, rng);
    let core = SeriesElt::new(ring, trunc, core)?;
    let unit = SeriesElt::new(ring, trunc, unit)?;
    Ok((&core * &unit).scale(ring.p_power(mu)))
}

/// A random element of `Lambda_level` with invariants exactly
/// `(mu, lambda)`: coefficients below `lambda` are divisible by `p^{mu+1}`,
/// the `T^lambda` coefficient is `p^mu` times a unit and the rest are
/// arbitrary multiples of `p^mu`.
pub fn make_level_with_invariants<R: Rng + ?Sized>(
    ring: PAdicRing,
    level: u32,
    mu: u32,
    lambda: u32,
    rng: &mut R,
) -> Result<FiniteLevelElt> {
    let dim = (ring.p() as usize).pow(level);
    if mu >= ring.precision() || lambda as usize >= dim {
        return Err(Error::InvalidParameter(format!(
            "(mu, lambda) = ({mu}, {lambda}) out of range at level {level}"
        )));
    }
    let pm = ring.p_power(mu).value();
    let pm1 = ring.p_power(mu + 1).value();
    let lambda = lambda as usize;
    let coeffs = (0..dim)
        .map(|j| match j.cmp(&lambda) {
            std::cmp::Ordering::Less => ring.mul_raw(pm1, random_residue(&ring, rng)),
            std::cmp::Ordering::Equal => ring.mul_raw(pm, random_unit(&ring, rng)),
            std::cmp::Ordering::Greater => ring.mul_raw(pm, random_residue(&ring, rng)),
        })
        .collect();
    FiniteLevelElt::new(ring, level, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::{cyclo_phi_at, omega_pm, Sign};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ring(p: u64) -> PAdicRing {
        PAdicRing::new(p, 20).unwrap()
    }

    #[test]
    fn finite_mu_examples() {
        let r = ring(5);
        let x = FiniteLevelElt::from_polynomial(r, 1, &[5, 5]);
        assert_eq!(mu(&x), Some(1));
        assert_eq!(lambda(&x), Ok(0));
        for n in 1..=3 {
            assert_eq!(mu(&cyclo_phi_at(r, n, n).unwrap()), Some(0));
        }
        let zero = FiniteLevelElt::zero(r, 2);
        assert_eq!(invariants(&zero), InvariantResult::ZeroAtPrecision);
        assert_eq!(lambda(&zero), Err(Error::ZeroAtPrecision));
    }

    #[test]
    fn finite_lambda_examples() {
        let r = ring(3);
        let t3 = FiniteLevelElt::monomial(r, 1, 3, r.one());
        // T^3 = -3T^2 - 3T mod omega_1: at level 1 it is divisible by p
        assert_eq!(invariants(&t3).mu(), Some(1));
        let t3 = FiniteLevelElt::monomial(r, 2, 3, r.one());
        assert_eq!(lambda(&t3), Ok(3));
        let p: u32 = 3;
        for n in 1..=3u32 {
            let phi = cyclo_phi_at(r, n, n).unwrap();
            assert_eq!(lambda(&phi), Ok(p.pow(n) - p.pow(n - 1)));
        }
        let r5 = ring(5);
        // p^2 T + p T^4
        let x = FiniteLevelElt::from_polynomial(r5, 1, &[0, 25, 0, 0, 5]);
        assert_eq!(
            invariants(&x),
            InvariantResult::Finite(Invariants { mu: 1, lambda: 4 })
        );
    }

    #[test]
    fn series_examples() {
        let r = ring(5);
        // p^3 (1 + T) + T^5
        let s = SeriesElt::new(r, 10, vec![125, 125, 0, 0, 0, 1]).unwrap();
        assert_eq!(
            invariants_series(&s),
            Ok(InvariantResult::Finite(Invariants { mu: 0, lambda: 5 }))
        );
        let u = SeriesElt::new(r, 10, vec![5 * 3, 5 * 7, 5]).unwrap();
        assert_eq!(
            invariants_series(&u).unwrap().finite(),
            Some(Invariants { mu: 1, lambda: 0 })
        );
        assert_eq!(
            invariants_series(&SeriesElt::zero(r, 4)),
            Ok(InvariantResult::ZeroAtPrecision)
        );
        let late = SeriesElt::monomial(r, 6, 6, r.one());
        assert_eq!(
            invariants_series(&late),
            Err(Error::LambdaExceedsTruncation(6))
        );
    }

    #[test]
    fn q_values() {
        assert_eq!(q(5, 0), 0);
        assert_eq!(q(5, 1), 0);
        assert_eq!(q(5, 2), 4);
        assert_eq!(q(5, 3), 20);
        assert_eq!(q(5, 4), 104);
        assert_eq!(q(3, 2), 2);
        assert_eq!(q(3, 5), 81 - 27 + 9 - 3);
    }

    #[test]
    fn omega_pm_lambda_is_q() {
        let r = ring(5);
        for n in 1..=4u32 {
            let eps = Sign::of_parity(n + 1);
            let w = omega_pm(r, n, eps, 700).unwrap();
            assert_eq!(
                invariants_series(&w).unwrap().finite(),
                Some(Invariants {
                    mu: 0,
                    lambda: q(5, n) as u32
                })
            );
        }
    }

    #[test]
    fn make_with_invariants_round_trips() {
        let r = ring(5);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (m, l) in [(0, 0), (2, 3), (1, 7), (5, 0)] {
            let s = make_with_invariants(r, 30, m, l, &mut rng).unwrap();
            assert_eq!(
                invariants_series(&s).unwrap().finite(),
                Some(Invariants { mu: m, lambda: l })
            );
        }
        let unit = make_with_invariants(r, 30, 0, 0, &mut rng).unwrap();
        assert!(unit.coeff(0).is_unit());
        assert!(make_with_invariants(r, 30, 20, 0, &mut rng).is_err());
        assert!(make_with_invariants(r, 30, 0, 30, &mut rng).is_err());
    }

    #[test]
    fn level_generator_round_trips() {
        let r = ring(5);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (m, l) in [(0, 0), (3, 24), (1, 11)] {
            let x = make_level_with_invariants(r, 2, m, l, &mut rng).unwrap();
            assert_eq!(
                invariants(&x).finite(),
                Some(Invariants { mu: m, lambda: l })
            );
            assert_eq!(mu_group_basis(&x), Some(m));
        }
        assert!(make_level_with_invariants(r, 1, 0, 5, &mut rng).is_err());
    }
}
