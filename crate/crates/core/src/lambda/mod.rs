//! The Iwasawa algebra `Lambda = Z_p[[T]]` (truncated) and its finite-level
//! quotients `Lambda_n = Z_p[[T]]/(omega_n)`, with the structural elements
//! `omega_n`, `Phi_n` and `omega_n^{+/-}`.

mod finite;
pub(crate) mod poly;
mod series;

use std::fmt;

pub use finite::FiniteLevelElt;
pub use series::SeriesElt;

use crate::error::{Error, Result};
use crate::padic::PAdicRing;

/// Parity selector for `omega_n^{+}` (even indices) and `omega_n^{-}` (odd).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `epsilon_m`: `Plus` exactly when `m` is even.
    pub fn of_parity(m: u32) -> Self {
        if m.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

fn check_trunc(ring: &PAdicRing, n: u32, trunc: usize) -> Result<()> {
    let needed = (ring.p() as usize).pow(n);
    if needed > trunc {
        return Err(Error::TruncationTooSmall { trunc, needed });
    }
    Ok(())
}

/// `omega_n = (1+T)^{p^n} - 1`.
pub fn omega(ring: PAdicRing, n: u32, trunc: usize) -> Result<SeriesElt> {
    check_trunc(&ring, n, trunc)?;
    SeriesElt::new(ring, trunc, poly::omega(&ring, n))
}

/// `Phi_n = omega_n / omega_{n-1}`, of degree `p^n - p^{n-1}` and constant
/// term `p`.
pub fn cyclo_phi(ring: PAdicRing, n: u32, trunc: usize) -> Result<SeriesElt> {
    if n == 0 {
        return Err(Error::InvalidLevel(0));
    }
    check_trunc(&ring, n, trunc)?;
    SeriesElt::new(ring, trunc, poly::cyclo_phi(&ring, n))
}

/// Exact coefficients of `omega_n^{sign}`, the product of `Phi_j` over
/// `1 <= j <= n` with `j` even (`Plus`) or odd (`Minus`).
pub(crate) fn omega_pm_poly(ring: &PAdicRing, n: u32, sign: Sign) -> Vec<u64> {
    let first = match sign {
        Sign::Plus => 2,
        Sign::Minus => 1,
    };
    let mut acc = vec![1 % ring.modulus()];
    for j in (first..=n).step_by(2) {
        acc = poly::mul(ring, &acc, &poly::cyclo_phi(ring, j));
    }
    acc
}

pub fn omega_pm(ring: PAdicRing, n: u32, sign: Sign, trunc: usize) -> Result<SeriesElt> {
    check_trunc(&ring, n, trunc)?;
    SeriesElt::new(ring, trunc, omega_pm_poly(&ring, n, sign))
}

/// `Phi_n` as an element of `Lambda_level`.
pub fn cyclo_phi_at(ring: PAdicRing, n: u32, level: u32) -> Result<FiniteLevelElt> {
    if n == 0 {
        return Err(Error::InvalidLevel(0));
    }
    Ok(FiniteLevelElt::from_raw_poly(
        ring,
        level,
        &poly::cyclo_phi(&ring, n),
    ))
}

/// `omega_n^{sign}` as an element of `Lambda_level`.
pub fn omega_pm_at(ring: PAdicRing, n: u32, sign: Sign, level: u32) -> FiniteLevelElt {
    FiniteLevelElt::from_raw_poly(ring, level, &omega_pm_poly(&ring, n, sign))
}

pub(crate) fn fmt_poly(
    f: &mut fmt::Formatter<'_>,
    ring: &PAdicRing,
    coeffs: &[u64],
) -> fmt::Result {
    let mut first = true;
    for (j, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let v = ring.from_residue(c).centered();
        let (sign, mag) = if v < 0 { ("-", -v) } else { ("+", v) };
        if first {
            if sign == "-" {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        match (j, mag) {
            (0, m) => write!(f, "{m}")?,
            (1, 1) => write!(f, "T")?,
            (1, m) => write!(f, "{m}*T")?,
            (j, 1) => write!(f, "T^{j}")?,
            (j, m) => write!(f, "{m}*T^{j}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r3() -> PAdicRing {
        PAdicRing::new(3, 6).unwrap()
    }

    #[test]
    fn omega_examples() {
        let r = r3();
        assert_eq!(
            omega(r, 0, 5).unwrap(),
            SeriesElt::new(r, 5, vec![0, 1]).unwrap()
        );
        assert_eq!(
            omega(r, 1, 5).unwrap(),
            SeriesElt::new(r, 5, vec![0, 3, 3, 1]).unwrap()
        );
        // reduced mod 3 only T^3 survives
        let w = omega(r, 1, 5).unwrap();
        let mod3: Vec<u64> = w.coeffs().iter().map(|c| c % 3).collect();
        assert_eq!(mod3, vec![0, 0, 0, 1, 0, 0]);
        assert!(matches!(
            omega(r, 2, 5),
            Err(Error::TruncationTooSmall {
                trunc: 5,
                needed: 9
            })
        ));
    }

    #[test]
    fn phi_examples() {
        let r = r3();
        assert_eq!(
            cyclo_phi(r, 1, 5).unwrap(),
            SeriesElt::new(r, 5, vec![3, 3, 1]).unwrap()
        );
        assert_eq!(cyclo_phi(r, 0, 5), Err(Error::InvalidLevel(0)));
        for p in [3u64, 5, 7] {
            let r = PAdicRing::new(p, 5).unwrap();
            for n in 1..=3 {
                let phi = poly::cyclo_phi(&r, n);
                let top = (p as usize).pow(n) - (p as usize).pow(n - 1);
                assert_eq!(phi.len(), top + 1);
                assert_eq!(phi[0], p);
                // Phi_n = T^{p^n - p^{n-1}} mod p
                for (j, &c) in phi.iter().enumerate() {
                    assert_eq!(c % p == 0, j != top, "p={p} n={n} j={j}");
                }
            }
        }
    }

    #[test]
    fn omega_pm_examples() {
        let r = PAdicRing::new(5, 6).unwrap();
        let d = 200;
        let one = SeriesElt::one(r, d);
        let phi1 = cyclo_phi(r, 1, d).unwrap();
        let phi2 = cyclo_phi(r, 2, d).unwrap();
        assert_eq!(omega_pm(r, 0, Sign::Plus, d).unwrap(), one);
        assert_eq!(omega_pm(r, 0, Sign::Minus, d).unwrap(), one);
        assert_eq!(omega_pm(r, 1, Sign::Plus, d).unwrap(), one);
        assert_eq!(omega_pm(r, 1, Sign::Minus, d).unwrap(), phi1);
        assert_eq!(omega_pm(r, 2, Sign::Plus, d).unwrap(), phi2);
        assert_eq!(omega_pm(r, 2, Sign::Minus, d).unwrap(), phi1);
    }

    #[test]
    fn omega_factorisations() {
        for p in [3u64, 5] {
            let r = PAdicRing::new(p, 10).unwrap();
            let d = (p as usize).pow(4);
            let t = SeriesElt::monomial(r, d, 1, r.one());
            for n in 1..=4 {
                let lhs = omega(r, n, d).unwrap();
                let rhs = &cyclo_phi(r, n, d).unwrap() * &omega(r, n - 1, d).unwrap();
                assert_eq!(lhs, rhs);
                let plus = omega_pm(r, n, Sign::Plus, d).unwrap();
                let minus = omega_pm(r, n, Sign::Minus, d).unwrap();
                assert_eq!(&(&plus * &minus) * &t, lhs);
            }
        }
    }

    #[test]
    fn display_is_readable() {
        let r = r3();
        let s = SeriesElt::from_signed(r, 3, &[3, -1, 0, 1]).unwrap();
        assert_eq!(s.to_string(), "3 - T + T^3 + O(T^4)");
    }
}
