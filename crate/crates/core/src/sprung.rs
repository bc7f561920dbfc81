//! Logarithm matrices for the sharp/flat decomposition.
//!
//! `C_n = [[a_p, 1], [-Phi_n, 0]]`, `B = [[a_p, 1], [-p, 0]]` and the
//! ordered products `H_n = C_n C_{n-1} ... C_1`, all taken in `Lambda_n`.
//! Only the integral products are modelled; inverting `B` would introduce
//! denominators.

use std::fmt;

use crate::error::{Error, Result};
use crate::lambda::{cyclo_phi_at, omega_pm_at, FiniteLevelElt, SeriesElt, Sign};
use crate::padic::{PAdicRing, PAdicScalar};

/// A 2x2 matrix over `Lambda_n`, entries in row-major order.
#[derive(Clone, PartialEq, Eq)]
pub struct LambdaMatrix2x2 {
    entries: [FiniteLevelElt; 4],
}

impl LambdaMatrix2x2 {
    pub fn new(
        a: FiniteLevelElt,
        b: FiniteLevelElt,
        c: FiniteLevelElt,
        d: FiniteLevelElt,
    ) -> Result<Self> {
        for e in [&b, &c, &d] {
            a.ring().check_same(&e.ring())?;
            if e.level() != a.level() {
                return Err(Error::LevelMismatch(a.level(), e.level()));
            }
        }
        Ok(Self {
            entries: [a, b, c, d],
        })
    }

    pub fn identity(ring: PAdicRing, level: u32) -> Self {
        let one = FiniteLevelElt::one(ring, level);
        let zero = FiniteLevelElt::zero(ring, level);
        Self {
            entries: [one.clone(), zero.clone(), zero, one],
        }
    }

    pub fn level(&self) -> u32 {
        self.entries[0].level()
    }

    /// Entry at `(row, col)`, both in `0..2`.
    pub fn entry(&self, row: usize, col: usize) -> &FiniteLevelElt {
        &self.entries[2 * row + col]
    }

    pub fn entries(&self) -> &[FiniteLevelElt; 4] {
        &self.entries
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &rhs.entries;
        let combine =
            |x: &FiniteLevelElt, y: &FiniteLevelElt, z: &FiniteLevelElt, w: &FiniteLevelElt| {
                x.checked_mul(y)?.checked_add(&z.checked_mul(w)?)
            };
        Self::new(
            combine(a, e, b, g)?,
            combine(a, f, b, h)?,
            combine(c, e, d, g)?,
            combine(c, f, d, h)?,
        )
    }

    pub fn apply(
        &self,
        x: &FiniteLevelElt,
        y: &FiniteLevelElt,
    ) -> Result<(FiniteLevelElt, FiniteLevelElt)> {
        let [a, b, c, d] = &self.entries;
        Ok((
            a.checked_mul(x)?.checked_add(&b.checked_mul(y)?)?,
            c.checked_mul(x)?.checked_add(&d.checked_mul(y)?)?,
        ))
    }

    pub fn determinant(&self) -> FiniteLevelElt {
        let [a, b, c, d] = &self.entries;
        &(a * d) - &(b * c)
    }

    pub fn scale(&self, s: PAdicScalar) -> Self {
        Self {
            entries: self.entries.clone().map(|e| e.scale(s)),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            entries: self.entries.clone().map(|e| -&e),
        }
    }

    pub fn project_to(&self, level: u32) -> Result<Self> {
        let [a, b, c, d] = &self.entries;
        Self::new(
            a.project_to(level)?,
            b.project_to(level)?,
            c.project_to(level)?,
            d.project_to(level)?,
        )
    }

    /// Entrywise canonical lift.
    pub fn lift_to(&self, level: u32) -> Result<Self> {
        let [a, b, c, d] = &self.entries;
        Self::new(
            a.lift_to(level)?,
            b.lift_to(level)?,
            c.lift_to(level)?,
            d.lift_to(level)?,
        )
    }

    /// Entrywise congruence modulo `p^k`.
    pub fn congruent_mod_p_power(&self, other: &Self, k: u32) -> bool {
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(x, y)| x.congruent_mod_p_power(y, k))
    }
}

impl fmt::Debug for LambdaMatrix2x2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LambdaMatrix2x2")
            .field("level", &self.level())
            .field("entries", &self.entries)
            .finish()
    }
}

impl fmt::Display for LambdaMatrix2x2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

fn check_level(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidLevel(0))
    } else {
        Ok(())
    }
}

/// `C_n = [[a_p, 1], [-Phi_n, 0]]` in `Lambda_level` (`level >= n` keeps
/// `Phi_n` unreduced).
pub fn c_matrix_at(n: u32, a_p: PAdicScalar, level: u32) -> Result<LambdaMatrix2x2> {
    check_level(n)?;
    let ring = a_p.ring();
    LambdaMatrix2x2::new(
        FiniteLevelElt::constant(a_p, level),
        FiniteLevelElt::one(ring, level),
        -&cyclo_phi_at(ring, n, level)?,
        FiniteLevelElt::zero(ring, level),
    )
}

/// `C_n` at its own level `n`.
pub fn c_matrix(n: u32, a_p: PAdicScalar) -> Result<LambdaMatrix2x2> {
    c_matrix_at(n, a_p, n)
}

/// `B = [[a_p, 1], [-p, 0]]` in `Lambda_level`.
pub fn b_matrix(a_p: PAdicScalar, level: u32) -> LambdaMatrix2x2 {
    let ring = a_p.ring();
    LambdaMatrix2x2 {
        entries: [
            FiniteLevelElt::constant(a_p, level),
            FiniteLevelElt::one(ring, level),
            FiniteLevelElt::constant(-ring.from_residue(ring.p()), level),
            FiniteLevelElt::zero(ring, level),
        ],
    }
}

/// `H_n = C_n C_{n-1} ... C_1` modulo `omega_n`.
pub fn h_matrix(n: u32, a_p: PAdicScalar) -> Result<LambdaMatrix2x2> {
    check_level(n)?;
    let mut acc = LambdaMatrix2x2::identity(a_p.ring(), n);
    for j in 1..=n {
        acc = c_matrix_at(j, a_p, n)?.mul(&acc)?;
    }
    Ok(acc)
}

/// All of `H_1, ..., H_{n_max}`, built by the recursion
/// `H_{n+1} = C_{n+1} lift(H_n)`.
pub fn h_matrices(n_max: u32, a_p: PAdicScalar) -> Result<Vec<LambdaMatrix2x2>> {
    check_level(n_max)?;
    let mut out = vec![c_matrix(1, a_p)?];
    for n in 2..=n_max {
        let prev = out.last().expect("nonempty").lift_to(n)?;
        out.push(c_matrix(n, a_p)?.mul(&prev)?);
    }
    Ok(out)
}

/// The closed form of `H_n` when `a_p = 0`:
/// `(-1)^{n/2} diag(omega_n^-, omega_n^+)` for even `n` and
/// `(-1)^{(n-1)/2} [[0, omega_n^+], [-omega_n^-, 0]]` for odd `n`.
pub fn h_matrix_closed_form(ring: PAdicRing, n: u32) -> Result<LambdaMatrix2x2> {
    check_level(n)?;
    let plus = omega_pm_at(ring, n, Sign::Plus, n);
    let minus = omega_pm_at(ring, n, Sign::Minus, n);
    let zero = FiniteLevelElt::zero(ring, n);
    let (m, half) = if n.is_multiple_of(2) {
        (
            LambdaMatrix2x2::new(minus, zero.clone(), zero, plus)?,
            n / 2,
        )
    } else {
        (
            LambdaMatrix2x2::new(zero.clone(), plus, -&minus, zero)?,
            (n - 1) / 2,
        )
    };
    Ok(if half % 2 == 0 { m } else { m.neg() })
}

/// `H_n (L_sharp, L_flat)^T` in `Lambda_n^2`.
pub fn apply_h(
    n: u32,
    a_p: PAdicScalar,
    sharp: &SeriesElt,
    flat: &SeriesElt,
) -> Result<(FiniteLevelElt, FiniteLevelElt)> {
    let h = h_matrix(n, a_p)?;
    apply_matrix(&h, sharp, flat)
}

pub(crate) fn apply_matrix(
    h: &LambdaMatrix2x2,
    sharp: &SeriesElt,
    flat: &SeriesElt,
) -> Result<(FiniteLevelElt, FiniteLevelElt)> {
    let n = h.level();
    h.apply(&sharp.reduce_to_level(n), &flat.reduce_to_level(n))
}
