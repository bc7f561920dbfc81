//! Synthetic theta families satisfying the three-term relation
//! `pi(theta_{n+1}) = a_p theta_n - xi(theta_{n-1})`, their unit-root
//! stabilizations and the associated p-adic L-functions.

mod verify;

pub use verify::{
    verify_nonordinary_theorem, verify_ordinary_theorem, FamilyVerdict, LevelRow, LevelVerdict,
    NonOrdinaryReport, OrdinaryReport, Parity, Star,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lambda::{poly, FiniteLevelElt, SeriesElt};
use crate::padic::{unit_root, PAdicRing, PAdicScalar};
use crate::sprung::{apply_matrix, h_matrices};

/// How a family was generated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// `theta_n` is the first component of `H_n (L_sharp, L_flat)`.
    SharpFlat { sharp: SeriesElt, flat: SeriesElt },
    /// Ordinary recursion run upward from `theta_0, theta_1`; `seed` is
    /// `None` when every lift was the canonical one.
    OrdinaryRandom { seed: Option<u64> },
}

/// Choice of lift when building an ordinary family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lifts {
    /// The canonical (degree `< p^n`) lift at every step.
    Canonical,
    /// Canonical lift plus `omega_n r(T)` with `r` drawn from a seeded RNG.
    Random { seed: u64 },
}

/// `theta_0, ..., theta_{n_max}` with `theta_n` in `Lambda_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaFamily {
    a_p: PAdicScalar,
    thetas: Vec<FiniteLevelElt>,
    provenance: Provenance,
}

impl ThetaFamily {
    /// Assemble a family from explicit elements. No relation is enforced;
    /// use [`verify_three_term`] to check one.
    pub fn from_parts(
        a_p: PAdicScalar,
        thetas: Vec<FiniteLevelElt>,
        provenance: Provenance,
    ) -> Result<Self> {
        if thetas.len() < 2 {
            return Err(Error::InvalidParameter(
                "a family needs at least two levels".into(),
            ));
        }
        for (n, t) in thetas.iter().enumerate() {
            a_p.ring().check_same(&t.ring())?;
            if t.level() as usize != n {
                return Err(Error::LevelMismatch(n as u32, t.level()));
            }
        }
        Ok(Self {
            a_p,
            thetas,
            provenance,
        })
    }

    pub fn ring(&self) -> PAdicRing {
        self.a_p.ring()
    }

    pub fn a_p(&self) -> PAdicScalar {
        self.a_p
    }

    pub fn n_max(&self) -> u32 {
        (self.thetas.len() - 1) as u32
    }

    pub fn theta(&self, n: u32) -> &FiniteLevelElt {
        &self.thetas[n as usize]
    }

    pub fn thetas(&self) -> &[FiniteLevelElt] {
        &self.thetas
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_ordinary(&self) -> bool {
        self.a_p.is_unit()
    }

    /// Copy with `delta` added to the `T^index` coefficient of `theta_level`.
    pub fn perturbed(&self, level: u32, index: usize, delta: i64) -> Self {
        let mut out = self.clone();
        let ring = self.ring();
        let t = &out.thetas[level as usize];
        let mut coeffs = t.coeffs().to_vec();
        coeffs[index] = ring.add_raw(coeffs[index], ring.element(delta).value());
        out.thetas[level as usize] = FiniteLevelElt::new(ring, level, coeffs).expect("same shape");
        out
    }
}

fn check_n_max(n_max: u32) -> Result<()> {
    if n_max == 0 {
        Err(Error::InvalidLevel(0))
    } else {
        Ok(())
    }
}

/// Family attached to `(L_sharp, L_flat)` for a non-ordinary `a_p`.
///
/// `theta_n` (`n >= 1`) is the first component of `H_n (L_sharp, L_flat)`.
/// `theta_0` is the level-0 element whose norm is minus the second component
/// at `n = 1`; that component is `-Phi_1 L_sharp`, constant in the group
/// basis, so the division is exact.
pub fn build_nonordinary_family(
    sharp: &SeriesElt,
    flat: &SeriesElt,
    a_p: PAdicScalar,
    n_max: u32,
) -> Result<ThetaFamily> {
    check_n_max(n_max)?;
    if a_p.is_unit() {
        return Err(Error::Ordinary(a_p.value()));
    }
    let ring = a_p.ring();
    ring.check_same(&sharp.ring())?;
    ring.check_same(&flat.ring())?;
    if sharp.trunc() != flat.trunc() {
        return Err(Error::TruncationMismatch(sharp.trunc(), flat.trunc()));
    }

    let hs = h_matrices(n_max, a_p)?;
    let mut thetas = Vec::with_capacity(n_max as usize + 1);
    let (first1, second1) = apply_matrix(&hs[0], sharp, flat)?;
    thetas.push(theta0_from_norm(&-&second1)?);
    thetas.push(first1);
    for h in &hs[1..] {
        thetas.push(apply_matrix(h, sharp, flat)?.0);
    }
    Ok(ThetaFamily {
        a_p,
        thetas,
        provenance: Provenance::SharpFlat {
            sharp: sharp.clone(),
            flat: flat.clone(),
        },
    })
}

/// Solve `xi(c) = y` for `c` at level 0, given `y` at level 1.
fn theta0_from_norm(y: &FiniteLevelElt) -> Result<FiniteLevelElt> {
    // xi(c) = c (1 + gamma + ... + gamma^{p-1}): all group coefficients equal
    let group = y.to_group_coeffs();
    let c = group[0];
    if group.iter().any(|g| *g != c) {
        return Err(Error::InvalidParameter(
            "element is not a norm from level 0".into(),
        ));
    }
    Ok(FiniteLevelElt::constant(c, 0))
}

/// Ordinary family grown upward from `theta_0` and `theta_1`:
/// `theta_{n+1}` is a lift of `a_p theta_n - xi(theta_{n-1})`.
pub fn build_ordinary_family(
    theta0: &FiniteLevelElt,
    theta1: &FiniteLevelElt,
    a_p: PAdicScalar,
    n_max: u32,
    lifts: Lifts,
) -> Result<ThetaFamily> {
    check_n_max(n_max)?;
    if !a_p.is_unit() {
        return Err(Error::NonOrdinary(a_p.value()));
    }
    let ring = a_p.ring();
    for (expected, t) in [(0, theta0), (1, theta1)] {
        ring.check_same(&t.ring())?;
        if t.level() != expected {
            return Err(Error::LevelMismatch(expected, t.level()));
        }
    }
    let mut rng = match lifts {
        Lifts::Canonical => None,
        Lifts::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut thetas = vec![theta0.clone(), theta1.clone()];
    for n in 1..n_max {
        let target = &thetas[n as usize].scale(a_p) - &thetas[n as usize - 1].norm_xi();
        let mut next = target.lift_to(n + 1)?;
        if let Some(rng) = rng.as_mut() {
            let dim_hi = (ring.p() as usize).pow(n + 1);
            let dim_lo = (ring.p() as usize).pow(n);
            let r: Vec<u64> = (0..dim_hi - dim_lo)
                .map(|_| rng.gen_range(0..ring.modulus()))
                .collect();
            let ambiguity = poly::mul(&ring, &poly::omega(&ring, n), &r);
            next = &next + &FiniteLevelElt::from_raw_poly(ring, n + 1, &ambiguity);
        }
        thetas.push(next);
    }
    Ok(ThetaFamily {
        a_p,
        thetas,
        provenance: Provenance::OrdinaryRandom {
            seed: match lifts {
                Lifts::Canonical => None,
                Lifts::Random { seed } => Some(seed),
            },
        },
    })
}

/// Ordinary family with uniformly random `theta_0`, `theta_1` and lifts.
pub fn random_ordinary_family<R: Rng + ?Sized>(
    a_p: PAdicScalar,
    n_max: u32,
    rng: &mut R,
) -> Result<ThetaFamily> {
    let ring = a_p.ring();
    let m = ring.modulus();
    let theta0 = FiniteLevelElt::new(ring, 0, vec![rng.gen_range(0..m)])?;
    let theta1 = FiniteLevelElt::new(
        ring,
        1,
        (0..ring.p()).map(|_| rng.gen_range(0..m)).collect(),
    )?;
    build_ordinary_family(
        &theta0,
        &theta1,
        a_p,
        n_max,
        Lifts::Random { seed: rng.gen() },
    )
}

/// Outcome of checking the three-term relation at every admissible level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum ThreeTermReport {
    Pass {
        levels_checked: u32,
    },
    /// The relation fails at level `n` (an identity in `Lambda_n`), first
    /// differing at the coefficient of `T^coefficient`.
    Fail {
        n: u32,
        coefficient: usize,
    },
}

impl ThreeTermReport {
    pub fn passed(&self) -> bool {
        matches!(self, ThreeTermReport::Pass { .. })
    }
}

pub fn verify_three_term(fam: &ThetaFamily) -> ThreeTermReport {
    let mut checked = 0;
    for n in 1..fam.n_max() {
        let lhs = fam.theta(n + 1).project().expect("level >= 2");
        let rhs = &fam.theta(n).scale(fam.a_p()) - &fam.theta(n - 1).norm_xi();
        if let Some(j) = lhs.first_difference(&rhs) {
            return ThreeTermReport::Fail { n, coefficient: j };
        }
        checked += 1;
    }
    ThreeTermReport::Pass {
        levels_checked: checked,
    }
}

/// `alpha^{-(n+1)} (theta_n - alpha^{-1} xi(theta_{n-1}))` for the unit
/// root `alpha` of `X^2 - a_p X + p`.
pub fn stabilize(fam: &ThetaFamily, n: u32) -> Result<FiniteLevelElt> {
    let alpha = unit_root(fam.a_p())?;
    stabilize_with(fam, n, alpha)
}

fn stabilize_with(fam: &ThetaFamily, n: u32, alpha: PAdicScalar) -> Result<FiniteLevelElt> {
    if n == 0 || n > fam.n_max() {
        return Err(Error::InvalidLevel(n));
    }
    let alpha_inv = alpha.invert_unit()?;
    let correction = fam.theta(n - 1).norm_xi().scale(alpha_inv);
    Ok((fam.theta(n) - &correction).scale(alpha_inv.pow(n as u64 + 1)))
}

/// The projection-compatible sequence `L_{f_alpha, n}`, `n = 1..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizedFamily {
    alpha: PAdicScalar,
    elements: Vec<FiniteLevelElt>,
}

impl StabilizedFamily {
    pub fn new(fam: &ThetaFamily) -> Result<Self> {
        let alpha = unit_root(fam.a_p())?;
        let elements = (1..=fam.n_max())
            .map(|n| stabilize_with(fam, n, alpha))
            .collect::<Result<_>>()?;
        Ok(Self { alpha, elements })
    }

    pub fn alpha(&self) -> PAdicScalar {
        self.alpha
    }

    /// The non-unit root `beta = a_p - alpha`.
    pub fn beta(&self, a_p: PAdicScalar) -> PAdicScalar {
        a_p - self.alpha
    }

    /// `L_{f_alpha, n}` for `1 <= n <= n_max`.
    pub fn at(&self, n: u32) -> &FiniteLevelElt {
        &self.elements[n as usize - 1]
    }

    pub fn n_max(&self) -> u32 {
        self.elements.len() as u32
    }

    /// `L_{f_alpha, n} * iota(L_{f_alpha, n})`, the level-`n` image of the
    /// anticyclotomic p-adic L-function.
    pub fn lp_approx(&self, n: u32) -> FiniteLevelElt {
        let s = self.at(n);
        s * &s.involution()
    }
}

/// `stabilize(fam, n) * iota(stabilize(fam, n))`.
pub fn ordinary_lp_approx(fam: &ThetaFamily, n: u32) -> Result<FiniteLevelElt> {
    let s = stabilize(fam, n)?;
    Ok(&s * &s.involution())
}

/// `L * iota(L)`, truncated to the degree of `L`.
pub fn sharp_flat_lp(l: &SeriesElt) -> SeriesElt {
    l * &l.involution()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::cyclo_phi_at;

    #[test]
    fn nonordinary_small_example() {
        let r = PAdicRing::new(3, 10).unwrap();
        let one = SeriesElt::one(r, 27);
        let fam = build_nonordinary_family(&one, &one, r.zero(), 3).unwrap();
        assert_eq!(fam.theta(0), &FiniteLevelElt::one(r, 0));
        assert_eq!(fam.theta(1), &FiniteLevelElt::one(r, 1));
        assert_eq!(fam.theta(2), &-&cyclo_phi_at(r, 1, 2).unwrap());
        assert!(verify_three_term(&fam).passed());
    }

    #[test]
    fn nonordinary_theta0_matches_constant_term() {
        let r = PAdicRing::new(5, 12).unwrap();
        let sharp = SeriesElt::from_signed(r, 30, &[7, 3, -2, 11]).unwrap();
        let flat = SeriesElt::from_signed(r, 30, &[1, 0, 4]).unwrap();
        let fam = build_nonordinary_family(&sharp, &flat, r.element(5), 2).unwrap();
        assert_eq!(fam.theta(0), &sharp.reduce_to_level(0));
    }

    #[test]
    fn zero_inputs_give_zero_families() {
        let r = PAdicRing::new(5, 12).unwrap();
        let z = SeriesElt::zero(r, 30);
        let fam = build_nonordinary_family(&z, &z, r.zero(), 2).unwrap();
        assert!(fam.thetas().iter().all(|t| t.is_zero()));
        assert!(verify_three_term(&fam).passed());

        let ord = build_ordinary_family(
            &FiniteLevelElt::zero(r, 0),
            &FiniteLevelElt::zero(r, 1),
            r.one(),
            3,
            Lifts::Canonical,
        )
        .unwrap();
        assert!(ord.thetas().iter().all(|t| t.is_zero()));
        assert!(stabilize(&ord, 2).unwrap().is_zero());
        assert!(ordinary_lp_approx(&ord, 3).unwrap().is_zero());
    }

    #[test]
    fn wrong_regime_is_rejected() {
        let r = PAdicRing::new(5, 12).unwrap();
        let z = SeriesElt::zero(r, 30);
        assert_eq!(
            build_nonordinary_family(&z, &z, r.one(), 2),
            Err(Error::Ordinary(1))
        );
        let t0 = FiniteLevelElt::zero(r, 0);
        let t1 = FiniteLevelElt::zero(r, 1);
        assert_eq!(
            build_ordinary_family(&t0, &t1, r.element(10), 2, Lifts::Canonical),
            Err(Error::NonOrdinary(10))
        );
        let fam = build_nonordinary_family(&z, &z, r.zero(), 2).unwrap();
        assert!(stabilize(&fam, 1).is_err());
    }

    #[test]
    fn canonical_lifts_project_back() {
        let r = PAdicRing::new(5, 12).unwrap();
        let t0 = FiniteLevelElt::constant(r.element(3), 0);
        let t1 = FiniteLevelElt::from_polynomial(r, 1, &[1, 2, 3, 4, 5]);
        let fam = build_ordinary_family(&t0, &t1, r.element(2), 3, Lifts::Canonical).unwrap();
        assert!(verify_three_term(&fam).passed());
        assert_eq!(fam.provenance(), &Provenance::OrdinaryRandom { seed: None });
    }

    #[test]
    fn perturbation_is_detected() {
        let r = PAdicRing::new(5, 12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let fam = random_ordinary_family(r.element(3), 3, &mut rng).unwrap();
        assert!(verify_three_term(&fam).passed());
        let bad = fam.perturbed(2, 4, 1);
        assert_eq!(
            verify_three_term(&bad),
            ThreeTermReport::Fail {
                n: 1,
                coefficient: 4
            }
        );
    }

    #[test]
    fn stabilization_is_norm_compatible() {
        let r = PAdicRing::new(5, 12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let fam = random_ordinary_family(r.element(7), 4, &mut rng).unwrap();
        let st = StabilizedFamily::new(&fam).unwrap();
        for n in 1..4 {
            assert_eq!(&st.at(n + 1).project().unwrap(), st.at(n));
            assert_eq!(
                ordinary_lp_approx(&fam, n + 1).unwrap().project().unwrap(),
                ordinary_lp_approx(&fam, n).unwrap()
            );
            assert_eq!(st.lp_approx(n), ordinary_lp_approx(&fam, n).unwrap());
        }
        let beta = st.beta(fam.a_p());
        assert_eq!(st.alpha() * beta, r.element(5));
    }

    #[test]
    fn sharp_flat_lp_examples() {
        let r = PAdicRing::new(5, 12).unwrap();
        let one = SeriesElt::one(r, 20);
        assert_eq!(sharp_flat_lp(&one), one);
        let t = SeriesElt::monomial(r, 20, 1, r.one());
        let lp = sharp_flat_lp(&t);
        // T * (-T + T^2 - ...) = -T^2 + T^3 - ...
        assert_eq!(lp.coeff(0), r.zero());
        assert_eq!(lp.coeff(1), r.zero());
        assert_eq!(lp.coeff(2), r.element(-1));
        assert_eq!(lp.coeff(3), r.one());
        assert_eq!(lp.invariants().unwrap().lambda(), Some(2));
        assert_eq!(lp.invariants().unwrap().mu(), Some(0));
    }
}
