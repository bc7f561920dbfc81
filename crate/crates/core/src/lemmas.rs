//! Randomized checks of the structural properties of `Lambda_n` and of the
//! finite-level invariant calculus.
//!
//! Each property draws its own ChaCha stream from the suite seed, so the
//! outcome of one property does not depend on which others ran.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{
    invariants, invariants_series, make_level_with_invariants, make_with_invariants, mu,
    mu_group_basis, q, InvariantResult, Invariants,
};
use crate::lambda::{cyclo_phi, cyclo_phi_at, omega, omega_pm, FiniteLevelElt, SeriesElt, Sign};
use crate::padic::PAdicRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub p: u64,
    pub precision: u32,
    /// Highest level at which random elements are drawn.
    pub max_level: u32,
    pub trials: usize,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn new(p: u64, precision: u32, trials: usize, seed: u64) -> Self {
        Self {
            p,
            precision,
            max_level: 3,
            trials,
            seed,
        }
    }
}

/// Tally for one property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyOutcome {
    pub name: String,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    /// Trials where the hypothesis of the property did not hold.
    pub skipped: usize,
    /// Trials in which a guarded clause (one with a side condition) was
    /// actually exercised.
    pub guarded_checks: usize,
    pub first_failure: Option<String>,
}

impl PropertyOutcome {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub p: u64,
    #[serde(rename = "N")]
    pub precision: u32,
    pub trials: usize,
    pub seed: u64,
    pub all_passed: bool,
    pub properties: Vec<PropertyOutcome>,
}

enum Trial {
    Pass,
    PassGuarded,
    Skip,
    Fail(String),
}

type TrialFn = fn(&Ctx, &mut ChaCha8Rng) -> Trial;

struct Ctx {
    ring: PAdicRing,
    max_level: u32,
}

impl Ctx {
    fn dim(&self, level: u32) -> usize {
        (self.ring.p() as usize).pow(level)
    }

    fn level<R: Rng>(&self, rng: &mut R, lo: u32) -> u32 {
        rng.gen_range(lo..=self.max_level)
    }

    /// Mostly elements with prescribed small invariants, sometimes uniform.
    fn element<R: Rng>(&self, level: u32, rng: &mut R) -> FiniteLevelElt {
        let dim = self.dim(level);
        if rng.gen_ratio(1, 5) {
            let m = self.ring.modulus();
            return FiniteLevelElt::new(
                self.ring,
                level,
                (0..dim).map(|_| rng.gen_range(0..m)).collect(),
            )
            .expect("shape");
        }
        let mu = rng.gen_range(0..=3.min(self.ring.precision() - 1));
        let lambda = if rng.gen_bool(0.5) {
            rng.gen_range(0..dim)
        } else {
            rng.gen_range(0..dim.min(self.ring.p() as usize))
        };
        make_level_with_invariants(self.ring, level, mu, lambda as u32, rng).expect("in range")
    }

    fn unit_element<R: Rng>(&self, level: u32, rng: &mut R) -> FiniteLevelElt {
        let dim = self.dim(level);
        let lambda = rng.gen_range(0..dim) as u32;
        make_level_with_invariants(self.ring, level, 0, lambda, rng).expect("in range")
    }

    fn trunc(&self) -> usize {
        self.dim(self.max_level)
    }
}

fn mu_or_n(x: &FiniteLevelElt) -> u32 {
    mu(x).unwrap_or(x.ring().precision())
}

fn fail(msg: String) -> Trial {
    Trial::Fail(msg)
}

fn basis_invariance(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Trial {
    let x = ctx.element(ctx.level(rng, 0), rng);
    if mu(&x) == mu_group_basis(&x) {
        Trial::Pass
    } else {
        fail(format!("group and polynomial mu differ for {x:?}"))
    }
}

fn lemma_product(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Trial {
    let n = ctx.level(rng, 1);
    let (f, g) = if rng.gen_bool(0.5) {
        (ctx.unit_element(n, rng), ctx.unit_element(n, rng))
    } else {
        (ctx.element(n, rng), ctx.element(n, rng))
    };
    let fg = &f * &g;
    if mu_or_n(&fg) < (mu_or_n(&f) + mu_or_n(&g)).min(ctx.ring.precision()) {
        return fail(format!("mu(fg) < mu(f) + mu(g) at level {n}"));
    }
    match (invariants(&f), invariants(&g), invariants(&fg)) {
        (
            InvariantResult::Finite(a),
            InvariantResult::Finite(b),
            InvariantResult::Finite(Invariants { mu: 0, lambda }),
        ) if ((a.lambda + b.lambda) as usize) < ctx.dim(n) => {
            if lambda == a.lambda + b.lambda {
                Trial::PassGuarded
            } else {
                fail(format!(
                    "lambda(fg) = {lambda} != {} + {} at level {n}",
                    a.lambda, b.lambda
                ))
            }
        }
        _ => Trial::Pass,
    }
}

fn lemma_projection_of_norm(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Trial {
    let x = ctx.element(ctx.level(rng, 0), rng);
    let lhs = x.norm_xi().project().expect("level >= 1");
    if lhs == x.scale(ctx.ring.from_residue(ctx.ring.p())) {
        Trial::Pass
    } else {
        fail(format!("pi(xi(x)) != p x at level {}", x.level()))
    }
}

fn lemma_norm_of_projection(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Trial {
    let n = ctx.level(rng, 1);
    let g = ctx.element(n, rng);
    let lhs = g.project().expect("level >= 1").norm_xi();
    let rhs = &cyclo_phi_at(ctx.ring, n, n).expect("n >= 1") * &g;
    if lhs == rhs {
        Trial::Pass
    } else {
        fail(format!("xi(pi(g)) != Phi_n g at level {n}"))
    }
}

fn lemma_phi_invariants(ctx: &Ctx, _rng: &mut ChaCha8Rng) -> Trial {
    let p = ctx.ring.p() as u32;
    for n in 1..=ctx.max_level + 1 {
        let phi = cyclo_phi_at(ctx.ring, n, n).expect("n >= 1");
        let expected = Invariants {
            mu: 0,
            lambda: p.pow(n) - p.pow(n - 1),
        };
        if invariants(&phi).finite() != Some(expected) {
            return fail(format!("invariants of Phi_{n} are {}", invariants(&phi)));
        }
    }
    Trial::Pass
}

fn lemma_reduction(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Trial {
    let d = ctx.trunc();
    let mu = rng.gen_range(0..=3);
    let lambda = rng.gen_range(0..d.min(2 * ctx.ring.p() as usize + 3)) as u32;
    let p_series = make_with_invariants(ctx.ring, d, mu, lambda, rng).expect("in range");
    let mut checked = false;
    for n in 0..=ctx.max_level {
        if ctx.dim(n) <= lambda as usize {
            continue;
        }
        checked = true;
        let got = invariants(&p_series.reduce_to_level(n)).finite();
        if got != Some(Invariants { mu, lambda }) {
            return fail(format!("level {n}: {got:?} vs ({mu}, {lambda})"));
        }
    }
    if checked {
        Trial::PassGuarded
    } else {
        Trial::Skip
    }
}

fn lemma_congruent_polynomial(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Trial {
    let d = ctx.trunc();
    let n = ctx.level(rng, 0);
    let dim = ctx.dim(n);
    let lambda = rng.gen_range(0..dim) as u32;
    let p_series = make_with_invariants(ctx.ring, d, 0, lambda, rng).expect("in range");
    let base = p_series.reduce_to_level(n);
    let m = ctx.ring.modulus();
    let noise: Vec<u64> = (0..dim)
        .map(|_| ctx.ring.mul_raw(ctx.ring.p(), rng.gen_range(0..m)))
        .collect();
    let q_poly = &base + &FiniteLevelElt::new(ctx.ring, n, noise).expect("shape");
    let q_series =
        SeriesElt::new(ctx.ring, d, q_poly.coeffs().to_vec()).expect("degree < p^n <= D");
    let lhs = invariants_series(&p_series);
    let rhs = invariants_series(&q_series);
    if lhs == rhs {
        Trial::PassGuarded
    } else {
        fail(format!("level {n}: {lhs:?} vs {rhs:?}"))
    }
}

fn lemma_norm_invariants(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Trial {
    let n = ctx.level(rng, 0);
    let theta = ctx.element(n, rng);
    let InvariantResult::Finite(t) = invariants(&theta) else {
        return Trial::Skip;
    };
    let xi = theta.norm_xi();
    let p = ctx.ring.p() as u32;
    let expected = Invariants {
        mu: t.mu,
        lambda: p.pow(n + 1) - p.pow(n) + t.lambda,
    };
    match invariants(&xi).finite() {
        Some(i) if i == expected => Trial::Pass,
        got => fail(format!("level {n}: xi has {got:?}, expected {expected:?}")),
    }
}

fn lemma_projection_invariants(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Trial {
    let n = ctx.level(rng, 1);
    let theta = ctx.element(n, rng);
    let proj = theta.project().expect("level >= 1");
    let (it, ip) = (invariants(&theta), invariants(&proj));
    if ip.mu() == Some(0) && it.mu() != Some(0) {
        return fail(format!("mu(pi(theta)) = 0 but mu(theta) = {:?}", it.mu()));
    }
    match (it, ip) {
        (InvariantResult::Finite(a), InvariantResult::Finite(b))
            if a.mu == b.mu && (a.lambda as usize) < ctx.dim(n - 1) =>
        {
            if a.lambda == b.lambda {
                Trial::PassGuarded
            } else {
                fail(format!(
                    "level {n}: lambda {} vs projected {}",
                    a.lambda, b.lambda
                ))
            }
        }
        _ => Trial::Pass,
    }
}

fn lemma_omega_pm(ctx: &Ctx, _rng: &mut ChaCha8Rng) -> Trial {
    let p = ctx.ring.p();
    let top = if p.pow(5) <= 5000 { 5 } else { 4 };
    let d = p.pow(top) as usize;
    for n in 1..=top {
        for sign in [Sign::Plus, Sign::Minus] {
            let w = omega_pm(ctx.ring, n, sign, d).expect("trunc");
            match invariants_series(&w) {
                Ok(InvariantResult::Finite(i)) if i.mu == 0 => {}
                other => return fail(format!("omega_{n}^{sign:?}: {other:?}")),
            }
        }
        let eps = Sign::of_parity(n + 1);
        let w = omega_pm(ctx.ring, n, eps, d).expect("trunc");
        let lambda = invariants_series(&w).ok().and_then(|r| r.lambda());
        if lambda.map(u64::from) != Some(q(p, n)) {
            return fail(format!(
                "lambda(omega_{n}^eps) = {lambda:?}, q_n = {}",
                q(p, n)
            ));
        }
    }
    Trial::Pass
}

fn remark_involution(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Trial {
    let d = ctx.trunc();
    let mu = rng.gen_range(0..=3);
    let lambda = rng.gen_range(0..d / 2) as u32;
    let s = make_with_invariants(ctx.ring, d, mu, lambda, rng).expect("in range");
    let a = invariants_series(&s);
    let b = invariants_series(&s.involution());
    if a == b {
        Trial::Pass
    } else {
        fail(format!("{a:?} vs {b:?}"))
    }
}

fn omega_factorisation(ctx: &Ctx, _rng: &mut ChaCha8Rng) -> Trial {
    let d = ctx.dim(ctx.max_level + 1);
    let t = SeriesElt::monomial(ctx.ring, d, 1, ctx.ring.one());
    for n in 1..=ctx.max_level + 1 {
        let w = omega(ctx.ring, n, d).expect("trunc");
        let prev = omega(ctx.ring, n - 1, d).expect("trunc");
        if w != &cyclo_phi(ctx.ring, n, d).expect("trunc") * &prev {
            return fail(format!("omega_{n} != Phi_{n} omega_{}", n - 1));
        }
        let plus = omega_pm(ctx.ring, n, Sign::Plus, d).expect("trunc");
        let minus = omega_pm(ctx.ring, n, Sign::Minus, d).expect("trunc");
        if w != &(&plus * &minus) * &t {
            return fail(format!("omega_{n}^+ omega_{n}^- T != omega_{n}"));
        }
    }
    Trial::Pass
}

fn involution_automorphism(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Trial {
    let n = ctx.level(rng, 0);
    let x = ctx.element(n, rng);
    let y = ctx.element(n, rng);
    let (ix, iy) = (x.involution(), y.involution());
    if (&x * &y).involution() != &ix * &iy {
        return fail(format!("iota not multiplicative at level {n}"));
    }
    if (&x + &y).involution() != &ix + &iy {
        return fail(format!("iota not additive at level {n}"));
    }
    if ix.involution() != x {
        return fail(format!("iota not an involution at level {n}"));
    }
    Trial::Pass
}

fn reduction_multiplicative(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Trial {
    let d = ctx.trunc();
    let m = ctx.ring.modulus();
    let half = d / 2;
    let mut draw = || {
        let v: Vec<u64> = (0..=half).map(|_| rng.gen_range(0..m)).collect();
        SeriesElt::new(ctx.ring, d, v).expect("shape")
    };
    let (a, b) = (draw(), draw());
    let n = rng.gen_range(0..=ctx.max_level);
    if (&a * &b).reduce_to_level(n) != &a.reduce_to_level(n) * &b.reduce_to_level(n) {
        return fail(format!("reduction not multiplicative at level {n}"));
    }
    if (&a + &b).reduce_to_level(n) != &a.reduce_to_level(n) + &b.reduce_to_level(n) {
        return fail(format!("reduction not additive at level {n}"));
    }
    Trial::Pass
}

/// `(name, check, deterministic)`; deterministic checks run once.
const PROPERTIES: &[(&str, TrialFn, bool)] = &[
    ("basis-invariance-of-mu", basis_invariance, false),
    ("product-invariants", lemma_product, false),
    ("projection-of-norm-is-p", lemma_projection_of_norm, false),
    ("norm-of-projection-is-phi", lemma_norm_of_projection, false),
    ("phi-invariants", lemma_phi_invariants, true),
    ("reduction-preserves-invariants", lemma_reduction, false),
    (
        "congruent-polynomial-invariants",
        lemma_congruent_polynomial,
        false,
    ),
    ("norm-shifts-lambda", lemma_norm_invariants, false),
    ("projection-invariants", lemma_projection_invariants, false),
    ("omega-pm-invariants", lemma_omega_pm, true),
    ("involution-preserves-invariants", remark_involution, false),
    ("omega-factorisation", omega_factorisation, true),
    ("involution-is-automorphism", involution_automorphism, false),
    ("reduction-is-ring-map", reduction_multiplicative, false),
];

/// Names of every property in the suite, in execution order.
pub fn property_names() -> Vec<&'static str> {
    PROPERTIES.iter().map(|(n, _, _)| *n).collect()
}

pub fn run_property(name: &str, cfg: &SuiteConfig) -> Result<PropertyOutcome> {
    let (idx, (name, check, once)) = PROPERTIES
        .iter()
        .enumerate()
        .find(|(_, (n, _, _))| *n == name)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown property {name}")))?;
    let ring = PAdicRing::new(cfg.p, cfg.precision)?;
    if cfg.trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    let ctx = Ctx {
        ring,
        max_level: cfg.max_level.max(1),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(idx as u64);
    let trials = if *once { 1 } else { cfg.trials };
    let mut out = PropertyOutcome {
        name: name.to_string(),
        trials,
        passed: 0,
        failed: 0,
        skipped: 0,
        guarded_checks: 0,
        first_failure: None,
    };
    for _ in 0..trials {
        match check(&ctx, &mut rng) {
            Trial::Pass => out.passed += 1,
            Trial::PassGuarded => {
                out.passed += 1;
                out.guarded_checks += 1;
            }
            Trial::Skip => out.skipped += 1,
            Trial::Fail(msg) => {
                out.failed += 1;
                out.first_failure.get_or_insert(msg);
            }
        }
    }
    Ok(out)
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let properties = PROPERTIES
        .iter()
        .map(|(name, _, _)| run_property(name, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport {
        p: cfg.p,
        precision: cfg.precision,
        trials: cfg.trials,
        seed: cfg.seed,
        all_passed: properties.iter().all(PropertyOutcome::ok),
        properties,
    })
}
