//! Seeded batch experiments over random theta families, with JSON and CSV
//! reports.
//!
//! Trial `i` draws from ChaCha stream `i` of the configured seed, so every
//! trial is reproducible on its own and reports are byte-identical across
//! runs.

use std::fmt::Write as _;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{make_with_invariants, Invariants};
use crate::padic::{PAdicRing, PAdicScalar};
use crate::theta::{
    build_nonordinary_family, random_ordinary_family, verify_three_term, ThetaFamily,
    ThreeTermReport,
};
use crate::theta::{verify_nonordinary_theorem, verify_ordinary_theorem, FamilyVerdict, LevelRow};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    pub p: u64,
    #[serde(rename = "N")]
    pub precision: u32,
    pub n_max: u32,
    /// Truncation degree of the generated series; defaults to `p^n_max`.
    pub trunc: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Fixed `a_p`. When absent, ordinary runs draw a random unit per trial
    /// and non-ordinary runs use 0.
    pub a_p: Option<i64>,
    /// `mu` of `L_sharp` and `L_flat`; drawn from `0..=2` when absent.
    pub mu: Option<u32>,
    /// `lambda` of `L_sharp` and `L_flat`; each drawn from `0..=3` when
    /// absent.
    pub lambda: Option<u32>,
    /// Negative control: add 1 to one coefficient of `theta_level` in every
    /// family before verification.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturb: Option<Perturbation>,
}

/// Coefficient `T^index` of `theta_level`, written `level:index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Perturbation {
    pub level: u32,
    pub index: usize,
}

impl FromStr for Perturbation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected LEVEL:INDEX, got {s:?}"));
        let (level, index) = s.split_once(':').ok_or_else(bad)?;
        Ok(Self {
            level: level.trim().parse().map_err(|_| bad())?,
            index: index.trim().parse().map_err(|_| bad())?,
        })
    }
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            p: 5,
            precision: 20,
            n_max: 4,
            trunc: None,
            trials: 10,
            seed: 1,
            a_p: None,
            mu: None,
            lambda: None,
            perturb: None,
        }
    }
}

impl ExperimentConfig {
    pub fn ring(&self) -> Result<PAdicRing> {
        PAdicRing::new(self.p, self.precision).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn trunc_or_default(&self) -> usize {
        self.trunc
            .unwrap_or_else(|| (self.p as usize).saturating_pow(self.n_max))
    }

    pub fn validate(&self) -> Result<PAdicRing> {
        let ring = self.ring()?;
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.n_max == 0 {
            return Err(Error::Config("n_max must be at least 1".into()));
        }
        let needed = (self.p as usize)
            .checked_pow(self.n_max)
            .ok_or_else(|| Error::Config(format!("p^{} is too large", self.n_max)))?;
        let trunc = self.trunc_or_default();
        if trunc < needed {
            return Err(Error::Config(format!(
                "truncation {trunc} is below p^n_max = {needed}"
            )));
        }
        let mu = self.mu.unwrap_or(2);
        if self.precision < 2 + mu {
            return Err(Error::Config(format!(
                "precision {} is below 2 + mu = {}",
                self.precision,
                2 + mu
            )));
        }
        if let Some(l) = self.lambda {
            if l as usize >= trunc {
                return Err(Error::Config(format!(
                    "lambda {l} must be below the truncation {trunc}"
                )));
            }
        }
        if let Some(pt) = self.perturb {
            if pt.level > self.n_max
                || pt.index >= needed / (self.p as usize).pow(self.n_max - pt.level)
            {
                return Err(Error::Config(format!(
                    "perturbation {}:{} is outside theta_0..theta_{}",
                    pt.level, pt.index, self.n_max
                )));
            }
        }
        Ok(ring)
    }

    fn apply_perturbation(&self, fam: ThetaFamily) -> ThetaFamily {
        match self.perturb {
            Some(pt) => fam.perturbed(pt.level, pt.index, 1),
            None => fam,
        }
    }

    fn trial_rng(&self, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        rng
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub hypothesis_not_met: usize,
    /// Draws with an element vanishing at the working precision; excluded
    /// from pass and fail.
    pub degenerate: usize,
    pub fail: usize,
}

impl Counts {
    fn record(&mut self, v: &FamilyVerdict) {
        match v {
            FamilyVerdict::Pass => self.pass += 1,
            FamilyVerdict::HypothesisNotMet(_) => self.hypothesis_not_met += 1,
            FamilyVerdict::Degenerate(_) => self.degenerate += 1,
            FamilyVerdict::Fail => self.fail += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    /// `a_p` as a residue.
    pub a_p: String,
    #[serde(flatten)]
    pub verdict: FamilyVerdict,
    pub three_term: ThreeTermReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stable_from: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sharp: Option<Invariants>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flat: Option<Invariants>,
    pub levels: Vec<LevelRow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Ordinary,
    Nonordinary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentReport {
    pub command: Kind,
    pub config: ExperimentConfig,
    pub counts: Counts,
    pub trials: Vec<TrialRecord>,
}

impl ExperimentReport {
    pub fn has_failures(&self) -> bool {
        self.counts.fail > 0
    }

    /// Pretty JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("serializable");
        let mut s = serde_json::to_string_pretty(&value).expect("serializable");
        s.push('\n');
        s
    }

    /// One row per (trial, level).
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("trial,n,parity,mu_theta,lambda_theta,q_n,expected_lambda,verdict\n");
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        for t in &self.trials {
            for r in &t.levels {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    t.trial,
                    r.n,
                    r.parity.as_str(),
                    opt(r.mu_theta.map(u64::from)),
                    opt(r.lambda_theta.map(u64::from)),
                    opt(r.q_n),
                    opt(r.expected_lambda),
                    r.verdict.as_str()
                )
                .expect("write to string");
            }
        }
        out
    }
}

fn random_unit(ring: &PAdicRing, rng: &mut ChaCha8Rng) -> PAdicScalar {
    loop {
        let v = rng.gen_range(0..ring.modulus());
        if v % ring.p() != 0 {
            return ring.from_residue(v);
        }
    }
}

/// Random ordinary families with the ordinary theorem verifier applied.
pub fn run_ordinary(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let ring = cfg.validate()?;
    let fixed = cfg.a_p.map(|a| ring.element(a));
    if let Some(a) = fixed {
        if !a.is_unit() {
            return Err(Error::Config(format!("a_p = {} is not a unit", a.value())));
        }
    }
    let mut counts = Counts::default();
    let mut trials = Vec::with_capacity(cfg.trials);
    for trial in 0..cfg.trials {
        let mut rng = cfg.trial_rng(trial);
        let a_p = fixed.unwrap_or_else(|| random_unit(&ring, &mut rng));
        let fam = cfg.apply_perturbation(random_ordinary_family(a_p, cfg.n_max, &mut rng)?);
        let three_term = verify_three_term(&fam);
        let report = verify_ordinary_theorem(&fam)?;
        let verdict = if three_term.passed() {
            report.verdict
        } else {
            FamilyVerdict::Fail
        };
        counts.record(&verdict);
        trials.push(TrialRecord {
            trial,
            a_p: a_p.value().to_string(),
            verdict,
            three_term,
            stable_from: report.stable_from,
            sharp: None,
            flat: None,
            levels: report.levels,
        });
    }
    Ok(ExperimentReport {
        command: Kind::Ordinary,
        config: cfg.clone(),
        counts,
        trials,
    })
}

/// Families built from random `(L_sharp, L_flat)` with the non-ordinary
/// theorem verifier applied.
pub fn run_nonordinary(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let ring = cfg.validate()?;
    let a_p = ring.element(cfg.a_p.unwrap_or(0));
    if a_p.is_unit() {
        return Err(Error::Config(format!("a_p = {} is a unit", a_p.value())));
    }
    let trunc = cfg.trunc_or_default();
    let mut counts = Counts::default();
    let mut trials = Vec::with_capacity(cfg.trials);
    for trial in 0..cfg.trials {
        let mut rng = cfg.trial_rng(trial);
        let mu = cfg.mu.unwrap_or_else(|| rng.gen_range(0..=2));
        let draw_lambda = |rng: &mut ChaCha8Rng| cfg.lambda.unwrap_or_else(|| rng.gen_range(0..=3));
        let (ls, lf) = (draw_lambda(&mut rng), draw_lambda(&mut rng));
        let sharp = make_with_invariants(ring, trunc, mu, ls, &mut rng)?;
        let flat = make_with_invariants(ring, trunc, mu, lf, &mut rng)?;
        let report = verify_nonordinary_theorem(&sharp, &flat, a_p, cfg.n_max)?;
        let fam = cfg.apply_perturbation(build_nonordinary_family(&sharp, &flat, a_p, cfg.n_max)?);
        let three_term = verify_three_term(&fam);
        let verdict = if three_term.passed() {
            report.verdict
        } else {
            FamilyVerdict::Fail
        };
        counts.record(&verdict);
        trials.push(TrialRecord {
            trial,
            a_p: a_p.value().to_string(),
            verdict,
            three_term,
            stable_from: None,
            sharp: report.sharp,
            flat: report.flat,
            levels: report.levels,
        });
    }
    Ok(ExperimentReport {
        command: Kind::Nonordinary,
        config: cfg.clone(),
        counts,
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonordinary_staircase_table() {
        let cfg = ExperimentConfig {
            n_max: 3,
            trials: 1,
            a_p: Some(0),
            mu: Some(0),
            lambda: Some(1),
            ..Default::default()
        };
        let report = run_nonordinary(&cfg).unwrap();
        let levels = &report.trials[0].levels;
        assert_eq!(levels[1].lambda_theta, Some(1 + 4));
        assert_eq!(levels[2].lambda_theta, Some(1 + 20));
        assert_eq!(report.counts.pass, 1);
    }

    #[test]
    fn config_validation() {
        let bad = |cfg: ExperimentConfig| matches!(cfg.validate(), Err(Error::Config(_)));
        assert!(bad(ExperimentConfig {
            trials: 0,
            ..Default::default()
        }));
        assert!(bad(ExperimentConfig {
            p: 4,
            ..Default::default()
        }));
        assert!(bad(ExperimentConfig {
            trunc: Some(100),
            ..Default::default()
        }));
        assert!(bad(ExperimentConfig {
            precision: 3,
            mu: Some(2),
            ..Default::default()
        }));
        let unit = ExperimentConfig {
            a_p: Some(1),
            ..Default::default()
        };
        assert!(matches!(run_nonordinary(&unit), Err(Error::Config(_))));
        let nonunit = ExperimentConfig {
            a_p: Some(5),
            ..Default::default()
        };
        assert!(matches!(run_ordinary(&nonunit), Err(Error::Config(_))));
    }

    #[test]
    fn perturbed_families_fail() {
        let pt: Perturbation = "2:3".parse().unwrap();
        let cfg = ExperimentConfig {
            trials: 2,
            n_max: 3,
            perturb: Some(pt),
            ..Default::default()
        };
        assert_eq!(run_nonordinary(&cfg).unwrap().counts.fail, 2);
        assert_eq!(run_ordinary(&cfg).unwrap().counts.fail, 2);
        assert!("2".parse::<Perturbation>().is_err());
        let outside = ExperimentConfig {
            perturb: Some("1:5".parse().unwrap()),
            ..Default::default()
        };
        assert!(matches!(outside.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = ExperimentConfig {
            trials: 3,
            n_max: 3,
            ..Default::default()
        };
        let a = run_nonordinary(&cfg).unwrap();
        let b = run_nonordinary(&cfg).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_csv(), b.to_csv());
        assert!(a.to_csv().starts_with("trial,n,parity,"));
    }
}
