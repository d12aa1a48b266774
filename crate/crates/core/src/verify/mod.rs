//! Checks of the individual inequalities on computed zeros and prime sums.
//!
//! Each check returns [`CheckReport`]s carrying both sides, the direction,
//! the signed margin and the parameters that produced them. [`run_suite`]
//! runs a named group of checks at the configured grid.

pub mod detector;
pub mod invariants;
pub mod report;
pub mod sieve;
pub mod zerosums;

use std::collections::BTreeMap;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use detector::{detector_series_identity_check, detector_window_check, detector_window_sum};
pub use invariants::{
    harmonic_check, harmonic_lower_bound_check, prime_sum_check, rademacher_check,
};
pub use report::{summary_table, CheckReport, Relation};
pub use sieve::{largesieve_smoothing_check, selberg_smoothed_sum_check};
pub use zerosums::{
    circle_lemma_check, density_theorem_check, explicit_formula_residual,
    hadamard_derivative_check, repulsion_sums_check,
};

use crate::arith::{gcd, primes_up_to};
use crate::config::KeyValues;
use crate::dirichlet::{enumerate_characters, primitive_characters, DirichletCharacter, ZeroBank};
use crate::error::{Error, Result};
use crate::kernels::WeightParams;

/// The budget fixture shipped with the crate.
pub const DEFAULT_BUDGETS: &str = include_str!("../../fixtures/budgets.conf");

/// Implied constants placed on the right-hand sides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Budgets {
    pub density_leading_constant: f64,
    pub selberg_error_budget: f64,
    pub convexity_implied_constant: f64,
    pub rademacher_constant: f64,
    pub harmonic_error_constant: f64,
    pub prime_sum_ratio: f64,
}

impl Default for Budgets {
    fn default() -> Self {
        let kv = KeyValues::parse(DEFAULT_BUDGETS).expect("budget fixture parses");
        Self::from_config(&kv).expect("budget fixture is complete")
    }
}

impl Budgets {
    /// Reads every key; all are required.
    pub fn from_config(kv: &KeyValues) -> Result<Self> {
        let get = |k: &str| -> Result<f64> {
            kv.get_parsed::<f64>(k)?
                .ok_or_else(|| Error::Parse(format!("missing budget {k}")))
        };
        Ok(Self {
            density_leading_constant: get("density_leading_constant")?,
            selberg_error_budget: get("selberg_error_budget")?,
            convexity_implied_constant: get("convexity_implied_constant")?,
            rademacher_constant: get("rademacher_constant")?,
            harmonic_error_constant: get("harmonic_error_constant")?,
            prime_sum_ratio: get("prime_sum_ratio")?,
        })
    }

    /// The defaults with any keys present in `kv` replaced.
    pub fn overridden(kv: &KeyValues) -> Result<Self> {
        let mut base = KeyValues::parse(DEFAULT_BUDGETS)?;
        base.merge(kv);
        Self::from_config(&base)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Circle,
    Explicit,
    Hadamard,
    Repulsion,
    Density,
    Largesieve,
    Selberg,
    Detector,
    Invariants,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Circle,
        Suite::Explicit,
        Suite::Hadamard,
        Suite::Repulsion,
        Suite::Density,
        Suite::Largesieve,
        Suite::Selberg,
        Suite::Detector,
        Suite::Invariants,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Circle => "circle",
            Suite::Explicit => "explicit",
            Suite::Hadamard => "hadamard",
            Suite::Repulsion => "repulsion",
            Suite::Density => "density",
            Suite::Largesieve => "largesieve",
            Suite::Selberg => "selberg",
            Suite::Detector => "detector",
            Suite::Invariants => "invariants",
        }
    }

    /// Whether the suite reads zero data.
    pub fn needs_zeros(self) -> bool {
        matches!(
            self,
            Suite::Circle | Suite::Explicit | Suite::Hadamard | Suite::Repulsion | Suite::Density
        )
    }

    /// Parses a comma-separated list; `all` selects every suite.
    pub fn parse_list(text: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Suite::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        if out.is_empty() {
            return Err(Error::Parse("empty suite list".into()));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Grid and budgets for [`run_suite`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub q_max: u64,
    /// Height of the zero sums and counts; the zero data must reach one more.
    pub height: f64,
    pub samples: usize,
    pub k: u32,
    pub seed: u64,
    pub density_sigmas: Vec<f64>,
    pub repulsion_sigmas: Vec<f64>,
    pub budgets: Budgets,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            q_max: 20,
            height: 50.0,
            samples: 1000,
            k: 2,
            seed: 1,
            density_sigmas: vec![0.5, 0.6, 0.75, 0.9, 0.999],
            repulsion_sigmas: vec![2.0, 3.0, 5.0, 19.0],
            budgets: Budgets::default(),
        }
    }
}

impl SuiteConfig {
    /// Height the zero data must be complete to.
    pub fn zero_height(&self) -> f64 {
        self.height + 1.0
    }
}

fn primitive_upto(q_max: u64) -> Result<Vec<DirichletCharacter>> {
    let mut out = Vec::new();
    for q in 1..=q_max {
        out.extend(primitive_characters(q)?);
    }
    Ok(out)
}

/// Runs one suite. Reports are sorted by name.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig, bank: &ZeroBank) -> Result<Vec<CheckReport>> {
    let b = &cfg.budgets;
    let mut out = match suite {
        Suite::Circle => circle_lemma_check(
            bank,
            cfg.q_max,
            cfg.height,
            cfg.samples,
            b.convexity_implied_constant,
            cfg.seed,
        )?,
        Suite::Explicit => {
            let mut v = Vec::new();
            for chi in primitive_upto(cfg.q_max)? {
                for s in [
                    Complex64::new(2.0, 0.0),
                    Complex64::new(3.0, 0.0),
                    Complex64::new(2.0, 5.0),
                ] {
                    v.push(explicit_formula_residual(bank, &chi, s, cfg.height)?);
                }
            }
            v
        }
        Suite::Hadamard => {
            let tol = if cfg.k == 2 { 1e-4 } else { 1e-5 };
            let mut v = Vec::new();
            for chi in primitive_upto(cfg.q_max)? {
                for s in [
                    Complex64::new(1.5, 0.0),
                    Complex64::new(2.0, 0.0),
                    Complex64::new(1.5, 10.0),
                ] {
                    v.push(hadamard_derivative_check(
                        bank, &chi, cfg.k, s, cfg.height, tol,
                    )?);
                }
            }
            v
        }
        Suite::Repulsion => {
            repulsion_sums_check(bank, cfg.q_max, &cfg.repulsion_sigmas, cfg.height)?
        }
        Suite::Density => density_theorem_check(
            bank,
            cfg.q_max,
            cfg.height,
            &cfg.density_sigmas,
            b.density_leading_constant,
        )?,
        Suite::Largesieve => largesieve_suite(cfg.seed)?,
        Suite::Selberg => selberg_suite(b.selberg_error_budget)?,
        Suite::Detector => detector_suite()?,
        Suite::Invariants => {
            let mut v = rademacher_check(cfg.q_max, cfg.height, b.rademacher_constant)?;
            v.extend(prime_sum_check(b.prime_sum_ratio, 8)?);
            v.extend(harmonic_check(b.harmonic_error_constant, 7)?);
            v.extend(harmonic_lower_bound_check(7)?);
            v
        }
    };
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

/// Runs several suites, concatenated in suite order.
pub fn run_suites(
    suites: &[Suite],
    cfg: &SuiteConfig,
    bank: &ZeroBank,
) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for &s in suites {
        out.extend(run_suite(s, cfg, bank)?);
    }
    Ok(out)
}

fn largesieve_suite(seed: u64) -> Result<Vec<CheckReport>> {
    let window = |lo: u64, hi: u64, q: u64| {
        primes_up_to(hi)
            .into_iter()
            .filter(move |&p| p > lo && gcd(p, q) == 1)
    };
    let mut out = Vec::new();
    let reciprocal: BTreeMap<u64, Complex64> = window(100, 200, 5)
        .map(|p| (p, Complex64::new(1.0 / p as f64, 0.0)))
        .collect();
    out.extend(largesieve_smoothing_check(
        5,
        2.0,
        (100.0, 200.0),
        &reciprocal,
    )?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random: BTreeMap<u64, Complex64> = window(50, 150, 3)
        .map(|p| {
            (
                p,
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            )
        })
        .collect();
    out.extend(largesieve_smoothing_check(3, 5.0, (50.0, 150.0), &random)?);
    let ones: BTreeMap<u64, Complex64> = window(20, 60, 8)
        .map(|p| (p, Complex64::new(1.0, 0.0)))
        .collect();
    out.extend(largesieve_smoothing_check(8, 1.0, (20.0, 60.0), &ones)?);
    Ok(out)
}

fn selberg_suite(budget: f64) -> Result<Vec<CheckReport>> {
    let w = WeightParams::new(1, 1.0)?;
    let mut out = Vec::new();
    for q in [1u64, 3, 4, 5] {
        for a in (0..q.max(1)).filter(|&a| gcd(a, q) == 1) {
            for z in [2.0, 5.0, 10.0, 30.0] {
                for x in [1e3, 1e4, 1e5] {
                    out.push(selberg_smoothed_sum_check(q, a, z, x, &w, budget)?);
                }
            }
        }
    }
    Ok(out)
}

fn detector_suite() -> Result<Vec<CheckReport>> {
    let zeta = DirichletCharacter::principal(1)?;
    let odd4 = enumerate_characters(4)?
        .into_iter()
        .find(|c| c.is_primitive())
        .expect("a primitive character mod 4 exists");
    let mod5 = primitive_characters(5)?;
    let cutoff = detector::IDENTITY_CUTOFF;
    let mut out = vec![
        detector_series_identity_check(&zeta, 0.5, 0.0, 2, cutoff, 1e-6)?,
        detector_series_identity_check(&odd4, 0.5, 1.0, 3, cutoff, 1e-6)?,
        detector_series_identity_check(&zeta, 0.5, 0.0, 0, cutoff, 1e-8)?,
        detector_series_identity_check(&odd4, 0.1, 2.0, 20, cutoff, 1e-6)?,
    ];
    for chi in &mod5 {
        out.push(detector_series_identity_check(
            chi, 0.25, 3.0, 5, cutoff, 1e-6,
        )?);
    }
    for chi in std::iter::once(&zeta).chain(&mod5) {
        out.push(detector_window_check(chi, 0.0, 10.0, 100.0)?);
        out.push(detector_window_check(chi, 2.5, 1e3, 1e5)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budgets_fixture() {
        let b = Budgets::default();
        assert!(b.rademacher_constant <= 10.0);
        assert_eq!(b.prime_sum_ratio, 1.1);
        let kv = KeyValues::parse("selberg_error_budget = 2").unwrap();
        let o = Budgets::overridden(&kv).unwrap();
        assert_eq!(o.selberg_error_budget, 2.0);
        assert_eq!(o.prime_sum_ratio, 1.1);
        assert!(Budgets::from_config(&kv).is_err());
    }

    #[test]
    fn suite_names() {
        assert_eq!(Suite::parse_list("all").unwrap().len(), 9);
        assert_eq!(
            Suite::parse_list("circle, hadamard,circle").unwrap(),
            vec![Suite::Circle, Suite::Hadamard]
        );
        assert!(Suite::parse_list("nope").is_err());
        assert!(Suite::parse_list("").is_err());
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
    }

    #[test]
    fn zero_free_suites_pass() {
        let cfg = SuiteConfig::default();
        let bank = ZeroBank::new();
        for s in [Suite::Largesieve, Suite::Selberg, Suite::Detector] {
            let r = run_suite(s, &cfg, &bank).unwrap();
            let failed: Vec<_> = r.iter().filter(|x| !x.pass).collect();
            assert!(failed.is_empty(), "{failed:#?}");
        }
        assert!(matches!(
            run_suite(Suite::Density, &cfg, &bank),
            Err(Error::Dependency(_))
        ));
    }
}
