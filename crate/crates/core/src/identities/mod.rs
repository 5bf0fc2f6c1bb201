//! Identity checks: builders for every structured matrix and closed form,
//! and a driver that certifies each identity by exact evaluation at
//! randomly sampled rational points.
//!
//! A check returns a list of residuals; it passes at a point when every
//! residual is exactly zero. Points where some denominator vanishes are
//! rejected and resampled.

pub mod determinants;
pub mod gram;
pub mod moments;
pub mod quadratic;
mod registry;

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{ParamPoint, Sampler, SamplerConfig, Scalar};

pub use registry::{find, mutants, registry};

/// Size controls of a check; `None` marks a control the check ignores.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Sizes {
    pub n_max: Option<usize>,
    pub m_max: Option<usize>,
    pub order: Option<usize>,
}

impl Sizes {
    pub const fn none() -> Self {
        Sizes {
            n_max: None,
            m_max: None,
            order: None,
        }
    }

    pub const fn n(n: usize) -> Self {
        Sizes {
            n_max: Some(n),
            m_max: None,
            order: None,
        }
    }

    pub const fn m(m: usize) -> Self {
        Sizes {
            n_max: None,
            m_max: Some(m),
            order: None,
        }
    }

    pub const fn order(order: usize) -> Self {
        Sizes {
            n_max: None,
            m_max: None,
            order: Some(order),
        }
    }

    /// Replaces every control this check uses by the override, when given.
    pub fn overridden(&self, with: &Sizes) -> Sizes {
        Sizes {
            n_max: self.n_max.map(|v| with.n_max.unwrap_or(v)),
            m_max: self.m_max.map(|v| with.m_max.unwrap_or(v)),
            order: self.order.map(|v| with.order.unwrap_or(v)),
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max.unwrap_or(0)
    }

    pub fn m_max(&self) -> usize {
        self.m_max.unwrap_or(0)
    }

    pub fn series_order(&self) -> usize {
        self.order.unwrap_or(0)
    }
}

impl fmt::Display for Sizes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(n) = self.n_max {
            parts.push(format!("nmax={n}"));
        }
        if let Some(m) = self.m_max {
            parts.push(format!("mmax={m}"));
        }
        if let Some(o) = self.order {
            parts.push(format!("order={o}"));
        }
        if parts.is_empty() {
            write!(f, "-")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

pub type Procedure = fn(&ParamPoint, &Sizes) -> Result<Vec<Scalar>>;

/// A registered identity.
#[derive(Clone)]
pub struct IdentityCheck {
    pub id: &'static str,
    pub anchor: &'static str,
    pub params: Vec<String>,
    pub defaults: Sizes,
    pub procedure: Procedure,
}

impl IdentityCheck {
    /// Residuals at a fixed point.
    pub fn evaluate(&self, pt: &ParamPoint, sizes: &Sizes) -> Result<Vec<Scalar>> {
        (self.procedure)(pt, sizes)
    }
}

impl fmt::Debug for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityCheck")
            .field("id", &self.id)
            .field("anchor", &self.anchor)
            .field("params", &self.params)
            .field("defaults", &self.defaults)
            .finish()
    }
}

/// Outcome of a verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub id: String,
    pub anchor: String,
    pub trials: usize,
    pub passes: usize,
    pub failures: usize,
    pub witness_seeds: Vec<u64>,
    pub millis: u64,
}

/// The outcome of one trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrialOutcome {
    Pass(ParamPoint),
    /// A nonzero residual: its index in the residual list and its value.
    Fail {
        point: ParamPoint,
        index: usize,
        residual: Scalar,
    },
    /// No admissible point, or an error other than a pole.
    Error(String),
}

impl TrialOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, TrialOutcome::Pass(_))
    }
}

/// Sampler seed of trial `index` under `master` (splitmix64 finalizer).
pub fn trial_seed(master: u64, index: usize) -> u64 {
    let mut z = master
        ^ (index as u64)
            .wrapping_add(1)
            .wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs one trial from its own seed, resampling points at poles.
pub fn run_trial(
    check: &IdentityCheck,
    seed: u64,
    sizes: &Sizes,
    config: SamplerConfig,
) -> TrialOutcome {
    let mut sampler = Sampler::new(seed, config);
    for _ in 0..config.retry_cap {
        let pt = sampler.candidate(&check.params);
        match check.evaluate(&pt, sizes) {
            Ok(res) => {
                return match res.iter().position(|r| !r.is_zero()) {
                    None => TrialOutcome::Pass(pt),
                    Some(index) => TrialOutcome::Fail {
                        residual: res[index].clone(),
                        point: pt,
                        index,
                    },
                }
            }
            Err(e) if e.is_pole() => continue,
            Err(e) => return TrialOutcome::Error(e.to_string()),
        }
    }
    TrialOutcome::Error(Error::SamplingExhausted(config.retry_cap).to_string())
}

/// Runs `trials` independent trials of `check`.
pub fn run_check(
    check: &IdentityCheck,
    trials: usize,
    seed: u64,
    sizes: &Sizes,
    config: SamplerConfig,
) -> CheckReport {
    let clock = Stopwatch::start();
    let sizes = check.defaults.overridden(sizes);
    let mut witness_seeds = Vec::new();
    for t in 0..trials {
        let s = trial_seed(seed, t);
        if !run_trial(check, s, &sizes, config).passed() {
            witness_seeds.push(s);
        }
    }
    let failures = witness_seeds.len();
    CheckReport {
        id: check.id.to_string(),
        anchor: check.anchor.to_string(),
        trials,
        passes: trials - failures,
        failures,
        witness_seeds,
        millis: clock.millis(),
    }
}

/// Wall-clock timer; reads zero where no clock is available.
struct Stopwatch(#[cfg(not(target_arch = "wasm32"))] std::time::Instant);

impl Stopwatch {
    #[cfg(not(target_arch = "wasm32"))]
    fn start() -> Self {
        Stopwatch(std::time::Instant::now())
    }

    #[cfg(target_arch = "wasm32")]
    fn start() -> Self {
        Stopwatch()
    }

    #[cfg(not(target_arch = "wasm32"))]
    fn millis(&self) -> u64 {
        self.0.elapsed().as_millis() as u64
    }

    #[cfg(target_arch = "wasm32")]
    fn millis(&self) -> u64 {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(id: &str) -> IdentityCheck {
        find(id).unwrap()
    }

    #[test]
    fn registry_is_large_and_unique() {
        let reg = registry();
        assert!(reg.len() >= 18);
        let mut ids: Vec<_> = reg.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), reg.len());
        assert!(find("main_quadratic").is_ok());
        assert!(find("gram_det").is_ok());
        assert!(matches!(find("nope"), Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn zero_trials_pass() {
        let r = run_check(
            &quick("ten_factor_polynomial"),
            0,
            0,
            &Sizes::none(),
            SamplerConfig::default(),
        );
        assert_eq!((r.trials, r.passes, r.failures), (0, 0, 0));
        assert!(r.witness_seeds.is_empty());
    }

    #[test]
    fn reports_are_deterministic() {
        let c = quick("little_qjacobi_hankel");
        let mut a = run_check(&c, 3, 9, &Sizes::none(), SamplerConfig::default());
        let mut b = run_check(&c, 3, 9, &Sizes::none(), SamplerConfig::default());
        a.millis = 0;
        b.millis = 0;
        assert_eq!(a, b);
        assert_eq!(a.passes + a.failures, a.trials);
    }

    #[test]
    fn mutant_always_fails() {
        for m in mutants() {
            let r = run_check(&m, 4, 1, &Sizes::none(), SamplerConfig::default());
            assert_eq!(r.failures, 4, "{}", m.id);
            assert_eq!(r.witness_seeds.len(), 4);
            let again = run_trial(
                &m,
                r.witness_seeds[0],
                &m.defaults,
                SamplerConfig::default(),
            );
            assert!(matches!(again, TrialOutcome::Fail { .. }));
        }
    }

    #[test]
    fn trial_seeds_differ() {
        let seeds: Vec<u64> = (0..50).map(|t| trial_seed(0, t)).collect();
        let mut sorted = seeds.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), seeds.len());
        assert_ne!(trial_seed(0, 0), trial_seed(1, 0));
    }

    #[test]
    fn overrides_only_touch_used_controls() {
        let d = Sizes::n(5);
        let o = Sizes {
            n_max: Some(3),
            m_max: Some(2),
            order: Some(4),
        };
        assert_eq!(d.overridden(&o), Sizes::n(3));
        assert_eq!(
            Sizes::order(10).overridden(&Sizes::none()),
            Sizes::order(10)
        );
        assert_eq!(Sizes::none().to_string(), "-");
    }

    #[test]
    fn every_check_passes_once() {
        let small = Sizes {
            n_max: Some(3),
            m_max: Some(2),
            order: Some(4),
        };
        for c in registry() {
            let r = run_check(&c, 1, 0, &small, SamplerConfig::default());
            assert_eq!(r.failures, 0, "{}", c.id);
        }
    }
}
