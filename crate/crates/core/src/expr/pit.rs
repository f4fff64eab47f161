//! Randomized identity testing at prime-field specializations.
//!
//! Trial `i` under seed `s` always uses the same prime, drawn from a ChaCha
//! stream keyed by `(s, i)`. Specializations additionally depend on a stream
//! label (usually the check name) and the resample attempt, so reports are
//! reproducible bit for bit.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{symbolic_evaluator, Evaluator, Expr};
use crate::error::{Error, NonInvertible};
use crate::fields::{DegreeBound, PrimeField};

/// Resamples allowed per trial before giving up.
pub const MAX_RESAMPLES: usize = 16;

const PRIME_STREAM: u64 = 0x7072_696d_6573; // "primes"

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// FNV-1a; stable across platforms and releases, unlike `DefaultHasher`.
pub fn stream_id(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

pub fn derive_seed(seed: u64, parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(splitmix64(seed), |acc, p| splitmix64(acc ^ splitmix64(*p)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PitConfig {
    pub trials: usize,
    pub prime_bits: u32,
    pub seed: u64,
}

impl Default for PitConfig {
    fn default() -> Self {
        PitConfig {
            trials: 32,
            prime_bits: 62,
            seed: 0,
        }
    }
}

impl PitConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if !(32..=63).contains(&self.prime_bits) {
            return Err(Error::Config(format!(
                "prime bits must be in 32..=63, got {}",
                self.prime_bits
            )));
        }
        Ok(())
    }

    pub fn trial_prime(&self, trial: usize) -> Result<PrimeField, Error> {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(self.seed, &[PRIME_STREAM, trial as u64]));
        PrimeField::generate(self.prime_bits, &mut rng)
    }

    pub fn trial_rng(&self, trial: usize, stream: &str, attempt: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(derive_seed(
            self.seed,
            &[stream_id(stream), trial as u64, attempt as u64],
        ))
    }
}

/// A specialization of the generic model: a prime field together with images
/// of ρ, a, b, η.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specialization {
    pub field: PrimeField,
    /// ρ, a, b, η
    pub values: [u64; 4],
    pub trial: usize,
    pub attempt: usize,
}

impl Specialization {
    pub fn sample<R: rand::Rng>(field: PrimeField, rng: &mut R, trial: usize, attempt: usize) -> Result<Self, Error> {
        let rho = field.random_primitive_fifth_root(rng)?;
        Ok(Specialization {
            field,
            values: [rho, field.random_unit(rng), field.random_unit(rng), field.random_unit(rng)],
            trial,
            attempt,
        })
    }

    pub fn evaluator(&self) -> Evaluator<PrimeField> {
        Evaluator::new(self.field, self.values)
    }

    pub fn prime(&self) -> u64 {
        self.field.modulus()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub prime: String,
    pub attempts: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureWitness {
    pub trial: usize,
    pub prime: String,
    pub rho: String,
    pub a: String,
    pub b: String,
    pub eta: String,
    pub message: String,
}

impl FailureWitness {
    pub fn new(s: &Specialization, message: impl Into<String>) -> Self {
        FailureWitness {
            trial: s.trial,
            prime: s.prime().to_string(),
            rho: s.values[0].to_string(),
            a: s.values[1].to_string(),
            b: s.values[2].to_string(),
            eta: s.values[3].to_string(),
            message: message.into(),
        }
    }
}

/// Runs `body` at a fresh specialization for trial `trial`, resampling when
/// the body reports a vanishing denominator.
pub fn run_trial<T, B>(cfg: &PitConfig, trial: usize, stream: &str, mut body: B) -> Result<(T, Specialization), Error>
where
    B: FnMut(&Specialization, &mut ChaCha8Rng) -> Result<T, Error>,
{
    let field = cfg.trial_prime(trial)?;
    for attempt in 0..=MAX_RESAMPLES {
        let mut rng = cfg.trial_rng(trial, stream, attempt);
        let pt = Specialization::sample(field, &mut rng, trial, attempt)?;
        match body(&pt, &mut rng) {
            Ok(v) => return Ok((v, pt)),
            Err(Error::NonInvertible) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ResampleExhausted(MAX_RESAMPLES))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqualityMode {
    Symbolic,
    Pit(PitConfig),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityReport {
    pub equal: bool,
    pub trials: Vec<TrialRecord>,
    /// Total-degree bound of the numerator of `e1 − e2` (PIT mode).
    pub degree_bound: Option<u64>,
    pub witness: Option<FailureWitness>,
}

/// Degree bound of the numerator of `e`, by propagation through the DAG.
pub fn degree_bound(e: &Expr) -> Result<DegreeBound, NonInvertible> {
    super::generic_degree_ring().eval(e)
}

/// Decides `e1 = e2` in Q(ρ)(a, b, η).
///
/// Symbolic mode is exact. PIT mode is one-sided: a disagreement proves the
/// expressions differ; agreement in every trial bounds the false-accept
/// probability per trial by `degree_bound / p`.
pub fn expr_equal(e1: &Expr, e2: &Expr, mode: EqualityMode) -> Result<EqualityReport, Error> {
    match mode {
        EqualityMode::Symbolic => {
            let mut ev = symbolic_evaluator();
            let x = ev.eval(e1)?;
            let y = ev.eval(e2)?;
            Ok(EqualityReport {
                equal: x.equals(&y),
                trials: Vec::new(),
                degree_bound: None,
                witness: None,
            })
        }
        EqualityMode::Pit(cfg) => {
            cfg.validate()?;
            let diff = e1.sub(e2);
            let bound = degree_bound(&diff).map(|d| d.numerator_degree()).ok();
            let mut trials = Vec::with_capacity(cfg.trials);
            for t in 0..cfg.trials {
                let (same, pt) = run_trial(&cfg, t, "expr-equal", |s, _| {
                    let mut ev = s.evaluator();
                    let x = ev.eval(e1)?;
                    let y = ev.eval(e2)?;
                    Ok(x == y)
                })?;
                trials.push(TrialRecord {
                    trial: t,
                    prime: pt.prime().to_string(),
                    attempts: pt.attempt + 1,
                });
                if !same {
                    return Ok(EqualityReport {
                        equal: false,
                        trials,
                        degree_bound: bound,
                        witness: Some(FailureWitness::new(&pt, "values differ")),
                    });
                }
            }
            Ok(EqualityReport {
                equal: true,
                trials,
                degree_bound: bound,
                witness: None,
            })
        }
    }
}
