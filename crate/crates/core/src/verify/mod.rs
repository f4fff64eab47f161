//! Check orchestration and reports.
//!
//! Deterministic checks run exactly in Q(ρ)(a, b, η). Randomized checks run
//! `trials` independent trials, each at its own prime and specialization
//! derived from the seed; trials run in parallel and are reported in index
//! order, so a report depends only on its configuration.

mod checks;

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::SymbolAlgebra;
use crate::error::Error;
use crate::expr::generic_degree_ring;
use crate::expr::pit::{run_trial, FailureWitness, PitConfig};
use crate::fields::{Field, PrimeField};

pub use checks::{Expect, ExactOutcome, Item};
use checks::Ctx;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Symbolic,
    Pit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub backend: Backend,
    pub pit: PitConfig,
    pub report_format: ReportFormat,
    /// Empty selects every check.
    pub checks: Vec<String>,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            backend: Backend::Pit,
            pit: PitConfig::default(),
            report_format: ReportFormat::Text,
            checks: Vec::new(),
        }
    }
}

impl CliConfig {
    pub fn validate(&self) -> Result<(), Error> {
        self.pit.validate()?;
        for name in &self.checks {
            if find(name).is_none() {
                return Err(Error::Config(format!(
                    "unknown check `{name}`; available: {}",
                    CHECKS.iter().map(|c| c.name).collect::<Vec<_>>().join(", ")
                )));
            }
        }
        Ok(())
    }

    fn selected(&self) -> Vec<&'static CheckInfo> {
        if self.checks.is_empty() {
            CHECKS.iter().collect()
        } else {
            CHECKS.iter().filter(|c| self.checks.iter().any(|n| n == c.name)).collect()
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Kind {
    Exact(fn() -> Result<ExactOutcome, Error>),
    Pit(PitBody),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PitBody {
    TraceVanishing,
    OddCoefficients,
    EvenCoefficients,
    ReciprocalCharpoly,
    C3ClosedForm,
    Newton,
    DihedralIdentity,
    NormalizeBeta,
    Witness,
}

#[derive(Debug)]
pub struct CheckInfo {
    pub name: &'static str,
    pub summary: &'static str,
    kind: Kind,
}

pub const CHECKS: &[CheckInfo] = &[
    CheckInfo { name: "tau-order", summary: "tau has order 4", kind: Kind::Exact(checks::tau_order) },
    CheckInfo { name: "tau-squared", summary: "tau^2(y) = y^-1, tau^2(eta) = eta^-1", kind: Kind::Exact(checks::tau_squared) },
    CheckInfo { name: "minpoly-xpx", summary: "minimal polynomial of x + x^-1", kind: Kind::Exact(checks::minpoly_xpx) },
    CheckInfo { name: "xpx-inverse", summary: "closed form of (x + x^-1)^-1", kind: Kind::Exact(checks::xpx_inverse_check) },
    CheckInfo { name: "line-invariants", summary: "line L through y + y^-1 and its tau-image, tau-fixed", kind: Kind::Exact(checks::line_invariants) },
    CheckInfo { name: "cyclotomic-relations", summary: "t1 + t2 = t1 t2 = -1, (t1 - t2)^2 = 5", kind: Kind::Exact(checks::cyclotomic_relations) },
    CheckInfo { name: "trace-vanishing", summary: "tr(x^i e) = 0 for e in K[y], i = 1..4", kind: Kind::Pit(PitBody::TraceVanishing) },
    CheckInfo { name: "odd-coefficients", summary: "c1 = c3 = 0 on (x + x^-1) K[y]", kind: Kind::Pit(PitBody::OddCoefficients) },
    CheckInfo { name: "even-coefficients", summary: "c2 = c4 = 0 on K[y] (x + x^-1)^-1", kind: Kind::Pit(PitBody::EvenCoefficients) },
    CheckInfo { name: "reciprocal-charpoly", summary: "P_{t^-1}(X) = -N(t)^-1 X^5 P_t(1/X)", kind: Kind::Pit(PitBody::ReciprocalCharpoly) },
    CheckInfo { name: "c3-closed-form", summary: "c3((x + x^-1)^-1 m) = (a + a^-1)^-1 tr_sigma(m sigma(m) sigma^2(m))", kind: Kind::Pit(PitBody::C3ClosedForm) },
    CheckInfo { name: "newton", summary: "Newton identities between power traces and charpoly", kind: Kind::Pit(PitBody::Newton) },
    CheckInfo { name: "dihedral-identity", summary: "tau sigma tau^-1 = sigma^-1 on K[y]", kind: Kind::Pit(PitBody::DihedralIdentity) },
    CheckInfo { name: "normalize-beta", summary: "u' = u^3 tau(u)^-3 satisfies tau(u') = u'^-1", kind: Kind::Pit(PitBody::NormalizeBeta) },
    CheckInfo { name: "witness", summary: "w in D^tau non-scalar with charpoly lambda^5 - w^5, w^5 in F", kind: Kind::Pit(PitBody::Witness) },
];

pub fn find(name: &str) -> Option<&'static CheckInfo> {
    CHECKS.iter().find(|c| c.name == name)
}

fn run_body<F: Field>(body: PitBody, cx: &mut Ctx<F>) -> Result<(), Error> {
    match body {
        PitBody::TraceVanishing => checks::trace_vanishing(cx),
        PitBody::OddCoefficients => checks::odd_coefficients(cx),
        PitBody::EvenCoefficients => checks::even_coefficients(cx),
        PitBody::ReciprocalCharpoly => checks::reciprocal_charpoly(cx),
        PitBody::C3ClosedForm => checks::c3_closed_form_check(cx),
        PitBody::Newton => checks::newton(cx),
        PitBody::DihedralIdentity => checks::dihedral_identity(cx),
        PitBody::NormalizeBeta => checks::normalize_beta_check(cx),
        PitBody::Witness => checks::witness(cx),
    }
}

/// Largest numerator degree among the identities `body` tests, with a, b, η
/// and every sampled scalar as independent variables and ρ constant.
fn degree_bound(body: PitBody) -> Result<u64, Error> {
    let ev = generic_degree_ring();
    let ring = ev.field().clone();
    let alg = SymbolAlgebra::new(ring.clone(), ev.generators().clone());
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut sample = |_: &mut ChaCha8Rng| ring.variable();
    let mut cx = Ctx::new(alg, ev, &mut rng, &mut sample, false);
    run_body(body, &mut cx)?;
    Ok(cx
        .into_items()
        .iter()
        .filter(|it| it.expect == Expect::Zero)
        .flat_map(|it| it.values.iter().map(|v| v.numerator_degree()))
        .max()
        .unwrap_or(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportConfig {
    pub backend: Backend,
    pub trials: usize,
    pub prime_bits: u32,
    pub seed: u64,
    pub checks: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub mode: String,
    pub status: Status,
    pub trials_run: usize,
    pub primes: Vec<String>,
    pub seed: Option<u64>,
    /// Numerator degree bound d of the largest identity tested.
    pub degree_bound: Option<u64>,
    /// max over trials of d/(p − 1).
    pub error_bound_per_trial: Option<f64>,
    pub details: Vec<String>,
    pub failure: Option<FailureWitness>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: ReportConfig,
    pub checks: Vec<CheckReport>,
    pub verdict: Status,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let _ = write!(out, "{status:<5}{:<22}{}", c.name, c.mode);
            if c.trials_run > 0 {
                let _ = write!(out, ", {} trials", c.trials_run);
            }
            match (c.degree_bound, c.error_bound_per_trial) {
                (Some(0), _) => out.push_str(", identities vanish structurally"),
                (Some(d), Some(e)) => {
                    let _ = write!(out, ", degree {d}, error/trial <= 2^{:.1}", e.log2());
                }
                _ => {}
            }
            out.push('\n');
            for d in &c.details {
                let _ = writeln!(out, "       {d}");
            }
            if let Some(w) = &c.failure {
                let _ = writeln!(
                    out,
                    "       failure at trial {} (p = {}, rho = {}, a = {}, b = {}, eta = {}): {}",
                    w.trial, w.prime, w.rho, w.a, w.b, w.eta, w.message
                );
            }
        }
        let verdict = match self.verdict {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        };
        let _ = writeln!(out, "verdict: {verdict}");
        out
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Text => self.to_text(),
            ReportFormat::Json => self.to_json(),
        }
    }
}

fn exact_report(info: &CheckInfo, f: fn() -> Result<ExactOutcome, Error>) -> CheckReport {
    let (status, details) = match f() {
        Ok(o) => (if o.pass { Status::Pass } else { Status::Fail }, o.details),
        Err(e) => (Status::Fail, vec![format!("error: {e}")]),
    };
    CheckReport {
        name: info.name.into(),
        mode: "exact".into(),
        status,
        trials_run: 0,
        primes: Vec::new(),
        seed: None,
        degree_bound: None,
        error_bound_per_trial: None,
        details,
        failure: None,
    }
}

/// Tests every item; the first violated one names the failure.
fn judge(items: &[Item<u64>]) -> Option<String> {
    items.iter().find_map(|it| {
        let ok = match it.expect {
            Expect::Zero => it.values.iter().all(|v| *v == 0),
            Expect::SomeNonZero => it.values.iter().any(|v| *v != 0),
        };
        (!ok).then(|| format!("{} (case {})", it.label, it.index))
    })
}

struct TrialOutcome {
    prime: u64,
    result: Result<(Option<String>, crate::expr::pit::Specialization), Error>,
}

fn pit_report(info: &CheckInfo, body: PitBody, cfg: &PitConfig) -> CheckReport {
    let outcomes: Vec<TrialOutcome> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let prime = cfg.trial_prime(t).map(|f| f.modulus()).unwrap_or(0);
            let result = run_trial(cfg, t, info.name, |pt, rng| {
                let field: PrimeField = pt.field;
                let alg = SymbolAlgebra::at(pt);
                let mut sample = move |r: &mut ChaCha8Rng| field.random(r);
                let mut cx = Ctx::new(alg, pt.evaluator(), rng, &mut sample, true);
                run_body(body, &mut cx)?;
                Ok(judge(&cx.into_items()))
            });
            TrialOutcome { prime, result }
        })
        .collect();

    let mut report = CheckReport {
        name: info.name.into(),
        mode: "pit".into(),
        status: Status::Pass,
        trials_run: 0,
        primes: Vec::new(),
        seed: Some(cfg.seed),
        degree_bound: None,
        error_bound_per_trial: None,
        details: Vec::new(),
        failure: None,
    };
    let mut resamples = 0;
    for (t, o) in outcomes.into_iter().enumerate() {
        report.primes.push(o.prime.to_string());
        report.trials_run += 1;
        match o.result {
            Ok((None, pt)) => resamples += pt.attempt,
            Ok((Some(msg), pt)) => {
                report.status = Status::Fail;
                report.failure = Some(FailureWitness::new(&pt, msg));
                break;
            }
            Err(e) => {
                report.status = Status::Fail;
                report.details.push(format!("trial {t}: {e}"));
                break;
            }
        }
    }
    if resamples > 0 {
        report.details.push(format!("{resamples} specialization(s) resampled"));
    }
    match degree_bound(body) {
        Ok(d) => {
            report.degree_bound = Some(d);
            let p_min = report.primes.iter().filter_map(|p| p.parse::<u64>().ok()).min();
            report.error_bound_per_trial = p_min.map(|p| d as f64 / (p - 1) as f64);
        }
        Err(e) => report.details.push(format!("degree bound unavailable: {e}")),
    }
    report
}

/// Runs the selected checks. Configuration errors are returned; check
/// failures are recorded in the report.
pub fn run_checks(cfg: &CliConfig) -> Result<Report, Error> {
    cfg.validate()?;
    let selected = cfg.selected();
    let mut reports = Vec::with_capacity(selected.len());
    for info in &selected {
        let r = match (info.kind, cfg.backend) {
            (Kind::Exact(f), _) => exact_report(info, f),
            (Kind::Pit(body), Backend::Pit) => pit_report(info, body, &cfg.pit),
            (Kind::Pit(_), Backend::Symbolic) => CheckReport {
                name: info.name.into(),
                mode: "pit".into(),
                status: Status::Skipped,
                trials_run: 0,
                primes: Vec::new(),
                seed: None,
                degree_bound: None,
                error_bound_per_trial: None,
                details: vec!["randomized check; run with --backend pit".into()],
                failure: None,
            },
        };
        reports.push(r);
    }
    let verdict = if reports.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else if reports.iter().all(|r| r.status == Status::Skipped) {
        Status::Skipped
    } else {
        Status::Pass
    };
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.into(),
        config: ReportConfig {
            backend: cfg.backend,
            trials: cfg.pit.trials,
            prime_bits: cfg.pit.prime_bits,
            seed: cfg.pit.seed,
            checks: selected.iter().map(|c| c.name.to_string()).collect(),
        },
        checks: reports,
        verdict,
    })
}
