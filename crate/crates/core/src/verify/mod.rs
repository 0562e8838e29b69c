//! Property-check registry and runner.
//!
//! Each check is a named property evaluated on independent seeded trials.
//! Trial `i` of check `ID` draws from `Sampler::stream(cfg, ID, i)`, so any
//! trial can be replayed on its own from `(ID, m, n, seed, height, i)`.

mod checks;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::hermitian::HermSpace;
use crate::sampler::{SampleConfig, Sampler};
use crate::Error;

pub use checks::REGISTRY;

/// Per-trial state: the trial's random stream and a tally of named events.
pub struct Ctx {
    pub rng: Sampler,
    pub space: HermSpace,
    pub trial: u64,
    tally: BTreeMap<String, u64>,
}

impl Ctx {
    pub fn count(&mut self, key: &str) {
        self.count_n(key, 1);
    }

    pub fn count_n(&mut self, key: &str, by: u64) {
        *self.tally.entry(key.to_string()).or_default() += by;
    }
}

/// A violated property. Soft failures are statistical misses that only count
/// against the check's rate threshold.
#[derive(Clone, Debug)]
pub struct Failure {
    pub message: String,
    pub data: Value,
    pub soft: bool,
}

impl Failure {
    pub fn new(message: impl Into<String>, data: Value) -> Self {
        Self {
            message: message.into(),
            data,
            soft: false,
        }
    }

    pub fn soft(message: impl Into<String>, data: Value) -> Self {
        Self {
            message: message.into(),
            data,
            soft: true,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(format!("unexpected error: {e}"), Value::Null)
    }
}

pub type TrialFn = fn(&mut Ctx) -> Result<(), Failure>;

/// Aggregate verdict over all trials: `(trials, soft misses, tally)`.
pub type FinalizeFn = fn(u64, u64, &BTreeMap<String, u64>) -> Result<(), String>;

pub struct Check {
    pub id: &'static str,
    pub summary: &'static str,
    /// `Err(reason)` when the check does not apply to `(m, n)`.
    pub regime: fn(HermSpace) -> Result<(), String>,
    pub trial: TrialFn,
    pub finalize: Option<FinalizeFn>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// Enough to rerun a single failing trial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    pub m: usize,
    pub n: usize,
    pub seed: u64,
    pub height: u32,
    pub trial: u64,
    pub message: String,
    pub data: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub m: usize,
    pub n: usize,
    pub seed: u64,
    pub height: u32,
    pub status: Status,
    pub trials: u64,
    pub failures: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub stats: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_counterexample: Option<Counterexample>,
    pub elapsed_ms: u64,
}

impl CheckReport {
    fn skipped(id: &str, cfg: &SampleConfig, reason: String) -> Self {
        Self {
            check: id.to_string(),
            m: cfg.m,
            n: cfg.n,
            seed: cfg.seed,
            height: cfg.height,
            status: Status::Skip,
            trials: 0,
            failures: 0,
            reason: Some(reason),
            stats: BTreeMap::new(),
            first_counterexample: None,
            elapsed_ms: 0,
        }
    }
}

pub fn find_check(id: &str) -> Result<&'static Check, Error> {
    REGISTRY
        .iter()
        .find(|c| c.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

pub fn check_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|c| c.id).collect()
}

struct TrialRecord {
    index: u64,
    result: Result<(), Failure>,
    tally: BTreeMap<String, u64>,
}

fn run_trial(check: &Check, cfg: &SampleConfig, index: u64) -> TrialRecord {
    let mut ctx = Ctx {
        rng: Sampler::stream(cfg, check.id, index),
        space: cfg.space().expect("validated"),
        trial: index,
        tally: BTreeMap::new(),
    };
    let result = match catch_unwind(AssertUnwindSafe(|| (check.trial)(&mut ctx))) {
        Ok(r) => r,
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(Failure::new(format!("panic: {msg}"), Value::Null))
        }
    };
    TrialRecord {
        index,
        result,
        tally: ctx.tally,
    }
}

#[cfg(feature = "parallel")]
fn run_trials(check: &Check, cfg: &SampleConfig, trials: u64) -> Vec<TrialRecord> {
    use rayon::prelude::*;
    (0..trials)
        .into_par_iter()
        .map(|i| run_trial(check, cfg, i))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn run_trials(check: &Check, cfg: &SampleConfig, trials: u64) -> Vec<TrialRecord> {
    (0..trials).map(|i| run_trial(check, cfg, i)).collect()
}

/// Runs any check, registered or not. Regime violations are errors here.
pub fn run_with(check: &Check, cfg: &SampleConfig, trials: u64) -> Result<CheckReport, Error> {
    let space = cfg.space()?;
    (check.regime)(space).map_err(Error::InvalidRegime)?;
    let start = Instant::now();
    let records = run_trials(check, cfg, trials);

    let mut stats = BTreeMap::new();
    let mut hard = Vec::new();
    let mut soft = Vec::new();
    for r in &records {
        for (k, v) in &r.tally {
            *stats.entry(k.clone()).or_insert(0) += v;
        }
        if let Err(f) = &r.result {
            if f.soft {
                soft.push((r.index, f));
            } else {
                hard.push((r.index, f));
            }
        }
    }
    let cx = |(index, f): &(u64, &Failure)| Counterexample {
        check: check.id.to_string(),
        m: cfg.m,
        n: cfg.n,
        seed: cfg.seed,
        height: cfg.height,
        trial: *index,
        message: f.message.clone(),
        data: f.data.clone(),
    };
    let verdict = match check.finalize {
        Some(fin) => fin(trials, soft.len() as u64, &stats),
        None if soft.is_empty() => Ok(()),
        None => Err(format!("{} statistical misses", soft.len())),
    };
    if !soft.is_empty() {
        stats.insert("soft_misses".into(), soft.len() as u64);
    }
    let (failures, first, reason) = if !hard.is_empty() {
        (hard.len() as u64, hard.first().map(cx), None)
    } else if let Err(why) = verdict {
        (soft.len().max(1) as u64, soft.first().map(cx), Some(why))
    } else {
        (0, None, None)
    };
    Ok(CheckReport {
        check: check.id.to_string(),
        m: cfg.m,
        n: cfg.n,
        seed: cfg.seed,
        height: cfg.height,
        status: if failures == 0 {
            Status::Pass
        } else {
            Status::Fail
        },
        trials,
        failures,
        reason,
        stats,
        first_counterexample: first,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn run_check(id: &str, cfg: &SampleConfig, trials: u64) -> Result<CheckReport, Error> {
    run_with(find_check(id)?, cfg, trials)
}

/// Runs the named checks (or all of them for `["all"]`). Checks outside their
/// regime produce a `Skip` report instead of an error.
pub fn run_suite(ids: &[&str], cfg: &SampleConfig, trials: u64) -> Result<Vec<CheckReport>, Error> {
    let space = cfg.space()?;
    let checks: Vec<&Check> = if ids.iter().any(|s| s.eq_ignore_ascii_case("all")) {
        REGISTRY.iter().collect()
    } else {
        ids.iter()
            .map(|id| find_check(id))
            .collect::<Result<_, _>>()?
    };
    checks
        .into_iter()
        .map(|c| match (c.regime)(space) {
            Err(why) => Ok(CheckReport::skipped(c.id, cfg, why)),
            Ok(()) => run_with(c, cfg, trials),
        })
        .collect()
}

/// Overall status: any failure fails; all-skipped is `Skip`.
pub fn suite_status(reports: &[CheckReport]) -> Status {
    if reports.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else if reports.iter().all(|r| r.status == Status::Skip) {
        Status::Skip
    } else {
        Status::Pass
    }
}

/// Reruns the trial recorded in a counterexample.
pub fn replay_with(check: &Check, cx: &Counterexample) -> Result<Result<(), Failure>, Error> {
    let cfg = SampleConfig::new(cx.m, cx.n, cx.seed).with_height(cx.height);
    let space = cfg.space()?;
    (check.regime)(space).map_err(Error::InvalidRegime)?;
    Ok(run_trial(check, &cfg, cx.trial).result)
}

pub fn replay(cx: &Counterexample) -> Result<Result<(), Failure>, Error> {
    replay_with(find_check(&cx.check)?, cx)
}
