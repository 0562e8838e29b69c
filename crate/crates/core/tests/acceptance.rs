//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! The full suite (criterion 1) is run once; the per-check criteria read the
//! seed-1 reports from it, since each was run with at least the trial count
//! the criterion asks for.

use std::collections::BTreeMap;
use std::time::Instant;

use chaingeo::chains::{chain_stabilizer_m, standard_chain, valid_indices, USubspace};
use chaingeo::hermitian::HermSpace;
use chaingeo::sampler::{SampleConfig, Sampler};
use chaingeo::shilov::{bergmann_index, ShilovPoint};
use chaingeo::verify::{run_suite, CheckReport, Status};

const CONFIGS: [(usize, usize); 7] = [(1, 2), (1, 3), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5)];
const SEEDS: [u64; 3] = [1, 2, 3];
const TRIALS: u64 = 500;
const SLOW_TRIALS: u64 = 200;
const SLOW: [&str; 2] = ["SURJ", "SPAN"];

type Reports = BTreeMap<(String, usize, usize, u64), CheckReport>;

struct Verdicts(Vec<(usize, bool, String)>);

impl Verdicts {
    fn record(&mut self, n: usize, ok: bool, detail: String) {
        self.0.push((n, ok, detail));
    }
}

fn full_suite() -> Reports {
    let mut out = Reports::new();
    for &(m, n) in &CONFIGS {
        for &seed in &SEEDS {
            let cfg = SampleConfig::new(m, n, seed);
            let fast: Vec<&str> = chaingeo::verify::check_ids()
                .into_iter()
                .filter(|id| !SLOW.contains(id))
                .collect();
            let mut reports = run_suite(&fast, &cfg, TRIALS).expect("valid suite");
            reports.extend(run_suite(&SLOW, &cfg, SLOW_TRIALS).expect("valid suite"));
            for r in reports {
                if r.status == Status::Fail {
                    println!(
                        "  {} ({m},{n}) seed {seed}: {} failures {:?}",
                        r.check, r.failures, r.first_counterexample
                    );
                }
                out.insert((r.check.clone(), m, n, seed), r);
            }
        }
    }
    out
}

fn report<'a>(all: &'a Reports, id: &str, m: usize, n: usize) -> &'a CheckReport {
    &all[&(id.to_string(), m, n, 1)]
}

fn passed(r: &CheckReport, trials: u64) -> bool {
    r.status == Status::Pass && r.trials >= trials
}

fn stat(r: &CheckReport, key: &str) -> u64 {
    r.stats.get(key).copied().unwrap_or(0)
}

fn criterion_1(v: &mut Verdicts, all: &Reports) {
    let failed: Vec<String> = all
        .values()
        .filter(|r| r.status == Status::Fail)
        .map(|r| format!("{}({},{})#{}", r.check, r.m, r.n, r.seed))
        .collect();
    let short = all.values().any(|r| {
        r.status == Status::Pass
            && r.trials
                < if SLOW.contains(&r.check.as_str()) {
                    SLOW_TRIALS
                } else {
                    TRIALS
                }
    });
    let run = all.values().filter(|r| r.status != Status::Skip).count();
    let ms: u64 = all.values().map(|r| r.elapsed_ms).sum();
    v.record(
        1,
        failed.is_empty() && !short,
        format!(
            "{run} check runs over 7 configs x 3 seeds, {} skipped, failed {failed:?}, {:.1} min",
            all.len() - run,
            ms as f64 / 60_000.0
        ),
    );
}

fn criterion_2(v: &mut Verdicts) {
    let s = HermSpace::new(3, 4).unwrap();
    let mut counts = BTreeMap::new();
    for mask in 0..8u32 {
        let plus: Vec<bool> = (0..3).map(|i| mask >> i & 1 == 1).collect();
        let idx = bergmann_index(
            &ShilovPoint::v_inf(s),
            &ShilovPoint::v_d(s, &plus).unwrap(),
            &ShilovPoint::v_0(s),
        )
        .unwrap();
        *counts.entry(idx).or_insert(0) += 1;
    }
    let want = BTreeMap::from([(-3, 1), (-1, 3), (1, 3), (3, 1)]);
    v.record(2, counts == want, format!("index counts {counts:?}"));
}

fn criterion_3(v: &mut Verdicts, all: &Reports) {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [2, 3] {
        let r = report(all, "CAR", 1, n);
        ok &= passed(r, 500);
        parts.push(format!(
            "(1,{n}): {:?}, {} maximal, {} generic",
            r.status,
            stat(r, "maximal"),
            stat(r, "generic")
        ));
    }
    v.record(3, ok, parts.join("; "));
}

fn criterion_4(v: &mut Verdicts) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (m, n) in [(2, 3), (3, 4)] {
        let mut rng = Sampler::new(&SampleConfig::new(m, n, 4));
        let mut bad = 0;
        for _ in 0..200 {
            let g = rng.h_unitary();
            let q: Vec<ShilovPoint> = rng
                .coplanar_points(4)
                .iter()
                .map(|p| p.transform(&g))
                .collect();
            let b = |i: usize, j: usize, k: usize| bergmann_index(&q[i], &q[j], &q[k]).unwrap();
            if b(1, 2, 3) - b(0, 2, 3) + b(0, 1, 3) - b(0, 1, 2) != 0 {
                bad += 1;
            }
        }
        ok &= bad == 0;
        parts.push(format!("({m},{n}): {bad} of 200 tuples violate"));
    }
    v.record(4, ok, parts.join("; "));
}

/// `V_k` exists only for `k >= 2m - n`: v_inf and a 2m-space meet in at
/// least that dimension, so smaller k have no chain to test.
fn criterion_5(v: &mut Verdicts, all: &Reports) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (m, n) in [(2, 3), (3, 4), (3, 5)] {
        let s = HermSpace::new(m, n).unwrap();
        let ks: Vec<usize> = valid_indices(s).collect();
        let equal: Vec<usize> = ks
            .iter()
            .copied()
            .filter(|&k| chain_stabilizer_m(&standard_chain(s, k).unwrap()) == USubspace::e_k(m, k))
            .collect();
        let r = report(all, "ERR", m, n);
        ok &= equal == ks && passed(r, 500);
        let none: Vec<usize> = (0..ks[0]).collect();
        parts.push(format!(
            "({m},{n}): M_T_k = E_k for k in {equal:?} (no chains for k in {none:?}), ERR {:?}",
            r.status
        ));
    }
    v.record(5, ok, parts.join("; "));
}

fn criterion_6(v: &mut Verdicts, all: &Reports) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (m, n) in [(2, 3), (3, 4)] {
        let r = report(all, "SURJ", m, n);
        ok &= passed(r, 200) && stat(r, "exact") == r.trials && stat(r, "approximate") == 0;
        parts.push(format!(
            "({m},{n}): {:?}, {} exact, {} approximate",
            r.status,
            stat(r, "exact"),
            stat(r, "approximate")
        ));
    }
    v.record(6, ok, parts.join("; "));
}

fn criterion_7(v: &mut Verdicts, all: &Reports) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (m, n) in [(2, 3), (3, 4)] {
        let r = report(all, "SPAN", m, n);
        ok &= passed(r, 100);
        parts.push(format!(
            "({m},{n}): {:?} over {} runs, {} beyond 10 m^2, mean {:.1} samples",
            r.status,
            r.trials,
            stat(r, "soft_misses"),
            stat(r, "samples") as f64 / r.trials as f64
        ));
    }
    v.record(7, ok, parts.join("; "));
}

fn criterion_8(v: &mut Verdicts, all: &Reports) {
    let mut ok = true;
    let mut parts = Vec::new();
    for &(m, n) in &CONFIGS {
        let r = report(all, "OO", m, n);
        ok &= passed(r, 500);
        parts.push(format!("({m},{n}) {} generic", stat(r, "generic")));
    }
    v.record(8, ok, parts.join(", "));
}

fn criterion_9(v: &mut Verdicts, all: &Reports) {
    let mut ok = true;
    let mut parts = Vec::new();
    for &(m, n) in &CONFIGS {
        let r = report(all, "UM", m, n);
        ok &= passed(r, 200);
        if !parts
            .iter()
            .any(|p: &String| p.starts_with(&format!("l={m}")))
        {
            parts.push(format!(
                "l={m}: {:?}, mean search {:.2}",
                r.status,
                stat(r, "search_attempts") as f64 / r.trials as f64
            ));
        }
    }
    v.record(9, ok, parts.join("; "));
}

fn criterion_10(v: &mut Verdicts, all: &Reports) {
    let r = report(all, "XSIG", 2, 3);
    v.record(
        10,
        passed(r, 500),
        format!("{:?} on {} matrices", r.status, r.trials),
    );
}

fn main() {
    let mut v = Verdicts(Vec::new());
    criterion_2(&mut v);
    criterion_4(&mut v);
    let start = Instant::now();
    let all = full_suite();
    println!(
        "full suite wall clock: {:.1} min",
        start.elapsed().as_secs_f64() / 60.0
    );
    criterion_1(&mut v, &all);
    criterion_3(&mut v, &all);
    criterion_5(&mut v, &all);
    criterion_6(&mut v, &all);
    criterion_7(&mut v, &all);
    criterion_8(&mut v, &all);
    criterion_9(&mut v, &all);
    criterion_10(&mut v, &all);
    v.0.sort_by_key(|r| r.0);
    for (n, ok, detail) in &v.0 {
        println!(
            "criterion {n:>2} {}: {detail}",
            if *ok { "PASS" } else { "FAIL" }
        );
    }
    if v.0.iter().any(|r| !r.1) {
        std::process::exit(1);
    }
}
