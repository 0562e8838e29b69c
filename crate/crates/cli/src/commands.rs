use std::fs;
use std::io::Write;
use std::path::Path;

use chaingeo::chains::{
    intersect_chains, intersection_index, lift_circle, project_chain, project_chain_at,
    valid_indices, vinf_index, Circle,
};
use chaingeo::heisenberg::to_chart;
use chaingeo::sampler::{SampleConfig, Sampler};
use chaingeo::shilov::{
    bergmann_index, cartan_invariant, chain_through, span_dim, transverse, MChain, ShilovPoint,
};
use chaingeo::verify::{run_suite, suite_status, CheckReport, Status};
use chaingeo::Error;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::{ChainArgs, ChainOp, CheckArgs, CliError, GenArgs, GenKind, InvArgs, InvKind};

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn read_items(path: &Path) -> Result<Vec<Value>, CliError> {
    let txt =
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    match serde_json::from_str(&txt).map_err(usage)? {
        Value::Array(items) => Ok(items),
        _ => Err(usage("input must be a JSON array")),
    }
}

fn parse<T: DeserializeOwned>(i: usize, v: &Value) -> Result<T, CliError> {
    T::deserialize(v).map_err(|e| usage(format!("item {i}: {e}")))
}

fn emit(value: &Value, out: Option<&Path>) -> Result<(), CliError> {
    let mut txt = serde_json::to_string_pretty(value).map_err(usage)?;
    txt.push('\n');
    match out {
        Some(p) => fs::write(p, txt).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(txt.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn error_object(e: &Error) -> Value {
    json!({ "error": e.to_string() })
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

pub fn gen(a: &GenArgs) -> Result<u8, CliError> {
    let cfg = SampleConfig::new(a.m, a.n, a.seed).with_height(a.height);
    let space = cfg.space().map_err(usage)?;
    if a.k.is_some() && a.kind != GenKind::Chain {
        return Err(usage("--k is only valid with --kind chain"));
    }
    let ks: Vec<usize> = valid_indices(space).collect();
    if let Some(k) = a.k {
        if !ks.contains(&k) {
            return Err(usage(format!(
                "--k {k} outside {}..={} for (m, n) = ({}, {})",
                ks[0], space.m, space.m, space.n
            )));
        }
    }
    let mut rng = Sampler::new(&cfg);
    let mut items = Vec::with_capacity(a.count);
    for _ in 0..a.count {
        items.push(match a.kind {
            GenKind::Point => to_value(&rng.point()),
            GenKind::Pair => {
                let x = rng.point();
                let y = loop {
                    let y = rng.point();
                    if transverse(&x, &y) {
                        break y;
                    }
                };
                json!([x, y])
            }
            GenKind::Triple => {
                let (x, y, z, _) = rng.maximal_triple();
                json!([x, y, z])
            }
            GenKind::Chain => {
                let k = a.k.unwrap_or_else(|| ks[rng.index(ks.len())]);
                to_value(&rng.chain(k).map_err(usage)?.chain)
            }
            GenKind::Heis => to_value(&rng.heis_point()),
        });
    }
    emit(&Value::Array(items), a.out.as_deref())?;
    Ok(0)
}

/// An index query: a chain (index at v_inf) or a `[point, chain]` pair.
#[derive(Deserialize)]
#[serde(untagged)]
enum IndexQuery {
    AtPoint(ShilovPoint, MChain),
    AtInfinity(MChain),
}

fn triple(i: usize, v: &Value) -> Result<[ShilovPoint; 3], CliError> {
    parse(i, v)
}

pub fn inv(a: &InvArgs) -> Result<u8, CliError> {
    let items = read_items(&a.input)?;
    let mut lines = Vec::with_capacity(items.len());
    for (i, v) in items.iter().enumerate() {
        let line = match a.kind {
            InvKind::Bergmann => {
                let [x, y, z] = triple(i, v)?;
                match bergmann_index(&x, &y, &z) {
                    Ok(b) => b.to_string(),
                    Err(e) => error_object(&e).to_string(),
                }
            }
            InvKind::Cartan => {
                let [x, y, z] = triple(i, v)?;
                match cartan_invariant(&x, &y, &z) {
                    Ok(c) => format!("{c:.12}"),
                    Err(e) => error_object(&e).to_string(),
                }
            }
            InvKind::Index => match parse(i, v)? {
                IndexQuery::AtPoint(x, t) if x.space() != t.space() => {
                    error_object(&Error::SpaceMismatch).to_string()
                }
                IndexQuery::AtPoint(x, t) => intersection_index(&x, &t).to_string(),
                IndexQuery::AtInfinity(t) => vinf_index(&t).to_string(),
            },
            InvKind::Span => {
                let pts: Vec<ShilovPoint> = parse(i, v)?;
                if pts.is_empty() || pts.iter().any(|p| p.space() != pts[0].space()) {
                    return Err(usage(format!("item {i}: need points of one space")));
                }
                span_dim(&pts.iter().collect::<Vec<_>>()).to_string()
            }
        };
        lines.push(line);
    }
    let mut out = std::io::stdout().lock();
    for l in lines {
        writeln!(out, "{l}").map_err(|e| CliError::Io(e.to_string()))?;
    }
    Ok(0)
}

/// A chain, optionally with a known point on it to anchor the circle.
#[derive(Deserialize)]
#[serde(untagged)]
enum ProjectQuery {
    Anchored { chain: MChain, point: ShilovPoint },
    Bare(MChain),
}

fn project(q: ProjectQuery) -> Result<Circle, Error> {
    match q {
        ProjectQuery::Bare(t) => project_chain(&t),
        ProjectQuery::Anchored { chain, point } => project_chain_at(&chain, &to_chart(&point)?),
    }
}

#[derive(Deserialize)]
struct LiftQuery {
    circle: Circle,
    point: ShilovPoint,
}

fn result_value<T: Serialize>(r: Result<T, Error>) -> Value {
    match r {
        Ok(t) => to_value(&t),
        Err(e) => error_object(&e),
    }
}

pub fn chain(a: &ChainArgs) -> Result<u8, CliError> {
    let items = read_items(&a.input)?;
    let mut out = Vec::with_capacity(items.len());
    for (i, v) in items.iter().enumerate() {
        out.push(match a.op {
            ChainOp::Through => {
                let [x, y]: [ShilovPoint; 2] = parse(i, v)?;
                result_value(chain_through(&x, &y))
            }
            ChainOp::Project => result_value(project(parse(i, v)?)),
            ChainOp::Lift => {
                let q: LiftQuery = parse(i, v)?;
                result_value(lift_circle(&q.circle, &q.point))
            }
            ChainOp::Intersect => {
                let ts: Vec<MChain> = parse(i, v)?;
                result_value(intersect_chains(&ts))
            }
        });
    }
    emit(&Value::Array(out), a.out.as_deref())?;
    Ok(0)
}

fn note(r: &CheckReport) -> String {
    r.reason
        .clone()
        .or_else(|| {
            r.first_counterexample
                .as_ref()
                .map(|c| format!("trial {}: {}", c.trial, c.message))
        })
        .unwrap_or_default()
}

pub fn check(a: &CheckArgs) -> Result<u8, CliError> {
    let cfg = SampleConfig::new(a.m, a.n, a.seed).with_height(a.height);
    cfg.space().map_err(usage)?;
    let ids: Vec<&str> = a
        .suite
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if ids.is_empty() {
        return Err(usage("--suite is empty"));
    }
    let reports = run_suite(&ids, &cfg, a.trials).map_err(usage)?;
    let mut out = std::io::stdout().lock();
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    if a.json {
        for r in &reports {
            writeln!(out, "{}", serde_json::to_string(r).map_err(usage)?).map_err(io)?;
        }
    } else {
        writeln!(
            out,
            "{:<6} {:<6} {:>7} {:>8} {:>9}  note",
            "check", "status", "trials", "failures", "ms"
        )
        .map_err(io)?;
        for r in &reports {
            let status = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            writeln!(
                out,
                "{:<6} {:<6} {:>7} {:>8} {:>9}  {}",
                r.check,
                status,
                r.trials,
                r.failures,
                r.elapsed_ms,
                note(r)
            )
            .map_err(io)?;
        }
    }
    Ok(match suite_status(&reports) {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Skip => 3,
    })
}
