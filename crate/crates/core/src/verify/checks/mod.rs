//! The registered checks.

use std::collections::BTreeMap;

use crate::chains::{in_domain, valid_indices};
use crate::hermitian::HermSpace;
use crate::shilov::ShilovPoint;

use super::{Check, Ctx, Failure};

/// Returns a failure with JSON context when the condition is false.
macro_rules! ensure {
    ($cond:expr, $msg:expr) => {
        if !$cond {
            return Err($crate::verify::Failure::new($msg, serde_json::Value::Null));
        }
    };
    ($cond:expr, $msg:expr, { $($k:literal : $v:expr),+ $(,)? }) => {
        if !$cond {
            return Err($crate::verify::Failure::new($msg, serde_json::json!({ $($k: $v),+ })));
        }
    };
}

mod beta;
mod chart;
mod incidence;
mod stab;
mod triples;

fn any(_: HermSpace) -> Result<(), String> {
    Ok(())
}

fn beta_regime(s: HermSpace) -> Result<(), String> {
    if s.n < 2 * s.m {
        Ok(())
    } else {
        Err(format!(
            "needs n < 2m (k = 2m - n = {} <= 0)",
            2 * s.m as i64 - s.n as i64
        ))
    }
}

fn proper(s: HermSpace) -> Result<(), String> {
    if s.n > s.m {
        Ok(())
    } else {
        Err("needs n > m".into())
    }
}

fn rank_one(s: HermSpace) -> Result<(), String> {
    if s.m == 1 {
        Ok(())
    } else {
        Err("needs m = 1".into())
    }
}

fn wide(s: HermSpace) -> Result<(), String> {
    if s.n >= 2 * s.m {
        Ok(())
    } else {
        Err("needs n >= 2m".into())
    }
}

/// Allowed share of statistical misses, as a fraction of trials.
fn at_most(trials: u64, soft: u64, rate: f64, what: &str) -> Result<(), String> {
    if soft as f64 <= rate * trials as f64 {
        Ok(())
    } else {
        Err(format!(
            "{what}: {soft} of {trials} trials missed, allowed {:.1}%",
            rate * 100.0
        ))
    }
}

fn oo_rate(trials: u64, soft: u64, _: &BTreeMap<String, u64>) -> Result<(), String> {
    at_most(trials, soft, 0.01, "generic dimension sequence")
}

fn span_rate(trials: u64, soft: u64, _: &BTreeMap<String, u64>) -> Result<(), String> {
    at_most(trials, soft, 0.05, "spanning within 10 m^2 samples")
}

/// An index `k` cycling through the valid range, optionally below m.
fn pick_k(ctx: &Ctx, below_m: bool) -> usize {
    let s = ctx.space;
    let ks: Vec<usize> = valid_indices(s).filter(|&k| !below_m || k < s.m).collect();
    ks[(ctx.trial as usize) % ks.len()]
}

const DOMAIN_TRIES: usize = 200;

/// A random chart point in the domain D for the sign pattern `plus`.
fn domain_point(ctx: &mut Ctx, plus: &[bool]) -> Result<ShilovPoint, Failure> {
    for _ in 0..DOMAIN_TRIES {
        let w = ctx.rng.chart_point();
        if in_domain(&w, plus) {
            return Ok(w);
        }
        ctx.count("domain_resamples");
    }
    Err(Failure::new(
        "no domain point found",
        serde_json::Value::Null,
    ))
}

pub static REGISTRY: &[Check] = &[
    Check {
        id: "VC",
        summary: "W-space bijection round trip",
        regime: any,
        trial: chart::vc,
        finalize: None,
    },
    Check {
        id: "VF",
        summary: "vertical chains are projection fibres; chart actions",
        regime: any,
        trial: chart::vf,
        finalize: None,
    },
    Check {
        id: "TI",
        summary: "intersection index invariance and realizability",
        regime: any,
        trial: chart::ti,
        finalize: None,
    },
    Check {
        id: "TK",
        summary: "parametrization of T_k",
        regime: any,
        trial: chart::tk,
        finalize: None,
    },
    Check {
        id: "S0",
        summary: "stabilizer of (v_inf, v_0, T_k)",
        regime: any,
        trial: stab::s0,
        finalize: None,
    },
    Check {
        id: "S1",
        summary: "stabilizer of (o, C_k) in Q",
        regime: proper,
        trial: stab::s1,
        finalize: None,
    },
    Check {
        id: "UM",
        summary: "C U A* = U forces A = C",
        regime: any,
        trial: stab::um,
        finalize: None,
    },
    Check {
        id: "LIFT",
        summary: "unique lifts of circles",
        regime: proper,
        trial: stab::lift,
        finalize: None,
    },
    Check {
        id: "ERR",
        summary: "central stabilizers M_T",
        regime: any,
        trial: stab::err,
        finalize: None,
    },
    Check {
        id: "SMAP",
        summary: "the map S(Z_1, Z_2)",
        regime: any,
        trial: stab::smap,
        finalize: None,
    },
    Check {
        id: "BETA",
        summary: "beta dimensions, E(w) and I(w)",
        regime: beta_regime,
        trial: beta::beta,
        finalize: None,
    },
    Check {
        id: "C45",
        summary: "image of the chain pair map",
        regime: beta_regime,
        trial: beta::c45,
        finalize: None,
    },
    Check {
        id: "SURJ",
        summary: "beta preimage round trip",
        regime: beta_regime,
        trial: beta::surj,
        finalize: None,
    },
    Check {
        id: "SPAN",
        summary: "I(w) spans u(m)",
        regime: beta_regime,
        trial: beta::span,
        finalize: Some(span_rate),
    },
    Check {
        id: "OO",
        summary: "generic intersection dimensions",
        regime: proper,
        trial: incidence::oo,
        finalize: Some(oo_rate),
    },
    Check {
        id: "IC",
        summary: "intersection of chains",
        regime: proper,
        trial: incidence::ic,
        finalize: None,
    },
    Check {
        id: "BERG",
        summary: "triple index",
        regime: any,
        trial: triples::berg,
        finalize: None,
    },
    Check {
        id: "CAR",
        summary: "Cartan invariant vs exact maximality",
        regime: rank_one,
        trial: triples::car,
        finalize: None,
    },
    Check {
        id: "XSIG",
        summary: "exact vs float signature",
        regime: any,
        trial: triples::xsig,
        finalize: None,
    },
    Check {
        id: "EASY",
        summary: "generic triples span 3m",
        regime: wide,
        trial: incidence::easy,
        finalize: None,
    },
];
