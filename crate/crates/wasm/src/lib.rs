//! Browser bindings: triple invariants and generic chain intersections.
//!
//! Every entry point returns a JSON string so the page can render it as is.

use chaingeo::chains::{
    expected_dims, generic_intersection_dims, intersect_chains, oo_length, triple_span_generic,
};
use chaingeo::hermitian::HermSpace;
use chaingeo::sampler::{SampleConfig, Sampler};
use chaingeo::shilov::{
    bergmann_index, cartan_invariant, chain_through, span_dim, transverse, ShilovPoint,
};
use chaingeo::Error;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn space(m: usize, n: usize) -> Result<HermSpace, String> {
    HermSpace::new(m, n).map_err(|e| e.to_string())
}

fn ok_or_error<T: Into<Value>>(r: Result<T, Error>) -> Value {
    match r {
        Ok(v) => v.into(),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn render(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

/// `(v_inf, v_d, v_0)` with `d = diag(±i)`; `signs` is a string of `+`/`-`.
pub fn standard_triple(m: usize, n: usize, signs: &str) -> Result<Value, String> {
    let s = space(m, n)?;
    let plus: Vec<bool> = signs
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '+' => Ok(true),
            '-' => Ok(false),
            _ => Err(format!("bad sign {c:?}")),
        })
        .collect::<Result<_, _>>()?;
    let vd = ShilovPoint::v_d(s, &plus).map_err(|e| e.to_string())?;
    let (vi, v0) = (ShilovPoint::v_inf(s), ShilovPoint::v_0(s));
    let mut out = json!({
        "bergmann": ok_or_error(bergmann_index(&vi, &vd, &v0)),
        "span": span_dim(&[&vi, &vd, &v0]),
    });
    if m == 1 {
        out["cartan"] = ok_or_error(cartan_invariant(&vi, &vd, &v0));
    }
    Ok(out)
}

/// A sampled triple: maximal (moved by a random h-unitary) or three random
/// chart points.
pub fn sampled_triple(m: usize, n: usize, seed: u64, maximal: bool) -> Result<Value, String> {
    space(m, n)?;
    let mut rng = Sampler::new(&SampleConfig::new(m, n, seed));
    let (x, y, z) = if maximal {
        let (x, y, z, _) = rng.maximal_triple();
        (x, y, z)
    } else {
        (rng.chart_point(), rng.chart_point(), rng.chart_point())
    };
    let mut out = json!({
        "bergmann": ok_or_error(bergmann_index(&x, &y, &z)),
        "span": span_dim(&[&x, &y, &z]),
        "pairwise_transverse": transverse(&x, &y) && transverse(&y, &z) && transverse(&x, &z),
    });
    if m == 1 {
        out["cartan"] = ok_or_error(cartan_invariant(&x, &y, &z));
    }
    if n >= 2 * m {
        out["spans_3m"] = ok_or_error(triple_span_generic(&x, &y, &z));
    }
    Ok(out)
}

/// Chains through a random `z` and `l` random points: the dimensions of the
/// running intersections, and the common point when they close down to `z`.
pub fn chain_intersection(m: usize, n: usize, seed: u64) -> Result<Value, String> {
    space(m, n)?;
    let len = oo_length(m, n).ok_or("needs n > m")?;
    let mut rng = Sampler::new(&SampleConfig::new(m, n, seed));
    let z = rng.chart_point();
    let mut xs = Vec::with_capacity(len);
    while xs.len() < len {
        let x = rng.chart_point();
        if transverse(&x, &z) {
            xs.push(x);
        }
    }
    let dims = generic_intersection_dims(&z, &xs).map_err(|e| e.to_string())?;
    let chains = xs
        .iter()
        .map(|x| chain_through(&z, x))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let recovered = intersect_chains(&chains).map(|p| p == z);
    Ok(json!({
        "chains": len,
        "dims": dims,
        "expected": expected_dims(m, n, len),
        "recovers_z": ok_or_error(recovered),
    }))
}

#[wasm_bindgen(js_name = standardTriple)]
pub fn standard_triple_js(m: usize, n: usize, signs: &str) -> String {
    render(standard_triple(m, n, signs))
}

#[wasm_bindgen(js_name = sampledTriple)]
pub fn sampled_triple_js(m: usize, n: usize, seed: u32, maximal: bool) -> String {
    render(sampled_triple(m, n, seed as u64, maximal))
}

#[wasm_bindgen(js_name = chainIntersection)]
pub fn chain_intersection_js(m: usize, n: usize, seed: u32) -> String {
    render(chain_intersection(m, n, seed as u64))
}
