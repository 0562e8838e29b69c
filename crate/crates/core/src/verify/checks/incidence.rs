//! Generic intersections of chains and the 3m-span condition.

use crate::chains::{
    expected_dims, generic_intersection_dims, intersect_chains, oo_length, triple_span_generic,
};
use crate::shilov::{chain_through, member, transverse, MChain, ShilovPoint};
use crate::verify::{Ctx, Failure};
use crate::Error;

const RESAMPLE: usize = 50;

/// A chart point transverse to all of `others`.
fn transverse_point(ctx: &mut Ctx, others: &[&ShilovPoint]) -> Result<ShilovPoint, Failure> {
    for _ in 0..RESAMPLE {
        let x = ctx.rng.chart_point();
        if others.iter().all(|o| transverse(&x, o)) {
            return Ok(x);
        }
        ctx.count("resamples");
    }
    Err(Failure::new(
        "no transverse point found",
        serde_json::Value::Null,
    ))
}

/// `z` and `len` points transverse to it, with the chains `T_{z, x_i}`.
fn configuration(
    ctx: &mut Ctx,
    len: usize,
) -> Result<(ShilovPoint, Vec<ShilovPoint>, Vec<MChain>), Failure> {
    let z = ctx.rng.chart_point();
    let mut xs = Vec::with_capacity(len);
    let mut ts = Vec::with_capacity(len);
    for _ in 0..len {
        let x = transverse_point(ctx, &[&z])?;
        ts.push(chain_through(&z, &x)?);
        xs.push(x);
    }
    Ok((z, xs, ts))
}

pub fn oo(ctx: &mut Ctx) -> Result<(), Failure> {
    let s = ctx.space;
    let len = oo_length(s.m, s.n).expect("n > m");
    let (z, xs, ts) = configuration(ctx, len)?;
    let dims = generic_intersection_dims(&z, &xs)?;
    let want = expected_dims(s.m, s.n, len);
    if *dims.last().expect("nonempty") == s.m {
        let got = intersect_chains(&ts)?;
        ensure!(got == z, "intersection of the chains is not z", { "z": z, "xs": xs });
    }
    if dims != want {
        return Err(Failure::soft(
            "dimension sequence is not the generic one",
            serde_json::json!({ "dims": dims, "expected": want, "z": z, "xs": xs }),
        ));
    }
    ctx.count("generic");
    Ok(())
}

pub fn ic(ctx: &mut Ctx) -> Result<(), Failure> {
    let s = ctx.space;
    let len = oo_length(s.m, s.n).expect("n > m");
    let (z, xs, ts) = configuration(ctx, len)?;
    for t in &ts {
        ensure!(member(&z, t), "z is not on its chain");
    }
    match intersect_chains(&ts) {
        Ok(p) => ensure!(p == z, "recovered the wrong point", { "z": z, "xs": xs }),
        Err(Error::NoCommonPoint) => ctx.count("nongeneric_configuration"),
        Err(e) => return Err(e.into()),
    }

    // a single chain is not a point
    ensure!(
        matches!(intersect_chains(&ts[..1]), Err(Error::NoCommonPoint)),
        "one chain gave a point"
    );

    // chains through unrelated pairs share no point
    let a = ctx.rng.chart_point();
    let b = transverse_point(ctx, &[&a])?;
    let c = ctx.rng.chart_point();
    let d = transverse_point(ctx, &[&c])?;
    let pair = [chain_through(&a, &b)?, chain_through(&c, &d)?];
    match intersect_chains(&pair) {
        Err(Error::NoCommonPoint) => {}
        Ok(p) => {
            ensure!(
                member(&p, &pair[0]) && member(&p, &pair[1]),
                "common point not on both chains"
            );
            ctx.count("unrelated_chains_meet");
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

pub fn easy(ctx: &mut Ctx) -> Result<(), Failure> {
    let a = ctx.rng.chart_point();
    let b = ctx.rng.chart_point();
    let w = ctx.rng.chart_point();
    ensure!(triple_span_generic(&a, &b, &w)?, "generic triple does not span 3m", { "a": a, "b": b, "w": w });
    let (x, y, z, _) = ctx.rng.maximal_triple();
    ensure!(!triple_span_generic(&x, &y, &z)?, "coplanar triple spans 3m", { "x": x, "y": y, "z": z });
    let t = chain_through(&a, &w)?;
    ensure!(!member(&b, &t), "third point on the chain", { "a": a, "b": b, "w": w });
    Ok(())
}
