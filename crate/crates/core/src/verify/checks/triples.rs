//! Triple invariants and the signature cross-check.

use num_rational::BigRational;

use crate::exactnum::{float_signature, signature, GaussianRational, RMatrix, Signature};
use crate::hermitian::HermSpace;
use crate::shilov::{bergmann_index, cartan_invariant, span_dim, transverse, ShilovPoint};
use crate::verify::{Ctx, Failure};
use crate::Error;

const CARTAN_TOL: f64 = 1e-9;
const SIGNATURE_TOL: f64 = 1e-8;

/// The index of `(v_inf, v_d, v_0)` predicted blockwise by the rank-one
/// Cartan invariant.
pub(crate) fn vd_oracle(plus: &[bool]) -> Result<i64, Error> {
    let s = HermSpace::new(1, 1)?;
    plus.iter()
        .map(|&p| {
            let c = cartan_invariant(
                &ShilovPoint::v_inf(s),
                &ShilovPoint::v_d(s, &[p])?,
                &ShilovPoint::v_0(s),
            )?;
            Ok(c.round() as i64)
        })
        .sum()
}

const PERMS: [([usize; 3], i64); 6] = [
    ([0, 1, 2], 1),
    ([1, 2, 0], 1),
    ([2, 0, 1], 1),
    ([1, 0, 2], -1),
    ([0, 2, 1], -1),
    ([2, 1, 0], -1),
];

pub fn berg(ctx: &mut Ctx) -> Result<(), Failure> {
    let s = ctx.space;
    let m = s.m as i64;
    let (x, y, z, plus) = ctx.rng.maximal_triple();
    let idx = bergmann_index(&x, &y, &z)?;
    let oracle = vd_oracle(&plus)?;
    ensure!(idx == oracle, "index differs from the blockwise Cartan oracle", { "plus": plus, "index": idx, "oracle": oracle });
    ensure!(idx.abs() <= m && (idx - m) % 2 == 0, "index out of range", { "index": idx });
    let std = bergmann_index(
        &ShilovPoint::v_inf(s),
        &ShilovPoint::v_d(s, &plus)?,
        &ShilovPoint::v_0(s),
    )?;
    ensure!(std == idx, "index of the standard triple differs", { "plus": plus });

    let pts = [&x, &y, &z];
    for (p, sign) in PERMS {
        let v = bergmann_index(pts[p[0]], pts[p[1]], pts[p[2]])?;
        ensure!(v == sign * idx, "not alternating", { "perm": p, "index": idx, "permuted": v });
    }
    let g = ctx.rng.h_unitary();
    let moved = bergmann_index(&x.transform(&g), &y.transform(&g), &z.transform(&g))?;
    ensure!(moved == idx, "not invariant", { "g": g, "index": idx, "moved": moved });

    // cocycle identity on four coplanar points
    let h = ctx.rng.h_unitary();
    let q: Vec<ShilovPoint> = ctx
        .rng
        .coplanar_points(4)
        .iter()
        .map(|p| p.transform(&h))
        .collect();
    let b = |i: usize, j: usize, k: usize| bergmann_index(&q[i], &q[j], &q[k]);
    let sum = b(1, 2, 3)? - b(0, 2, 3)? + b(0, 1, 3)? - b(0, 1, 2)?;
    ensure!(sum == 0, "cocycle identity fails", { "points": q, "sum": sum });
    Ok(())
}

/// Three pairwise transverse points, maximal on even trials.
fn car_triple(ctx: &mut Ctx) -> (ShilovPoint, ShilovPoint, ShilovPoint) {
    if ctx.trial.is_multiple_of(2) {
        let (x, y, z, _) = ctx.rng.maximal_triple();
        return (x, y, z);
    }
    loop {
        let (x, y, z) = (ctx.rng.point(), ctx.rng.point(), ctx.rng.point());
        if transverse(&x, &y) && transverse(&y, &z) && transverse(&x, &z) {
            return (x, y, z);
        }
        ctx.count("resamples");
    }
}

pub fn car(ctx: &mut Ctx) -> Result<(), Failure> {
    let (x, y, z) = car_triple(ctx);
    let c = cartan_invariant(&x, &y, &z)?;
    ensure!(c.abs() <= 1.0 + CARTAN_TOL, "Cartan invariant out of range", { "c": c });
    let float_max = (c.abs() - 1.0).abs() <= CARTAN_TOL;
    let idx = match bergmann_index(&x, &y, &z) {
        Ok(v) => Some(v),
        Err(Error::NotCoplanar) => None,
        Err(e) => return Err(e.into()),
    };
    let exact_max = span_dim(&[&x, &y, &z]) == 2 && idx.is_some_and(|v| v.abs() == 1);
    ensure!(float_max == exact_max, "Cartan and exact maximality disagree", { "x": x, "y": y, "z": z, "c": c, "index": idx });
    if let Some(v) = idx.filter(|_| exact_max) {
        ensure!(c.round() as i64 == v, "Cartan sign differs from the index", { "c": c, "index": v });
        ctx.count("maximal");
    } else {
        ctx.count("generic");
    }
    Ok(())
}

/// Random Hermitian matrix of size 2..=8; every other size class is built as
/// `B D B*` with a known signature.
pub fn xsig(ctx: &mut Ctx) -> Result<(), Failure> {
    let size = 2 + (ctx.trial % 7) as usize;
    let (h, known) = if (ctx.trial / 7).is_multiple_of(2) {
        (ctx.rng.hermitian(size), None)
    } else {
        let r = ctx.rng.index(size + 1);
        let b = ctx.rng.subspace_basis(size, r);
        let ds: Vec<i64> = (0..r)
            .map(|_| {
                if ctx.rng.coin(0.5) {
                    ctx.rng.int(1, 9)
                } else {
                    -ctx.rng.int(1, 9)
                }
            })
            .collect();
        let d = RMatrix::diag(
            &ds.iter()
                .map(|&v| GaussianRational::real(BigRational::from_integer(v.into())))
                .collect::<Vec<_>>(),
        );
        let pos = ds.iter().filter(|&&v| v > 0).count();
        (
            &(&b * &d) * &b.adjoint(),
            Some(Signature {
                pos,
                neg: r - pos,
                zero: size - r,
            }),
        )
    };
    let exact = signature(&h)?;
    let float = float_signature(&h, SIGNATURE_TOL);
    ensure!(exact == float, "exact and float signatures differ", { "H": h, "exact": format!("{exact:?}"), "float": format!("{float:?}") });
    if let Some(k) = known {
        ensure!(exact == k, "signature differs from the congruence oracle", { "H": h, "exact": format!("{exact:?}") });
    }
    Ok(())
}
