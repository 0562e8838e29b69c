//! β, E(w), I(w), the chain pair map, surjectivity and spanning.

use crate::chains::{
    beta as beta_map, beta_k, beta_preimage, canonical_cm, error_space, in_domain, info_space,
    pair_in_image, stabilizer_via, vinf_index, w_coords_at, USubspace, WBase,
};
use crate::exactnum::RMatrix;
use crate::hermitian::Subspace;
use crate::shilov::{chain_through, sign_diagonal, ShilovPoint};
use crate::verify::{Ctx, Failure};

use super::domain_point;

/// `dim(<p, w> ∩ v_inf)` from ranks alone.
fn meet_dim(p: &ShilovPoint, w: &ShilovPoint) -> usize {
    let s = p.space();
    let v_inf = ShilovPoint::v_inf(s);
    let pw = RMatrix::hstack(&[p.basis(), w.basis()])
        .expect("rows")
        .rank();
    let all = RMatrix::hstack(&[p.basis(), w.basis(), v_inf.basis()])
        .expect("rows")
        .rank();
    pw + s.m - all
}

/// `a^{-1} E_k a^{-*}` where `a` maps the columns of `z` to `e_1..e_k`.
fn e_via(z: &RMatrix, ctx: &mut Ctx) -> Result<USubspace, Failure> {
    let (m, k) = z.shape();
    loop {
        let ext = ctx.rng.matrix(m, m - k);
        if let Some(a) = RMatrix::hstack(&[z, &ext])?.inverse() {
            return Ok(stabilizer_via(&a, k)?);
        }
    }
}

/// Chain parameters of `w` at v_0 and v_d.
fn coords(w: &ShilovPoint, plus: &[bool]) -> Result<(RMatrix, RMatrix), Failure> {
    let s = w.space();
    let t0 = chain_through(&ShilovPoint::v_0(s), w)?;
    let t1 = chain_through(&ShilovPoint::v_d(s, plus)?, w)?;
    Ok((
        w_coords_at(&t0, &WBase::V0)?,
        w_coords_at(&t1, &WBase::Vd(plus.to_vec()))?,
    ))
}

pub fn beta(ctx: &mut Ctx) -> Result<(), Failure> {
    let s = ctx.space;
    let k = beta_k(s)?;
    let plus = ctx.rng.signs(s.m);
    let w = domain_point(ctx, &plus)?;
    let (b0, b1) = beta_map(&w, &plus)?;
    ensure!(b0.cols() == k && b1.cols() == k, "beta components have the wrong dimension", { "w": w, "plus": plus });
    ensure!(meet_dim(&ShilovPoint::v_0(s), &w) == k, "rank count at v_0 differs", { "w": w });
    ensure!(meet_dim(&ShilovPoint::v_d(s, &plus)?, &w) == k, "rank count at v_d differs", { "w": w, "plus": plus });
    let t0 = chain_through(&ShilovPoint::v_0(s), &w)?;
    ensure!(vinf_index(&t0) == k, "chain through v_0 and w is not k-vertical", { "w": w });

    let e = error_space(&w, &plus)?;
    let i = info_space(&w, &plus)?;
    ensure!(i.orthogonal_to(&e), "I(w) is not orthogonal to E(w)", { "w": w, "plus": plus });
    let via = e_via(&b0, ctx)?.sum(&e_via(&b1, ctx)?);
    ensure!(e == via, "E(w) differs from the conjugated E_k sum", { "w": w, "plus": plus });

    // β read off the chain parameters: ker A_0 and d ker A_1
    let (a0, a1) = coords(&w, &plus)?;
    ensure!(canonical_cm(&a0.kernel()) == b0, "beta_v0 != ker A_0", { "w": w, "A0": a0 });
    let d = sign_diagonal(&plus);
    ensure!(canonical_cm(&(&d * &a1.kernel())) == b1, "beta_vd != d ker A_1", { "w": w, "A1": a1, "plus": plus });

    // w in the span of the two chains
    let span = Subspace::span(&[
        t0.subspace(),
        chain_through(&ShilovPoint::v_d(s, &plus)?, &w)?.subspace(),
    ])?;
    ensure!(span.contains(w.subspace()), "w outside the chain span");
    Ok(())
}

pub fn c45(ctx: &mut Ctx) -> Result<(), Failure> {
    let s = ctx.space;
    let (m, n) = (s.m, s.n);
    let l = n - m;
    let id = RMatrix::identity(l);
    let plus = ctx.rng.signs(m);
    let w = domain_point(ctx, &plus)?;
    let (a0, a1) = coords(&w, &plus)?;
    ensure!(pair_in_image(&a0, &a1), "pair from a domain point is not in the image", { "w": w, "A0": a0, "A1": a1 });
    let lhs = &(&(&(&a0 * &a1.adjoint()) - &id) * &(&(&a1 * &a0.adjoint()) - &id)) - &id;
    ensure!(lhs.is_zero(), "the quadratic identity fails", { "A0": a0, "A1": a1 });

    // built from a unitary: A_1 = (Id + U) (A_0 A_0*)^{-1} A_0
    let b0 = ctx.rng.subspace_basis(m, l).adjoint();
    let u = ctx.rng.unitary(l);
    let gram_inv = (&b0 * &b0.adjoint()).inverse().expect("full rank");
    let b1 = &(&(&id + &u) * &gram_inv) * &b0;
    ensure!(pair_in_image(&b0, &b1), "constructed pair rejected", { "A0": b0, "A1": b1 });

    let r0 = ctx.rng.matrix(l, m);
    let r1 = ctx.rng.matrix(l, m);
    if pair_in_image(&r0, &r1) {
        ctx.count("random_pair_in_image");
    } else {
        ctx.count("random_pair_rejected");
    }
    let scaled = b1.scale(&2.into());
    ensure!(!pair_in_image(&b0, &scaled), "scaled pair accepted", { "A0": b0, "A1": scaled });
    Ok(())
}

pub fn surj(ctx: &mut Ctx) -> Result<(), Failure> {
    let s = ctx.space;
    let m = s.m;
    let k = beta_k(s)?;
    let plus = ctx.rng.signs(m);
    let zk = RMatrix::identity(m).col_block(0, k);
    let (v0, v1) = match ctx.trial % 4 {
        0 => (zk.clone(), zk),
        1 => {
            let v = ctx.rng.subspace_basis(m, k);
            (v.clone(), v)
        }
        _ => (ctx.rng.subspace_basis(m, k), ctx.rng.subspace_basis(m, k)),
    };
    let target = (canonical_cm(&v0), canonical_cm(&v1));
    let pre = match beta_preimage(s, &plus, &v0, &v1, &mut ctx.rng) {
        Ok(p) => p,
        Err(e) => {
            return Err(Failure::new(
                format!("no preimage: {e}"),
                serde_json::json!({ "V0": v0, "V1": v1, "plus": plus }),
            ))
        }
    };
    ensure!(in_domain(&pre.point, &plus), "preimage outside D", { "V0": v0, "V1": v1, "z": pre.point });
    ensure!(beta_map(&pre.point, &plus)? == target, "beta(preimage) != target", { "V0": v0, "V1": v1, "z": pre.point });
    ensure!(pair_in_image(&pre.a0, &pre.a1), "preimage parameters not in the image", { "A0": pre.a0, "A1": pre.a1 });
    ctx.count("exact");
    ctx.count_n("approximate", 0);
    ctx.count_n("attempts", pre.attempts as u64);
    Ok(())
}

pub fn span(ctx: &mut Ctx) -> Result<(), Failure> {
    let s = ctx.space;
    let m2 = s.m * s.m;
    let plus = ctx.rng.signs(s.m);
    let mut acc = USubspace::zero(s.m);
    let mut used = 0;
    while acc.dim() < m2 && used < 50 * m2 {
        let w = domain_point(ctx, &plus)?;
        acc = acc.sum(&info_space(&w, &plus)?);
        used += 1;
    }
    ctx.count_n("samples", used as u64);
    ensure!(acc.dim() == m2, "I(w) did not span u(m) within 50 m^2 samples", { "plus": plus, "dim": acc.dim() });
    if used > 10 * m2 {
        return Err(Failure::soft(
            "needed more than 10 m^2 samples",
            serde_json::json!({ "samples": used }),
        ));
    }
    Ok(())
}
