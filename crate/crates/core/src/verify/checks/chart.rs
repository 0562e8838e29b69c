//! Chart, projection and W-space checks.

use crate::chains::{intersection_index, standard_chain, tk_chart, valid_indices, vinf_index};
use crate::exactnum::{RMatrix, Signature};
use crate::heisenberg::{
    act_l, act_n, from_chart, project, to_chart, w_from_chain, w_to_subspace, HeisPoint, NElement,
    WPoint,
};
use crate::shilov::{chain_through, member, transverse, ShilovPoint};
use crate::verify::{Ctx, Failure};

use super::pick_k;

pub fn vc(ctx: &mut Ctx) -> Result<(), Failure> {
    let s = ctx.space;
    let (m, n) = (s.m, s.n);
    let v_inf = ShilovPoint::v_inf(s);
    let a = ctx.rng.matrix(n - m, m);
    let t = w_to_subspace(s, &WPoint { a: a.clone() })?;
    ensure!(member(&v_inf, &t), "W-subspace misses v_inf", { "A": a });
    ensure!(
        t.subspace().form_signature() == Signature { pos: m, neg: m, zero: 0 },
        "W-subspace has the wrong signature",
        { "A": a }
    );
    let back = w_from_chain(&t)?;
    ensure!(back.a == a, "round trip changed A", { "A": a, "back": back.a });

    let a2 = ctx.rng.matrix(n - m, m);
    if a2 != a {
        ensure!(w_to_subspace(s, &WPoint { a: a2.clone() })? != t, "two matrices give one chain", { "A": a, "A2": a2 });
    }

    // the chain through v_inf and a chart point sits over its X coordinate
    let p = ctx.rng.heis_point();
    let tv = chain_through(&v_inf, &from_chart(s, &p)?)?;
    ensure!(w_from_chain(&tv)?.a == p.x, "vertical chain is not over X", { "point": p });
    Ok(())
}

pub fn vf(ctx: &mut Ctx) -> Result<(), Failure> {
    let s = ctx.space;
    let v_inf = ShilovPoint::v_inf(s);
    let p = ctx.rng.heis_point();
    let x = from_chart(s, &p)?;
    ensure!(to_chart(&x)? == p, "chart round trip", { "point": p });
    let t = chain_through(&v_inf, &x)?;

    // M moves points inside the fibre, freely
    let f = ctx.rng.anti_hermitian(s.m);
    let p2 = act_n(&NElement::central(s, f.clone()), &p);
    ensure!(project(&p2) == project(&p), "central element moved X", { "point": p, "F": f });
    ensure!(member(&from_chart(s, &p2)?, &t), "translate left the vertical chain", { "point": p, "F": f });
    ensure!(&p2.y - &p.y == f, "translation is not by F", { "point": p, "F": f });
    ensure!(f.is_zero() == (p2 == p), "nonzero F fixed a point", { "point": p, "F": f });

    // other fibres are disjoint from the chain
    let q = ctx.rng.heis_point();
    if q.x != p.x {
        ensure!(!member(&from_chart(s, &q)?, &t), "point of another fibre on the chain", { "point": p, "other": q });
    }

    // chart actions agree with matrix actions
    let g = ctx.rng.n_element();
    ensure!(
        from_chart(s, &act_n(&g, &p))? == x.transform(&g.matrix()),
        "N chart action differs from the matrix action",
        { "point": p, "E": g.e, "F": g.f }
    );
    let l = ctx.rng.l_element();
    ensure!(
        from_chart(s, &act_l(&l, &p))? == x.transform(&l.matrix()),
        "L chart action differs from the matrix action",
        { "point": p, "A": l.a, "B": l.b }
    );
    let g2 = ctx.rng.n_element();
    let gg = g.compose(&g2);
    ensure!(
        gg.matrix() == &g.matrix() * &g2.matrix(),
        "N group law differs from the matrix product"
    );
    ensure!(act_n(&gg, &p) == act_n(&g, &act_n(&g2, &p)), "N action is not a group action", { "point": p });
    ensure!(
        act_l(&l, &HeisPoint::origin(s)) == HeisPoint::origin(s),
        "L moved the origin"
    );
    Ok(())
}

pub fn ti(ctx: &mut Ctx) -> Result<(), Failure> {
    let s = ctx.space;
    for k in valid_indices(s) {
        ensure!(vinf_index(&standard_chain(s, k)?) == k, "standard chain has the wrong index", { "k": k });
    }
    let k = pick_k(ctx, false);
    let c = ctx.rng.chain(k)?;
    ensure!(vinf_index(&c.chain) == k, "sampled chain has the wrong index", { "k": k, "q": c.q });

    let g = ctx.rng.h_unitary();
    let gv = ShilovPoint::v_inf(s).transform(&g);
    let gt = c.chain.transform(&g);
    ensure!(intersection_index(&gv, &gt) == k, "index not invariant", { "k": k, "g": g });
    let x = ctx.rng.point();
    ensure!(
        intersection_index(&x, &c.chain) == intersection_index(&x.transform(&g), &gt),
        "index at a random point not invariant",
        { "k": k, "g": g, "x": x }
    );
    Ok(())
}

pub fn tk(ctx: &mut Ctx) -> Result<(), Failure> {
    let s = ctx.space;
    let (m, n) = (s.m, s.n);
    let k = pick_k(ctx, false);
    let r = m - k;
    let e = ctx.rng.matrix(r, k);
    let xu = ctx.rng.unitary(r);
    let c = ctx.rng.anti_hermitian(k);
    let p = tk_chart(s, k, &e, &xu, &c)?;
    let z = from_chart(s, &p)?;
    let vk = standard_chain(s, k)?;
    ensure!(z.subspace().is_isotropic(), "not isotropic", { "k": k, "E": e, "Xu": xu, "C": c });
    ensure!(member(&z, &vk), "not on T_k", { "k": k, "E": e, "Xu": xu, "C": c });
    ensure!(transverse(&z, &ShilovPoint::v_inf(s)), "not transverse to v_inf", { "k": k });

    let mut want = RMatrix::zeros(n - m, m);
    want.set_block(0, 0, &e);
    want.set_block(0, k, &(&RMatrix::identity(r) + &xu));
    ensure!(p.x == want, "projection is not [E, Id + Xu; 0, 0]", { "k": k, "X": p.x, "expected": want });
    Ok(())
}
