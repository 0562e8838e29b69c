//! Stabilizers, circles, lifts and the map S.

use num_traits::{One, Zero};

use crate::chains::{
    base_point, central_translate, chain_stabilizer_m, chain_stabilizer_oracle, circle_contains,
    circle_equal, fiber, lift_circle, project_chain, project_chain_at, s_map, stabilizer_via,
    standard_chain, u_basis, vertical_part, USubspace,
};
use crate::exactnum::{GaussianRational, RMatrix};
use crate::heisenberg::{act_l, from_chart, to_chart, HeisPoint};
use crate::hermitian::HermSpace;
use crate::sampler::Sampler;
use crate::shilov::{member, ShilovPoint};
use crate::verify::{Ctx, Failure};
use crate::Error;

use super::pick_k;

fn scale_col(a: &mut RMatrix, j: usize, c: &GaussianRational) {
    for i in 0..a.rows() {
        a[(i, j)] = &a[(i, j)] * c;
    }
}

fn s0_matrix(a: &RMatrix, u: &RMatrix, c22: &RMatrix) -> RMatrix {
    let mid = RMatrix::block_diag(&[u, c22]);
    let a_inv_adj = a.inverse().expect("invertible").adjoint();
    RMatrix::block_diag(&[a, &mid, &a_inv_adj])
}

/// An element of determinant one of the form
/// `blockdiag(A, diag(U, C), A^{-*})`, `A = [[Y, X], [0, U]]`, `U` and `C`
/// unitary of sizes `m-k` and `n-2m+k`.
pub(super) fn s0_element(rng: &mut Sampler, space: HermSpace, k: usize) -> RMatrix {
    let (m, n) = (space.m, space.n);
    let r = m - k;
    let c = n + k - 2 * m;
    loop {
        let y = rng.invertible(k);
        let x = rng.matrix(k, r);
        let u = if k == 0 && c == 0 {
            rng.special_unitary(r)
        } else {
            rng.unitary(r)
        };
        let mut c22 = rng.unitary(c);
        let mut a = RMatrix::zeros(m, m);
        a.set_block(0, 0, &y);
        a.set_block(0, k, &x);
        a.set_block(k, k, &u);
        let delta = s0_matrix(&a, &u, &c22).determinant();
        if !delta.is_one() {
            if c > 0 {
                scale_col(&mut c22, 0, &delta.inv().expect("unit"));
            } else if k > 0 {
                // scaling a column of A by λ multiplies the determinant by λ/conj(λ)
                let lambda = GaussianRational::one() + delta.conj();
                if lambda.is_zero() {
                    continue;
                }
                scale_col(&mut a, 0, &lambda);
            }
        }
        let g = s0_matrix(&a, &u, &c22);
        if g.determinant().is_one() {
            return g;
        }
    }
}

/// Whether `g` has the block form of [`s0_element`] (determinant aside).
pub(super) fn in_s0_form(g: &RMatrix, space: HermSpace, k: usize) -> bool {
    let (m, n) = (space.m, space.n);
    let l = n - m;
    let r = m - k;
    let a = g.submatrix(0, m, 0, m);
    let mid = g.submatrix(m, n, m, n);
    let Some(a_inv) = a.inverse() else {
        return false;
    };
    if g != &RMatrix::block_diag(&[&a, &mid, &a_inv.adjoint()]) {
        return false;
    }
    let u = a.submatrix(k, m, k, m);
    let unitary = |b: &RMatrix| (&b.adjoint() * b).is_identity();
    a.submatrix(k, m, 0, k).is_zero()
        && unitary(&u)
        && unitary(&mid)
        && mid.submatrix(0, r, 0, r) == u
        && mid.submatrix(0, r, r, l).is_zero()
        && mid.submatrix(r, l, 0, r).is_zero()
}

pub fn s0(ctx: &mut Ctx) -> Result<(), Failure> {
    let s = ctx.space;
    let k = pick_k(ctx, false);
    let g = s0_element(&mut ctx.rng, s, k);
    let tk = standard_chain(s, k)?;
    ensure!(s.is_h_unitary(&g), "not h-unitary", { "k": k, "g": g });
    ensure!(g.determinant().is_one(), "determinant is not one", { "k": k, "g": g });
    ensure!(in_s0_form(&g, s, k), "sampled element fails the form test", { "k": k, "g": g });
    for (name, p) in [
        ("v_inf", ShilovPoint::v_inf(s)),
        ("v_0", ShilovPoint::v_0(s)),
    ] {
        ensure!(p.transform(&g) == p, format!("{name} moved"), { "k": k, "g": g });
    }
    ensure!(tk.transform(&g) == tk, "T_k moved", { "k": k, "g": g });

    // converse on L: the form test and fixing T_k agree
    let l = ctx.rng.l_element().matrix();
    let fixes = tk.transform(&l) == tk;
    ensure!(fixes == in_s0_form(&l, s, k), "form test disagrees with stabilization", { "k": k, "l": l });
    if fixes {
        ctx.count("converse_in_form");
    }
    Ok(())
}

pub fn s1(ctx: &mut Ctx) -> Result<(), Failure> {
    let s = ctx.space;
    let k = pick_k(ctx, true);
    let tk = standard_chain(s, k)?;
    let bp = base_point(s, k)?;
    let ck = project_chain_at(&tk, &bp)?;
    let v_inf = ShilovPoint::v_inf(s);
    let v_0 = ShilovPoint::v_0(s);
    let bpt = from_chart(s, &bp)?;

    let s0 = s0_element(&mut ctx.rng, s, k);
    let f = ctx.rng.central_element();
    let g = &f.matrix() * &s0;
    ensure!(v_inf.transform(&g) == v_inf, "m s_0 moved v_inf", { "k": k, "g": g });
    ensure!(to_chart(&v_0.transform(&g))?.x.is_zero(), "m s_0 moved o", { "k": k, "g": g });
    let c2 = project_chain_at(&tk.transform(&g), &to_chart(&bpt.transform(&g))?)?;
    ensure!(circle_equal(&ck, &c2), "m s_0 moved C_k", { "k": k, "g": g });

    // a non-central N part moves o
    let ne = ctx.rng.n_element();
    if !ne.e.is_zero() {
        let q = &ne.matrix() * &s0;
        ensure!(!to_chart(&v_0.transform(&q))?.x.is_zero(), "non-central element fixed o", { "k": k, "q": q });
    }

    // an element of L fixing C_k fixes T_k: the lift through v_0 is unique
    let le = ctx.rng.l_element();
    let lt = tk.transform(&le.matrix());
    let c3 = project_chain_at(&lt, &act_l(&le, &bp))?;
    ensure!(circle_equal(&ck, &c3) == (lt == tk), "L element fixes C_k but not T_k", { "k": k, "A": le.a, "B": le.b });
    Ok(())
}

const UM_SEARCH: usize = 50;
const UM_SAME: usize = 200;

/// `g - Id` unitary.
fn in_id_plus_u(g: &RMatrix) -> bool {
    let u = g - &RMatrix::identity(g.rows());
    (&u.adjoint() * &u).is_identity()
}

pub fn um(ctx: &mut Ctx) -> Result<(), Failure> {
    let l = ctx.space.m;
    let id = RMatrix::identity(l);
    let c = ctx.rng.unitary(l);
    let a = loop {
        let a = ctx.rng.unitary(l);
        if a != c {
            break a;
        }
    };
    let (ca, aa) = (c.clone(), a.adjoint());
    let found = (1..=UM_SEARCH).find(|_| {
        let x = ctx.rng.unitary(l);
        !in_id_plus_u(&(&(&ca * &(&id + &x)) * &aa))
    });
    let Some(tries) = found else {
        return Err(Failure::new(
            "no violating X within the search budget",
            serde_json::json!({ "C": c, "A": a }),
        ));
    };
    ctx.count_n("search_attempts", tries as u64);

    let cc = c.adjoint();
    for _ in 0..UM_SAME {
        let x = ctx.rng.unitary(l);
        ensure!(in_id_plus_u(&(&(&c * &(&id + &x)) * &cc)), "C (Id + X) C* left Id + U", { "C": c, "X": x });
    }
    Ok(())
}

pub fn lift(ctx: &mut Ctx) -> Result<(), Failure> {
    let s = ctx.space;
    let m = s.m;
    let k = pick_k(ctx, true);
    let sc = ctx.rng.chain(k)?;
    let (t, p) = (&sc.chain, &sc.point);
    let x = from_chart(s, p)?;
    let c = project_chain_at(t, p)?;
    ensure!(c.k == k, "circle has the wrong k", { "k": k, "circle": c });
    ensure!(lift_circle(&c, &x)? == *t, "lift through the point is not the chain", { "chain": t, "point": p });
    ensure!(
        lift_circle(&c, &from_chart(s, &c.marked)?)? == c.witness,
        "lift through the marked point is not the witness",
        { "circle": c }
    );

    let f = ctx.rng.anti_hermitian(m);
    let p2 = HeisPoint {
        x: p.x.clone(),
        y: &p.y + &f,
    };
    let t2 = central_translate(t, &f);
    ensure!(lift_circle(&c, &from_chart(s, &p2)?)? == t2, "lift through a translate", { "chain": t, "F": f });
    ensure!(circle_equal(&c, &project_chain_at(&t2, &p2)?), "translate has another circle", { "chain": t, "F": f });

    // among the central translates only the M_T-orbit passes through x
    let mt = chain_stabilizer_m(t);
    for b in u_basis(m) {
        let tb = central_translate(t, &b);
        let inside = mt.contains(&b);
        ensure!(member(&x, &tb) == inside, "translate through the point outside M_T", { "chain": t, "F": b });
        ensure!((tb == *t) == inside, "translate equality disagrees with M_T", { "chain": t, "F": b });
    }

    let q = ctx.rng.heis_point();
    if !circle_contains(&c, &q.x) {
        ensure!(
            matches!(lift_circle(&c, &from_chart(s, &q)?), Err(Error::NotOnCircle)),
            "lift off the circle did not fail",
            { "circle": c, "point": q }
        );
    }

    match project_chain(t) {
        Ok(c2) => {
            ensure!(circle_equal(&c, &c2), "searched projection differs", { "chain": t });
            ctx.count("searched_projection");
        }
        Err(Error::NoRationalPoint) => ctx.count("no_rational_point"),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

pub fn err(ctx: &mut Ctx) -> Result<(), Failure> {
    let s = ctx.space;
    let m = s.m;
    let k = pick_k(ctx, false);
    ensure!(chain_stabilizer_m(&standard_chain(s, k)?) == USubspace::e_k(m, k), "M_{T_k} != E_k", { "k": k });

    let sc = ctx.rng.chain(k)?;
    let (t, p) = (&sc.chain, &sc.point);
    let mt = chain_stabilizer_m(t);
    ensure!(mt.dim() == k * k, "M_T has the wrong dimension", { "chain": t });
    ensure!(mt == chain_stabilizer_oracle(t), "M_T differs from the invariance oracle", { "chain": t });

    // any a with a(Z_T) = Z_k gives the same subspace
    let z = vertical_part(t);
    let zk = RMatrix::identity(m).col_block(0, k);
    for _ in 0..2 {
        let a = loop {
            let ext = ctx.rng.matrix(m, m - k);
            if let Some(a) = RMatrix::hstack(&[&z, &ext])?.inverse() {
                break a;
            }
        };
        ensure!(&a * &z == zk, "a does not map Z_T to Z_k");
        ensure!(stabilizer_via(&a, k)? == mt, "M_T depends on a", { "chain": t, "a": a });
    }

    let ne = ctx.rng.n_element();
    ensure!(chain_stabilizer_m(&t.transform(&ne.matrix())) == mt, "M_nT != M_T", { "chain": t, "E": ne.e, "F": ne.f });
    let le = ctx.rng.l_element();
    ensure!(
        chain_stabilizer_m(&t.transform(&le.matrix())) == mt.conjugate(&le.a),
        "M_lT != A M_T A*",
        { "chain": t, "A": le.a, "B": le.b }
    );

    // fibre of T over X is the M_T-orbit of x
    let (y0, ker) = fiber(t, &p.x)
        .ok_or_else(|| Failure::new("empty fibre", serde_json::json!({ "chain": t })))?;
    ensure!(ker == mt, "fibre directions differ from M_T", { "chain": t });
    ensure!(
        member(&from_chart(s, &HeisPoint { x: p.x.clone(), y: y0 })?, t),
        "particular fibre solution off the chain",
        { "chain": t }
    );
    for b in mt.basis() {
        let q = HeisPoint {
            x: p.x.clone(),
            y: &p.y + &b,
        };
        ensure!(member(&from_chart(s, &q)?, t), "M_T moved a point off the chain", { "chain": t, "F": b });
        ensure!(central_translate(t, &b) == *t, "M_T element moved the chain", { "chain": t, "F": b });
    }
    let f = ctx.rng.anti_hermitian(m);
    if !mt.contains(&f) {
        let q = HeisPoint {
            x: p.x.clone(),
            y: &p.y + &f,
        };
        ensure!(!member(&from_chart(s, &q)?, t), "translate outside M_T stayed on the chain", { "chain": t, "F": f });
        ensure!(central_translate(t, &f) != *t, "element outside M_T fixed the chain", { "chain": t, "F": f });
    }
    Ok(())
}

pub fn smap(ctx: &mut Ctx) -> Result<(), Failure> {
    let m = ctx.space.m;
    let id = RMatrix::identity(m);
    for k in 0..=m {
        let zk = id.col_block(0, k);
        ensure!(s_map(&zk, &zk) == USubspace::e_k(m, k), "S(Z_k, Z_k) != E_k", { "k": k });
    }
    ensure!(s_map(&id, &id) == USubspace::full(m), "S(C^m, C^m) != u(m)");
    ensure!(
        s_map(&RMatrix::zeros(m, 0), &id) == USubspace::zero(m),
        "S(0, C^m) != 0"
    );

    let k1 = ctx.rng.index(m + 1);
    let k2 = ctx.rng.index(m + 1);
    let z1 = ctx.rng.subspace_basis(m, k1);
    let z2 = ctx.rng.subspace_basis(m, k2);
    let sz = s_map(&z1, &z2);
    ensure!(sz == s_map(&z2, &z1), "S is not symmetric", { "Z1": z1, "Z2": z2 });

    // random vectors of Z_1, Z_2 give elements of S and eventually span it
    let mut acc = USubspace::zero(m);
    for _ in 0..4 * m * m {
        let u = &z1 * &ctx.rng.matrix(k1, 1);
        let v = &z2 * &ctx.rng.matrix(k2, 1);
        let e = &(&u * &v.adjoint()) - &(&v * &u.adjoint());
        ensure!(sz.contains(&e), "z1 z2* - z2 z1* outside S", { "Z1": z1, "Z2": z2, "z1": u, "z2": v });
        acc = acc.sum(&USubspace::span(m, &[e]));
        if acc == sz {
            break;
        }
    }
    ensure!(acc == sz, "random elements do not span S", { "Z1": z1, "Z2": z2 });

    let p = ctx.rng.invertible(k1);
    let q = ctx.rng.invertible(k2);
    ensure!(s_map(&(&z1 * &p), &(&z2 * &q)) == sz, "S depends on the bases", { "Z1": z1, "Z2": z2 });
    let u = ctx.rng.unitary(m);
    ensure!(s_map(&(&u * &z1), &(&u * &z2)) == sz.conjugate(&u), "S is not unitarily covariant", { "Z1": z1, "Z2": z2, "U": u });
    Ok(())
}
