//! The maps β_{v_0}, β_{v_d} on the domain D, error and information spaces,
//! and the exact inverse construction. Regime n < 2m, k = 2m - n.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exactnum::RMatrix;
use crate::hermitian::{HermSpace, Subspace};
use crate::sampler::Sampler;
use crate::shilov::{sign_diagonal, transverse, MChain, ShilovPoint};
use crate::Error;

use super::stabilizer::{canonical_cm, s_map, std_complement};
use super::usub::USubspace;

/// `k = 2m - n`, or an error outside the regime n < 2m.
pub fn beta_k(space: HermSpace) -> Result<usize, Error> {
    if space.n >= 2 * space.m {
        return Err(Error::InvalidRegime(format!(
            "needs n < 2m, got (m, n) = ({}, {})",
            space.m, space.n
        )));
    }
    Ok(2 * space.m - space.n)
}

/// Base point of a chain family: v_0 or v_d for a sign pattern of d.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WBase {
    V0,
    Vd(Vec<bool>),
}

/// The chain through the base with parameter `A` (l×m):
/// `[0; Id; A*]^⊥` at v_0 and `[A*; Id; dA*]^⊥` at v_d.
pub fn w_chart_at(space: HermSpace, base: &WBase, a: &RMatrix) -> Result<MChain, Error> {
    let (m, n) = (space.m, space.n);
    let l = n - m;
    if a.shape() != (l, m) {
        return Err(Error::DimensionMismatch(format!("A must be {l}×{m}")));
    }
    let id = RMatrix::identity(l);
    let perp = match base {
        WBase::V0 => RMatrix::vstack(&[&RMatrix::zeros(m, l), &id, &a.adjoint()])?,
        WBase::Vd(plus) => {
            if plus.len() != m {
                return Err(Error::DimensionMismatch(format!("need {m} signs")));
            }
            RMatrix::vstack(&[&a.adjoint(), &id, &(&sign_diagonal(plus) * &a.adjoint())])?
        }
    };
    MChain::new(Subspace::new(space, &perp)?.orth_complement())
}

/// Inverse of [`w_chart_at`].
pub fn w_coords_at(t: &MChain, base: &WBase) -> Result<RMatrix, Error> {
    let space = t.space();
    let (m, n) = (space.m, space.n);
    let b = t.subspace().orth_complement().basis().clone();
    let q = b
        .row_block(m, n)
        .inverse()
        .ok_or_else(|| Error::Precondition("chain is not in the family".into()))?;
    let nb = &b * &q;
    let (top, bot) = (nb.row_block(0, m), nb.row_block(n, n + m));
    match base {
        WBase::V0 if top.is_zero() => Ok(bot.adjoint()),
        WBase::Vd(plus) if bot == &sign_diagonal(plus) * &top => Ok(top.adjoint()),
        _ => Err(Error::Precondition(
            "chain does not pass through the base point".into(),
        )),
    }
}

/// `A_0, A_1` of maximal rank with `A_1 A_0* - Id` unitary.
pub fn pair_in_image(a0: &RMatrix, a1: &RMatrix) -> bool {
    let l = a0.rows();
    if a1.shape() != a0.shape() || a0.rank() != l || a1.rank() != l {
        return false;
    }
    let u = &(a1 * &a0.adjoint()) - &RMatrix::identity(l);
    (&u.adjoint() * &u).is_identity()
}

fn base_point(space: HermSpace, base: &WBase) -> Result<ShilovPoint, Error> {
    match base {
        WBase::V0 => Ok(ShilovPoint::v_0(space)),
        WBase::Vd(p) => ShilovPoint::v_d(space, p),
    }
}

/// Transverse to v_0 and v_d, and `<v_0, v_d, w>` is the whole space.
pub fn in_domain(w: &ShilovPoint, plus: &[bool]) -> bool {
    let space = w.space();
    let (Ok(v0), Ok(vd)) = (base_point(space, &WBase::V0), ShilovPoint::v_d(space, plus)) else {
        return false;
    };
    transverse(w, &v0)
        && transverse(w, &vd)
        && RMatrix::hstack(&[v0.basis(), vd.basis(), w.basis()])
            .expect("rows")
            .rank()
            == space.dim()
}

/// `<base, w> ∩ v_inf`, as an m×k column basis in echelon form.
fn beta_at(w: &ShilovPoint, base: &ShilovPoint) -> RMatrix {
    let space = w.space();
    let s = Subspace::span(&[w.subspace(), base.subspace()]).expect("same space");
    let z = s
        .intersect(ShilovPoint::v_inf(space).subspace())
        .expect("same space");
    canonical_cm(&z.basis().row_block(0, space.m))
}

/// `(β_{v_0}(w), β_{v_d}(w))`, both k-dimensional subspaces of C^m.
pub fn beta(w: &ShilovPoint, plus: &[bool]) -> Result<(RMatrix, RMatrix), Error> {
    let space = w.space();
    beta_k(space)?;
    if !in_domain(w, plus) {
        return Err(Error::NotInDomain);
    }
    let b0 = beta_at(w, &ShilovPoint::v_0(space));
    let b1 = beta_at(w, &ShilovPoint::v_d(space, plus)?);
    Ok((b0, b1))
}

/// `E(w) = S(β_0, β_0) + S(β_1, β_1)`
pub fn error_space(w: &ShilovPoint, plus: &[bool]) -> Result<USubspace, Error> {
    let (b0, b1) = beta(w, plus)?;
    Ok(s_map(&b0, &b0).sum(&s_map(&b1, &b1)))
}

/// `I(w) = S(β_0^⊥, β_1^⊥)`
pub fn info_space(w: &ShilovPoint, plus: &[bool]) -> Result<USubspace, Error> {
    let (b0, b1) = beta(w, plus)?;
    Ok(s_map(&std_complement(&b0), &std_complement(&b1)))
}

/// Output of [`beta_preimage`].
#[derive(Clone, Debug)]
pub struct Preimage {
    pub point: ShilovPoint,
    pub a0: RMatrix,
    pub a1: RMatrix,
    /// Random restarts used.
    pub attempts: usize,
}

const PREIMAGE_ATTEMPTS: usize = 64;

/// A point `z` of D with `β(z) = (V_0, V_1)`, built exactly.
///
/// Choose `A_0` with kernel `V_0` and `A_1` with kernel `d* V_1` such that
/// `A_1 A_0* - Id` is unitary; then `z` is a maximal isotropic subspace of
/// the intersection of the two chains, found as the radical plus the graph of
/// a map between `v_0 ∩ T_1` and `v_d ∩ T_0`.
pub fn beta_preimage(
    space: HermSpace,
    plus: &[bool],
    v0: &RMatrix,
    v1: &RMatrix,
    rng: &mut Sampler,
) -> Result<Preimage, Error> {
    let k = beta_k(space)?;
    let (m, n) = (space.m, space.n);
    let l = n - m;
    for (name, v) in [("V_0", v0), ("V_1", v1)] {
        if v.shape() != (m, k) || v.rank() != k {
            return Err(Error::DimensionMismatch(format!(
                "{name} must be an {m}×{k} matrix of rank {k}"
            )));
        }
    }
    if plus.len() != m {
        return Err(Error::DimensionMismatch(format!("need {m} signs")));
    }
    let d = sign_diagonal(plus);
    let target = (canonical_cm(v0), canonical_cm(v1));
    let k0 = std_complement(v0).adjoint();
    let k1 = std_complement(&(&d.adjoint() * v1)).adjoint();
    let pv0 = ShilovPoint::v_0(space);
    let pvd = ShilovPoint::v_d(space, plus)?;
    for attempt in 1..=PREIMAGE_ATTEMPTS {
        let a0 = &rng.invertible(l) * &k0;
        let nm = &k1 * &a0.adjoint();
        let Some(g) = unitary_completion(&nm) else {
            continue;
        };
        let a1 = &g * &k1;
        debug_assert!(pair_in_image(&a0, &a1));
        let t0 = w_chart_at(space, &WBase::V0, &a0)?;
        let t1 = w_chart_at(space, &WBase::Vd(plus.to_vec()), &a1)?;
        let s = t0.subspace().intersect(t1.subspace())?;
        let rad = s.intersect(&s.orth_complement())?;
        let j0 = pv0.subspace().intersect(t1.subspace())?;
        let j1 = pvd.subspace().intersect(t0.subspace())?;
        if s.dim() != m + k || rad.dim() != l || j0.dim() != k || j1.dim() != k {
            continue;
        }
        let p = space.gram(j0.basis(), j1.basis());
        let Some(p_inv) = p.inverse() else { continue };
        let sigma = rng.anti_hermitian(k);
        let graph = j0.basis() + &(&(j1.basis() * &p_inv) * &sigma);
        let zb = RMatrix::hstack(&[rad.basis(), &graph])?;
        let Ok(z) = ShilovPoint::from_basis(space, &zb) else {
            continue;
        };
        if !in_domain(&z, plus) {
            continue;
        }
        if beta(&z, plus)? == target {
            return Ok(Preimage {
                point: z,
                a0,
                a1,
                attempts: attempt,
            });
        }
    }
    Err(Error::Precondition(
        "no preimage found within the attempt budget".into(),
    ))
}

/// Invertible `G` with `G N - Id` unitary: `G N = Id + U` for the reflection
/// `U = Id - 2Π`, `Π` the orthogonal projector onto `ker N`.
fn unitary_completion(nm: &RMatrix) -> Option<RMatrix> {
    let l = nm.rows();
    let ker = nm.kernel();
    let id = RMatrix::identity(l);
    let proj = if ker.cols() == 0 {
        RMatrix::zeros(l, l)
    } else {
        let gram_inv = (&ker.adjoint() * &ker).inverse()?;
        &(&ker * &gram_inv) * &ker.adjoint()
    };
    let mm = (&id - &proj).scale(&2.into());
    let p1 = std_complement(&ker);
    let lhs = RMatrix::hstack(&[&(nm * &p1), &std_complement(nm)]).ok()?;
    let rhs = RMatrix::hstack(&[&(&mm * &p1), &std_complement(&mm)]).ok()?;
    let g = &rhs * &lhs.inverse()?;
    debug_assert!(!g.determinant().is_zero());
    Some(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::{SampleConfig, Sampler};

    #[test]
    fn w_chart_round_trip_and_index() {
        let s = HermSpace::new(2, 3).unwrap();
        let a = RMatrix::from_int_rows(&[&[1, 2]]);
        for base in [WBase::V0, WBase::Vd(vec![true, false])] {
            let t = w_chart_at(s, &base, &a).unwrap();
            assert_eq!(w_coords_at(&t, &base).unwrap(), a);
            assert_eq!(crate::chains::vinf_index(&t), 1);
        }
        let t = w_chart_at(s, &WBase::V0, &RMatrix::zeros(1, 2)).unwrap();
        assert_eq!(t.subspace(), &Subspace::coordinate(s, &[0, 1, 3, 4]));
        assert_eq!(crate::chains::vinf_index(&t), 2);
    }

    #[test]
    fn pair_examples() {
        let a0 = RMatrix::from_int_rows(&[&[1, 0]]);
        let a1 = RMatrix::from_int_rows(&[&[2, 0]]);
        assert!(pair_in_image(&a0, &a1));
        assert!(!pair_in_image(&a0, &RMatrix::from_int_rows(&[&[3, 0]])));
        assert!(!pair_in_image(&RMatrix::zeros(1, 2), &a1));
    }

    #[test]
    fn preimage_of_standard_position() {
        let s = HermSpace::new(2, 3).unwrap();
        let mut rng = Sampler::new(&SampleConfig::new(2, 3, 11));
        let zk = RMatrix::identity(2).col_block(0, 1);
        let plus = [true, true];
        let pre = beta_preimage(s, &plus, &zk, &zk, &mut rng).unwrap();
        assert!(in_domain(&pre.point, &plus));
        assert_eq!(beta(&pre.point, &plus).unwrap(), (zk.clone(), zk.clone()));
        assert!(pair_in_image(&pre.a0, &pre.a1));
        assert_eq!(
            error_space(&pre.point, &plus).unwrap(),
            USubspace::e_k(2, 1)
        );
    }
}
