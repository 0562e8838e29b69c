//! The standard k-vertical chains V_k and the parametrization of their points.

use num_rational::BigRational;

use crate::exactnum::{GaussianRational, RMatrix};
use crate::heisenberg::{from_chart, HeisPoint};
use crate::hermitian::{HermSpace, Subspace};
use crate::shilov::{MChain, ShilovPoint};
use crate::Error;

/// Smallest index a chain can have at v_inf: `max(0, 2m - n)`.
pub fn min_index(space: HermSpace) -> usize {
    (2 * space.m).saturating_sub(space.n)
}

pub fn valid_indices(space: HermSpace) -> std::ops::RangeInclusive<usize> {
    min_index(space)..=space.m
}

fn check_k(space: HermSpace, k: usize) -> Result<(), Error> {
    if !valid_indices(space).contains(&k) {
        return Err(Error::InvalidRegime(format!(
            "k = {k} outside {}..={} for (m, n) = ({}, {})",
            min_index(space),
            space.m,
            space.m,
            space.n
        )));
    }
    Ok(())
}

/// `V_k = <e_i (i <= k), e_j + e_{m+j-k} + e_{n+j} (k < j <= m), v_0>`.
pub fn standard_chain(space: HermSpace, k: usize) -> Result<MChain, Error> {
    check_k(space, k)?;
    let (m, n) = (space.m, space.n);
    let mut b = RMatrix::zeros(m + n, 2 * m);
    for i in 0..k {
        b[(i, i)] = 1.into();
    }
    for j in k..m {
        b[(j, j)] = 1.into();
        b[(m + j - k, j)] = 1.into();
        b[(n + j, j)] = 1.into();
    }
    for i in 0..m {
        b[(n + i, m + i)] = 1.into();
    }
    MChain::new(Subspace::new(space, &b)?)
}

/// Chart coordinates of the point of `T_k` with parameters `(E, Xu, C)`:
/// `X = [[E, Id + Xu], [0, 0]]`, `Y = [[C, (E*Xu - E*)/2], [(E - Xu*E)/2, (Xu - Xu*)/2]]`.
pub fn tk_chart(
    space: HermSpace,
    k: usize,
    e: &RMatrix,
    xu: &RMatrix,
    c: &RMatrix,
) -> Result<HeisPoint, Error> {
    check_k(space, k)?;
    let (m, n) = (space.m, space.n);
    let r = m - k;
    if e.shape() != (r, k) || xu.shape() != (r, r) || c.shape() != (k, k) {
        return Err(Error::DimensionMismatch(
            "parameter shapes do not match k".into(),
        ));
    }
    if !(&xu.adjoint() * xu).is_identity() {
        return Err(Error::Precondition("Xu must be unitary".into()));
    }
    if !c.is_anti_hermitian() {
        return Err(Error::NotAntiHermitian);
    }
    let half: GaussianRational = BigRational::new(1.into(), 2.into()).into();
    let id = RMatrix::identity(r);
    let mut x = RMatrix::zeros(n - m, m);
    x.set_block(0, 0, e);
    x.set_block(0, k, &(&id + xu));
    let mut y = RMatrix::zeros(m, m);
    y.set_block(0, 0, c);
    y.set_block(0, k, &(&(&e.adjoint() * xu) - &e.adjoint()).scale(&half));
    y.set_block(k, 0, &(e - &(&xu.adjoint() * e)).scale(&half));
    y.set_block(k, k, &(xu - &xu.adjoint()).scale(&half));
    Ok(HeisPoint { x, y })
}

pub fn parametrize_tk(
    space: HermSpace,
    k: usize,
    e: &RMatrix,
    xu: &RMatrix,
    c: &RMatrix,
) -> Result<ShilovPoint, Error> {
    from_chart(space, &tk_chart(space, k, e, xu, c)?)
}

/// The point of `T_k` with `E = 0`, `Xu = Id`, `C = 0`; its chart is `(X, 0)`.
pub fn base_point(space: HermSpace, k: usize) -> Result<HeisPoint, Error> {
    let r = space.m - k.min(space.m);
    tk_chart(
        space,
        k,
        &RMatrix::zeros(r, k),
        &RMatrix::identity(r),
        &RMatrix::zeros(k, k),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::intersection_index;
    use crate::shilov::member;

    fn sp(m: usize, n: usize) -> HermSpace {
        HermSpace::new(m, n).unwrap()
    }

    #[test]
    fn v_k_is_a_chain_with_index_k() {
        for (m, n) in [(1, 2), (2, 3), (2, 4), (3, 4), (3, 5)] {
            let s = sp(m, n);
            for k in valid_indices(s) {
                let t = standard_chain(s, k).unwrap();
                let sig = t.subspace().form_signature();
                assert_eq!((sig.pos, sig.neg, sig.zero), (m, m, 0));
                assert_eq!(intersection_index(&ShilovPoint::v_inf(s), &t), k);
            }
        }
        assert!(standard_chain(sp(2, 3), 0).is_err());
    }

    #[test]
    fn v_k_complement() {
        // V_k^⊥ = <e_{m+j} + e_{n+j+k} (j <= m-k), e_{m+l} (m-k < l <= n-m)>
        let s = sp(2, 5);
        let (m, n) = (2, 5);
        for k in valid_indices(s) {
            let mut cols = Vec::new();
            for j in 0..m - k {
                let v = &s.unit(m + j) + &s.unit(n + j + k);
                cols.push(v);
            }
            for l in m - k..n - m {
                cols.push(s.unit(m + l));
            }
            let refs: Vec<&RMatrix> = cols.iter().collect();
            let expected = Subspace::new(s, &RMatrix::hstack(&refs).unwrap()).unwrap();
            assert_eq!(
                standard_chain(s, k).unwrap().subspace().orth_complement(),
                expected
            );
        }
    }

    #[test]
    fn extreme_parameters() {
        let s = sp(2, 3);
        // k = m: the vertical fibre over 0.
        let c = RMatrix::from_fn(2, 2, |i, j| GaussianRational::from_ints(0, (i + j) as i64));
        let p = tk_chart(s, 2, &RMatrix::zeros(0, 2), &RMatrix::identity(0), &c).unwrap();
        assert!(p.x.is_zero());
        assert_eq!(p.y, c);
        // k = 0 with Xu = Id: X = [2 Id; 0].
        let s = sp(2, 4);
        let p = tk_chart(
            s,
            0,
            &RMatrix::zeros(2, 0),
            &RMatrix::identity(2),
            &RMatrix::zeros(0, 0),
        )
        .unwrap();
        let mut x = RMatrix::zeros(2, 2);
        x.set_block(0, 0, &RMatrix::identity(2).scale(&2.into()));
        assert_eq!(p.x, x);
        assert!(p.y.is_zero());
    }

    #[test]
    fn parametrized_points_lie_on_v_k() {
        let s = sp(3, 5);
        let g = GaussianRational::from_ints;
        for k in valid_indices(s) {
            let r = 3 - k;
            let e = RMatrix::from_fn(r, k, |i, j| g(i as i64 - 1, j as i64 + 2));
            // a rational unitary: permutation times a diagonal of units
            let xu = RMatrix::from_fn(r, r, |i, j| {
                if (i + 1) % r.max(1) == j {
                    g(0, 1)
                } else {
                    g(0, 0)
                }
            });
            let c = RMatrix::from_fn(k, k, |i, j| if i == j { g(0, 3) } else { g(0, 0) });
            let p = parametrize_tk(s, k, &e, &xu, &c).unwrap();
            assert!(member(&p, &standard_chain(s, k).unwrap()));
        }
    }
}
