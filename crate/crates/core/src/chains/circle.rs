//! (m,k)-circles: projections of non-vertical chains, their equality, and lifts.

use serde::{Deserialize, Serialize};

use crate::exactnum::RMatrix;
use crate::heisenberg::{from_chart, to_chart, HeisPoint, NElement};
use crate::shilov::{member, MChain, ShilovPoint};
use crate::Error;

use super::rational_point::rational_chart_point;
use super::stabilizer::{combine, real_kernel, real_rhs, real_system};
use super::usub::{u_basis, USubspace};
use super::vinf_index;

/// The projection of a k-vertical chain, k < m, stored as a witness chain
/// together with a marked chart point `(X, 0)` on it. Circles are equal when
/// their witnesses differ by a central element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circle {
    pub k: usize,
    pub witness: MChain,
    pub marked: HeisPoint,
}

/// Chart points of `t` over `x`: a particular `Y` and the real subspace of
/// u(m) of differences, or `None` if the fibre is empty.
pub fn fiber(t: &MChain, x: &RMatrix) -> Option<(RMatrix, USubspace)> {
    let space = t.space();
    let (m, n) = (space.m, space.n);
    if x.shape() != (n - m, m) {
        return None;
    }
    let wp = t.subspace().orth_complement();
    let b = wp.basis();
    let top = b.row_block(0, m).adjoint();
    let mid = b.row_block(m, n).adjoint();
    let bot = b.row_block(n, n + m).adjoint();
    // top - mid X + bot (Y + X*X/2) = 0
    let xx = &x.adjoint() * x;
    let half = crate::GaussianRational::from_fracs(1, 2, 0, 1);
    let rhs = &(&(&mid * x) - &top) - &(&bot * &xx).scale(&half);
    let basis = u_basis(m);
    let images: Vec<RMatrix> = basis.iter().map(|e| &bot * e).collect();
    let sys = real_system(&images);
    let sol = sys.solve(&real_rhs(&rhs))?;
    let coeffs: Vec<_> = (0..sol.rows()).map(|i| sol[(i, 0)].clone()).collect();
    let y = combine(&basis, &coeffs);
    let ker: Vec<RMatrix> = real_kernel(&images)
        .iter()
        .map(|c| combine(&basis, c))
        .collect();
    Some((y, USubspace::span(m, &ker)))
}

/// `(0, F) . T`
pub fn central_translate(t: &MChain, f: &RMatrix) -> MChain {
    t.transform(&NElement::central(t.space(), f.clone()).matrix())
}

/// Circle of `t`, anchored at a known chart point of `t`.
pub fn project_chain_at(t: &MChain, marked: &HeisPoint) -> Result<Circle, Error> {
    let space = t.space();
    let k = vinf_index(t);
    if k == space.m {
        return Err(Error::VerticalChain);
    }
    let p = from_chart(space, marked)?;
    if !member(&p, t) {
        return Err(Error::Precondition(
            "marked point is not on the chain".into(),
        ));
    }
    Ok(Circle {
        k,
        witness: central_translate(t, &-&marked.y),
        marked: HeisPoint {
            x: marked.x.clone(),
            y: RMatrix::zeros(space.m, space.m),
        },
    })
}

/// Circle of `t`, searching for a rational point on it.
pub fn project_chain(t: &MChain) -> Result<Circle, Error> {
    if vinf_index(t) == t.space().m {
        return Err(Error::VerticalChain);
    }
    let p = rational_chart_point(t)?;
    project_chain_at(t, &p)
}

/// Whether `x` in W_{v_inf} lies on the circle.
pub fn circle_contains(c: &Circle, x: &RMatrix) -> bool {
    fiber(&c.witness, x).is_some()
}

pub fn circle_equal(c1: &Circle, c2: &Circle) -> bool {
    if c1.k != c2.k || c1.witness.space() != c2.witness.space() {
        return false;
    }
    let Some((y, _)) = fiber(&c1.witness, &c2.marked.x) else {
        return false;
    };
    central_translate(&c1.witness, &(&c2.marked.y - &y)) == c2.witness
}

/// The unique chain through `t` projecting to `c`.
pub fn lift_circle(c: &Circle, t: &ShilovPoint) -> Result<MChain, Error> {
    let p = to_chart(t)?;
    let (y, _) = fiber(&c.witness, &p.x).ok_or(Error::NotOnCircle)?;
    Ok(central_translate(&c.witness, &(&p.y - &y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{base_point, standard_chain, valid_indices};
    use crate::exactnum::GaussianRational;
    use crate::hermitian::HermSpace;

    fn some_f(m: usize) -> RMatrix {
        let s = RMatrix::from_fn(m, m, |i, j| {
            GaussianRational::from_ints(i as i64 + 1, j as i64 - 2)
        });
        &s - &s.adjoint()
    }

    #[test]
    fn central_translates_project_to_the_same_circle() {
        for (m, n) in [(1, 2), (2, 3), (3, 5)] {
            let s = HermSpace::new(m, n).unwrap();
            for k in valid_indices(s).filter(|&k| k < m) {
                let t = standard_chain(s, k).unwrap();
                let p = base_point(s, k).unwrap();
                let c = project_chain_at(&t, &p).unwrap();
                assert!(circle_equal(&c, &c));
                let f = some_f(m);
                let t2 = central_translate(&t, &f);
                let mut p2 = p.clone();
                p2.y = &p2.y + &f;
                let c2 = project_chain_at(&t2, &p2).unwrap();
                assert!(circle_equal(&c, &c2) && circle_equal(&c2, &c));
                // lifting through the translated point gives the translated chain
                assert_eq!(lift_circle(&c, &from_chart(s, &p2).unwrap()).unwrap(), t2);
                assert_eq!(lift_circle(&c, &from_chart(s, &p).unwrap()).unwrap(), t);
                // the searched projection agrees
                assert!(circle_equal(&project_chain(&t).unwrap(), &c));
            }
        }
    }

    #[test]
    fn vertical_chain_is_rejected() {
        let s = HermSpace::new(2, 3).unwrap();
        let t = standard_chain(s, 2).unwrap();
        assert!(matches!(project_chain(&t), Err(Error::VerticalChain)));
    }
}
