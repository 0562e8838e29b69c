//! The chart of points transverse to v_inf, the groups N and L acting on it,
//! and the space W of chains through v_inf.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::exactnum::{GaussianRational, RMatrix};
use crate::hermitian::{HermSpace, Subspace};
use crate::shilov::{MChain, ShilovPoint};
use crate::Error;

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// Chart coordinates: `X` is (n-m)×m, `Y` is m×m anti-Hermitian.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct HeisPoint {
    #[serde(rename = "X")]
    pub x: RMatrix,
    #[serde(rename = "Y")]
    pub y: RMatrix,
}

/// A point of W_{v_inf}, i.e. a chain through v_inf, by its matrix `A`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct WPoint {
    #[serde(rename = "A")]
    pub a: RMatrix,
}

/// `(E, F)` with `F` anti-Hermitian.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NElement {
    pub e: RMatrix,
    pub f: RMatrix,
}

/// `(A, B)` with `A` invertible and `B` unitary of determinant one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LElement {
    pub a: RMatrix,
    pub b: RMatrix,
}

impl HeisPoint {
    pub fn new(x: RMatrix, y: RMatrix) -> Result<Self, Error> {
        if x.cols() != y.rows() || !y.is_square() {
            return Err(Error::DimensionMismatch("chart point shapes".into()));
        }
        if !y.is_anti_hermitian() {
            return Err(Error::NotAntiHermitian);
        }
        Ok(Self { x, y })
    }

    pub fn origin(space: HermSpace) -> Self {
        Self {
            x: RMatrix::zeros(space.n - space.m, space.m),
            y: RMatrix::zeros(space.m, space.m),
        }
    }

    fn check_space(&self, space: HermSpace) -> Result<(), Error> {
        if self.x.shape() != (space.n - space.m, space.m) || self.y.shape() != (space.m, space.m) {
            return Err(Error::DimensionMismatch(
                "chart point does not match (m, n)".into(),
            ));
        }
        Ok(())
    }
}

/// Basis `[Y + X*X/2; X; Id]` of the point with chart coordinates `p`.
pub fn chart_basis(p: &HeisPoint) -> RMatrix {
    let top = &p.y + &(&p.x.adjoint() * &p.x).scale(&half().into());
    RMatrix::vstack(&[&top, &p.x, &RMatrix::identity(p.y.rows())]).expect("shapes")
}

pub fn from_chart(space: HermSpace, p: &HeisPoint) -> Result<ShilovPoint, Error> {
    p.check_space(space)?;
    if !p.y.is_anti_hermitian() {
        return Err(Error::NotAntiHermitian);
    }
    ShilovPoint::from_basis(space, &chart_basis(p))
}

/// Chart coordinates of a basis matrix whose bottom m×m block is invertible.
pub fn chart_of_basis(space: HermSpace, b: &RMatrix) -> Result<HeisPoint, Error> {
    let (m, n) = (space.m, space.n);
    let bottom = b.row_block(n, n + m);
    let inv = bottom.inverse().ok_or(Error::NotTransverseToVinf)?;
    let nb = b * &inv;
    let x = nb.row_block(m, n);
    let y = &nb.row_block(0, m) - &(&x.adjoint() * &x).scale(&half().into());
    Ok(HeisPoint { x, y })
}

pub fn to_chart(p: &ShilovPoint) -> Result<HeisPoint, Error> {
    chart_of_basis(p.space(), p.basis())
}

impl NElement {
    pub fn new(e: RMatrix, f: RMatrix) -> Result<Self, Error> {
        if !f.is_anti_hermitian() || e.cols() != f.rows() {
            return Err(Error::NotAntiHermitian);
        }
        Ok(Self { e, f })
    }

    pub fn identity(space: HermSpace) -> Self {
        Self {
            e: RMatrix::zeros(space.n - space.m, space.m),
            f: RMatrix::zeros(space.m, space.m),
        }
    }

    /// Central element `(0, F)`.
    pub fn central(space: HermSpace, f: RMatrix) -> Self {
        Self {
            e: RMatrix::zeros(space.n - space.m, space.m),
            f,
        }
    }

    /// `[[Id, E*, F + E*E/2], [0, Id, E], [0, 0, Id]]`
    pub fn matrix(&self) -> RMatrix {
        let (l, m) = self.e.shape();
        let mut g = RMatrix::identity(2 * m + l);
        let ee = (&self.e.adjoint() * &self.e).scale(&half().into());
        g.set_block(0, m, &self.e.adjoint());
        g.set_block(0, m + l, &(&self.f + &ee));
        g.set_block(m, m + l, &self.e);
        g
    }

    /// Group law, `self * o`.
    pub fn compose(&self, o: &NElement) -> NElement {
        let cross = &(&self.e.adjoint() * &o.e) - &(&o.e.adjoint() * &self.e);
        NElement {
            e: &self.e + &o.e,
            f: &(&self.f + &o.f) + &cross.scale(&half().into()),
        }
    }

    pub fn inverse(&self) -> NElement {
        NElement {
            e: -&self.e,
            f: -&self.f,
        }
    }
}

impl LElement {
    pub fn new(a: RMatrix, b: RMatrix) -> Result<Self, Error> {
        if a.inverse().is_none() {
            return Err(Error::Precondition("A must be invertible".into()));
        }
        if !(&b.adjoint() * &b).is_identity() || b.determinant() != 1.into() && b.rows() > 0 {
            return Err(Error::Precondition(
                "B must be unitary with determinant 1".into(),
            ));
        }
        Ok(Self { a, b })
    }

    fn phase(&self) -> GaussianRational {
        let d = self.a.determinant();
        &d.conj() / &d
    }

    /// `blockdiag(A, (conj(a)/a) B, A^{-*})`, `a = det A`.
    pub fn matrix(&self) -> RMatrix {
        let a_inv_adj = self.a.inverse().expect("invertible").adjoint();
        RMatrix::block_diag(&[&self.a, &self.b.scale(&self.phase()), &a_inv_adj])
    }
}

pub fn act_n(g: &NElement, p: &HeisPoint) -> HeisPoint {
    let cross = &(&g.e.adjoint() * &p.x) - &(&p.x.adjoint() * &g.e);
    HeisPoint {
        x: &g.e + &p.x,
        y: &(&g.f + &p.y) + &cross.scale(&half().into()),
    }
}

pub fn act_l(g: &LElement, p: &HeisPoint) -> HeisPoint {
    let aa = g.a.adjoint();
    HeisPoint {
        x: &(&g.b.scale(&g.phase()) * &p.x) * &aa,
        y: &(&g.a * &p.y) * &aa,
    }
}

pub fn project(p: &HeisPoint) -> WPoint {
    WPoint { a: p.x.clone() }
}

/// The chain `[A*; Id; 0]^⊥` through v_inf.
pub fn w_to_subspace(space: HermSpace, w: &WPoint) -> Result<MChain, Error> {
    let (m, n) = (space.m, space.n);
    if w.a.shape() != (n - m, m) {
        return Err(Error::DimensionMismatch("W point must be (n-m)×m".into()));
    }
    let perp = RMatrix::vstack(&[
        &w.a.adjoint(),
        &RMatrix::identity(n - m),
        &RMatrix::zeros(m, n - m),
    ])?;
    let s = Subspace::new(space, &perp)?.orth_complement();
    MChain::new(s)
}

/// Inverse of [`w_to_subspace`]: reads `A` off the complement basis `[P; Q; 0]`.
pub fn w_from_chain(t: &MChain) -> Result<WPoint, Error> {
    let space = t.space();
    let (m, n) = (space.m, space.n);
    if !t.subspace().contains(ShilovPoint::v_inf(space).subspace()) {
        return Err(Error::Precondition("chain does not contain v_inf".into()));
    }
    let perp = t.subspace().orth_complement();
    let b = perp.basis();
    let q = b.row_block(m, n);
    let q_inv = q
        .inverse()
        .ok_or_else(|| Error::Precondition("complement is not of the W form".into()))?;
    let p = &b.row_block(0, m) * &q_inv;
    Ok(WPoint { a: p.adjoint() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shilov::{member, sign_diagonal};

    fn sp(m: usize, n: usize) -> HermSpace {
        HermSpace::new(m, n).unwrap()
    }

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    fn sample_x(space: HermSpace) -> RMatrix {
        RMatrix::from_fn(space.n - space.m, space.m, |i, j| {
            g(i as i64 + 1, j as i64 - 1)
        })
    }

    fn sample_y(m: usize) -> RMatrix {
        let s = RMatrix::from_fn(m, m, |i, j| g((i * m + j) as i64 % 3, (i + j) as i64));
        &s - &s.adjoint()
    }

    #[test]
    fn chart_of_standard_points() {
        let s = sp(2, 3);
        assert_eq!(
            to_chart(&ShilovPoint::v_0(s)).unwrap(),
            HeisPoint::origin(s)
        );
        let plus = [true, false];
        let p = to_chart(&ShilovPoint::v_d(s, &plus).unwrap()).unwrap();
        assert!(p.x.is_zero());
        // Bottom block d is normalised away: Y = d^{-1} = -d.
        assert_eq!(p.y, -&sign_diagonal(&plus));
        assert!(matches!(
            to_chart(&ShilovPoint::v_inf(s)),
            Err(Error::NotTransverseToVinf)
        ));
    }

    #[test]
    fn chart_round_trip() {
        let s = sp(2, 4);
        let p = HeisPoint::new(sample_x(s), sample_y(2)).unwrap();
        let pt = from_chart(s, &p).unwrap();
        assert_eq!(to_chart(&pt).unwrap(), p);
    }

    #[test]
    fn n_action_matches_matrix() {
        let s = sp(2, 3);
        let p = HeisPoint::new(sample_x(s), sample_y(2)).unwrap();
        let ne = NElement::new(
            RMatrix::from_fn(1, 2, |_, j| g(j as i64, 2)),
            sample_y(2).scale(&g(2, 0)),
        )
        .unwrap();
        assert!(s.is_h_unitary(&ne.matrix()));
        let lhs = from_chart(s, &act_n(&ne, &p)).unwrap();
        let rhs = from_chart(s, &p).unwrap().transform(&ne.matrix());
        assert_eq!(lhs, rhs);
        assert_eq!(
            act_n(&ne, &HeisPoint::origin(s)),
            HeisPoint {
                x: ne.e.clone(),
                y: ne.f.clone()
            }
        );
        let ne2 =
            NElement::new(RMatrix::from_fn(1, 2, |_, j| g(1, j as i64)), sample_y(2)).unwrap();
        assert_eq!(act_n(&ne.compose(&ne2), &p), act_n(&ne, &act_n(&ne2, &p)));
        assert_eq!(&ne.compose(&ne2).matrix(), &(&ne.matrix() * &ne2.matrix()));
    }

    #[test]
    fn l_action_matches_matrix() {
        let s = sp(2, 3);
        let p = HeisPoint::new(sample_x(s), sample_y(2)).unwrap();
        let le = LElement::new(
            RMatrix::new(2, 2, vec![g(1, 1), g(2, 0), g(0, -1), g(3, 0)]).unwrap(),
            RMatrix::identity(1),
        )
        .unwrap();
        assert!(s.is_h_unitary(&le.matrix()));
        let lhs = from_chart(s, &act_l(&le, &p)).unwrap();
        let rhs = from_chart(s, &p).unwrap().transform(&le.matrix());
        assert_eq!(lhs, rhs);
        assert_eq!(act_l(&le, &HeisPoint::origin(s)), HeisPoint::origin(s));
    }

    #[test]
    fn w_bijection() {
        let s = sp(2, 3);
        let w0 = WPoint {
            a: RMatrix::zeros(1, 2),
        };
        assert_eq!(
            w_to_subspace(s, &w0).unwrap().subspace(),
            &Subspace::coordinate(s, &[0, 1, 3, 4])
        );
        let w = WPoint { a: sample_x(s) };
        let t = w_to_subspace(s, &w).unwrap();
        assert_eq!(w_from_chain(&t).unwrap(), w);
        // Every chart point over A lies on the vertical chain.
        let p = from_chart(s, &HeisPoint::new(w.a.clone(), sample_y(2)).unwrap()).unwrap();
        assert!(member(&p, &t));
        let q = from_chart(
            s,
            &HeisPoint::new(&w.a + &RMatrix::from_int_rows(&[&[1, 0]]), sample_y(2)).unwrap(),
        )
        .unwrap();
        assert!(!member(&q, &t));
    }
}
