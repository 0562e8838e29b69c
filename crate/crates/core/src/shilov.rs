//! Points of the Shilov boundary, m-chains, and triple invariants.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exactnum::{signature, GaussianRational, RMatrix};
use crate::hermitian::{HermSpace, Subspace, SubspaceRepr};
use crate::Error;

/// An m-dimensional h-isotropic subspace.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ShilovPoint(Subspace);

/// A 2m-dimensional subspace on which h has signature (m, m).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MChain(Subspace);

pub fn is_shilov_point(s: &Subspace) -> bool {
    s.dim() == s.space().m && s.is_isotropic()
}

impl ShilovPoint {
    pub fn new(s: Subspace) -> Result<Self, Error> {
        if s.dim() != s.space().m {
            return Err(Error::DimensionMismatch(format!(
                "point must have dimension {}",
                s.space().m
            )));
        }
        if !s.is_isotropic() {
            return Err(Error::NotIsotropic);
        }
        Ok(Self(s))
    }

    pub fn from_basis(space: HermSpace, b: &RMatrix) -> Result<Self, Error> {
        Self::new(Subspace::new(space, b)?)
    }

    pub fn subspace(&self) -> &Subspace {
        &self.0
    }

    pub fn space(&self) -> HermSpace {
        self.0.space()
    }

    pub fn basis(&self) -> &RMatrix {
        self.0.basis()
    }

    /// `g . x` for an h-unitary `g` (not checked).
    pub fn transform(&self, g: &RMatrix) -> ShilovPoint {
        ShilovPoint(self.0.transform(g))
    }

    /// `<e_1..e_m>`
    pub fn v_inf(space: HermSpace) -> Self {
        Self(Subspace::coordinate(
            space,
            &(0..space.m).collect::<Vec<_>>(),
        ))
    }

    /// `<e_{n+1}..e_{n+m}>`
    pub fn v_0(space: HermSpace) -> Self {
        Self(Subspace::coordinate(
            space,
            &(space.n..space.n + space.m).collect::<Vec<_>>(),
        ))
    }

    /// Basis `[Id; 0; d]` with `d = diag(±i)`; `plus[j]` selects `+i`.
    pub fn v_d(space: HermSpace, plus: &[bool]) -> Result<Self, Error> {
        let (m, n) = (space.m, space.n);
        if plus.len() != m {
            return Err(Error::DimensionMismatch(format!("need {m} signs")));
        }
        let mut b = RMatrix::zeros(m + n, m);
        for j in 0..m {
            b[(j, j)] = 1.into();
            b[(n + j, j)] = GaussianRational::from_ints(0, if plus[j] { 1 } else { -1 });
        }
        Self::from_basis(space, &b)
    }
}

/// The diagonal `d` matching a sign pattern.
pub fn sign_diagonal(plus: &[bool]) -> RMatrix {
    let e: Vec<GaussianRational> = plus
        .iter()
        .map(|&p| GaussianRational::from_ints(0, if p { 1 } else { -1 }))
        .collect();
    RMatrix::diag(&e)
}

impl MChain {
    pub fn new(s: Subspace) -> Result<Self, Error> {
        let m = s.space().m;
        if s.dim() != 2 * m {
            return Err(Error::DimensionMismatch(format!(
                "chain must have dimension {}",
                2 * m
            )));
        }
        let sig = s.form_signature();
        if sig.pos != m || sig.neg != m {
            return Err(Error::NotAChain);
        }
        Ok(Self(s))
    }

    pub fn subspace(&self) -> &Subspace {
        &self.0
    }

    pub fn space(&self) -> HermSpace {
        self.0.space()
    }

    pub fn basis(&self) -> &RMatrix {
        self.0.basis()
    }

    pub fn transform(&self, g: &RMatrix) -> MChain {
        MChain(self.0.transform(g))
    }
}

pub fn transverse(x: &ShilovPoint, y: &ShilovPoint) -> bool {
    x.space() == y.space()
        && RMatrix::hstack(&[x.basis(), y.basis()])
            .expect("same rows")
            .rank()
            == 2 * x.space().m
}

pub fn chain_through(x: &ShilovPoint, y: &ShilovPoint) -> Result<MChain, Error> {
    if x.space() != y.space() {
        return Err(Error::SpaceMismatch);
    }
    if !transverse(x, y) {
        return Err(Error::NotTransverse);
    }
    let v = Subspace::span(&[&x.0, &y.0])?;
    let c = MChain::new(v)?;
    Ok(c)
}

pub fn member(z: &ShilovPoint, t: &MChain) -> bool {
    t.0.contains(&z.0)
}

pub fn span_dim(points: &[&ShilovPoint]) -> usize {
    let bs: Vec<&RMatrix> = points.iter().map(|p| p.basis()).collect();
    RMatrix::hstack(&bs).expect("same rows").rank()
}

pub fn is_maximal_triple_space(x: &ShilovPoint, y: &ShilovPoint, z: &ShilovPoint) -> bool {
    span_dim(&[x, y, z]) == 2 * x.space().m
}

/// Integer triple index on coplanar, pairwise transverse triples.
///
/// `y` is the graph of a map `T: x -> z` inside `x + z`; `F(u, u') = <u, T u'>`
/// is anti-Hermitian on `x` and the index is the signature of `iF`.
pub fn bergmann_index(x: &ShilovPoint, y: &ShilovPoint, z: &ShilovPoint) -> Result<i64, Error> {
    let space = x.space();
    if y.space() != space || z.space() != space {
        return Err(Error::SpaceMismatch);
    }
    if !(transverse(x, y) && transverse(y, z) && transverse(x, z)) {
        return Err(Error::NotTransverse);
    }
    // y = x A + z B, read off with the pairings since x and z are isotropic
    let gxz = space.gram(x.basis(), z.basis());
    let gzx = gxz.adjoint();
    let gxy = space.gram(x.basis(), y.basis());
    let gzy = space.gram(z.basis(), y.basis());
    let a = &gzx.inverse().ok_or(Error::NotTransverse)? * &gzy;
    let b = &gxz.inverse().ok_or(Error::NotTransverse)? * &gxy;
    if &(x.basis() * &a) + &(z.basis() * &b) != *y.basis() {
        return Err(Error::NotCoplanar);
    }
    let f = &(&gxy * &gzy.inverse().ok_or(Error::NotTransverse)?) * &gzx;
    debug_assert!(f.is_anti_hermitian());
    let form = f.scale(&GaussianRational::i());
    Ok(signature(&form)?.index())
}

/// Cartan's angular invariant for m = 1, in [-1, 1].
pub fn cartan_invariant(x: &ShilovPoint, y: &ShilovPoint, z: &ShilovPoint) -> Result<f64, Error> {
    let space = x.space();
    if space.m != 1 {
        return Err(Error::Precondition(
            "the Cartan invariant needs m = 1".into(),
        ));
    }
    if y.space() != space || z.space() != space {
        return Err(Error::SpaceMismatch);
    }
    let p = |a: &ShilovPoint, b: &ShilovPoint| space.gram(a.basis(), b.basis())[(0, 0)].clone();
    let (xy, yz, zx) = (p(x, y), p(y, z), p(z, x));
    if num_traits::Zero::is_zero(&xy)
        || num_traits::Zero::is_zero(&yz)
        || num_traits::Zero::is_zero(&zx)
    {
        return Err(Error::DegeneratePairing);
    }
    // the form has one positive direction and is conjugate-linear on the left
    let prod = (&(&xy * &yz) * &zx).conj();
    let (re, im) = prod.to_f64_pair();
    Ok(2.0 / std::f64::consts::PI * im.atan2(re))
}

macro_rules! subspace_json {
    ($t:ident, $kind:literal) => {
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                SubspaceRepr::of(&self.0, Some($kind)).serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let r = SubspaceRepr::deserialize(d)?;
                if let Some(k) = &r.kind {
                    if k != $kind {
                        return Err(D::Error::custom(format!(
                            "expected kind {:?}, got {k:?}",
                            $kind
                        )));
                    }
                }
                let s = r.into_subspace().map_err(D::Error::custom)?;
                $t::new(s).map_err(D::Error::custom)
            }
        }
    };
}
subspace_json!(ShilovPoint, "shilov-point");
subspace_json!(MChain, "m-chain");

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(m: usize, n: usize) -> HermSpace {
        HermSpace::new(m, n).unwrap()
    }

    fn sign_patterns(m: usize) -> Vec<Vec<bool>> {
        (0..1u32 << m)
            .map(|b| (0..m).map(|j| b >> j & 1 == 1).collect())
            .collect()
    }

    #[test]
    fn standard_points_are_isotropic_and_transverse() {
        for (m, n) in [(1, 2), (2, 3), (3, 5)] {
            let s = sp(m, n);
            let (vi, v0) = (ShilovPoint::v_inf(s), ShilovPoint::v_0(s));
            assert!(transverse(&vi, &v0));
            assert!(!transverse(&vi, &vi));
            for p in sign_patterns(m) {
                let vd = ShilovPoint::v_d(s, &p).unwrap();
                assert!(transverse(&v0, &vd));
                assert!(transverse(&vi, &vd));
                assert!(is_maximal_triple_space(&vi, &v0, &vd));
            }
        }
        let s = sp(1, 2);
        assert!(!is_shilov_point(&Subspace::coordinate(s, &[1])));
        assert!(ShilovPoint::new(Subspace::coordinate(s, &[1])).is_err());
    }

    #[test]
    fn chain_through_standard_pair() {
        let s = sp(2, 3);
        let (vi, v0) = (ShilovPoint::v_inf(s), ShilovPoint::v_0(s));
        let t = chain_through(&vi, &v0).unwrap();
        assert_eq!(t.subspace(), &Subspace::coordinate(s, &[0, 1, 3, 4]));
        assert_eq!(t, chain_through(&v0, &vi).unwrap());
        assert!(member(&vi, &t));
        let vd = ShilovPoint::v_d(s, &[true, true]).unwrap();
        assert!(member(&vd, &t));
        let t2 = chain_through(&v0, &vd).unwrap();
        assert_eq!(t2.subspace().form_signature().pos, 2);
        assert!(matches!(chain_through(&vi, &vi), Err(Error::NotTransverse)));
    }

    #[test]
    fn bergmann_on_vd_family() {
        // (v_inf, v_d, v_0) for d = i Id gives -m; swapping negates.
        for (m, n) in [(1, 2), (2, 3), (3, 4)] {
            let s = sp(m, n);
            let (vi, v0) = (ShilovPoint::v_inf(s), ShilovPoint::v_0(s));
            let vd = ShilovPoint::v_d(s, &vec![true; m]).unwrap();
            assert_eq!(bergmann_index(&vi, &vd, &v0).unwrap(), -(m as i64));
            assert_eq!(bergmann_index(&vi, &v0, &vd).unwrap(), m as i64);
        }
    }

    #[test]
    fn bergmann_range_for_rank_three() {
        let s = sp(3, 4);
        let (vi, v0) = (ShilovPoint::v_inf(s), ShilovPoint::v_0(s));
        let mut counts = std::collections::BTreeMap::new();
        for p in sign_patterns(3) {
            let vd = ShilovPoint::v_d(s, &p).unwrap();
            *counts
                .entry(bergmann_index(&vi, &vd, &v0).unwrap())
                .or_insert(0) += 1;
        }
        assert_eq!(
            counts.into_iter().collect::<Vec<_>>(),
            vec![(-3, 1), (-1, 3), (1, 3), (3, 1)]
        );
    }

    #[test]
    fn cartan_on_standard_triple() {
        let s = sp(1, 2);
        let (vi, v0) = (ShilovPoint::v_inf(s), ShilovPoint::v_0(s));
        let vp = ShilovPoint::v_d(s, &[true]).unwrap();
        let vm = ShilovPoint::v_d(s, &[false]).unwrap();
        assert!((cartan_invariant(&vi, &v0, &vp).unwrap() - 1.0).abs() < 1e-12);
        assert!((cartan_invariant(&vi, &v0, &vm).unwrap() + 1.0).abs() < 1e-12);
        // off a chain the angle is strictly inside
        let col = vec![GaussianRational::from_fracs(1, 2, 1, 1), 1.into(), 1.into()];
        let w =
            ShilovPoint::new(Subspace::new(s, &RMatrix::new(3, 1, col).unwrap()).unwrap()).unwrap();
        assert!(cartan_invariant(&vi, &v0, &w).unwrap().abs() < 1.0 - 1e-6);
        assert!(matches!(
            cartan_invariant(&vi, &vi, &v0),
            Err(Error::DegeneratePairing)
        ));
    }

    #[test]
    fn json_kind_tag() {
        let s = sp(1, 2);
        let p = ShilovPoint::v_0(s);
        let txt = serde_json::to_string(&p).unwrap();
        assert!(txt.contains(r#""kind":"shilov-point""#));
        assert_eq!(serde_json::from_str::<ShilovPoint>(&txt).unwrap(), p);
        assert!(serde_json::from_str::<MChain>(&txt).is_err());
    }
}
