//! The space (C^{m+n}, h) and subspace algebra.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exactnum::{signature, GaussianRational, RMatrix, Signature};
use crate::Error;

/// `H = [[0,0,Id_m],[0,-Id_{n-m},0],[Id_m,0,0]]`.
pub fn standard_form(m: usize, n: usize) -> RMatrix {
    let mut h = RMatrix::zeros(m + n, m + n);
    for i in 0..m {
        h[(i, n + i)] = 1.into();
        h[(n + i, i)] = 1.into();
    }
    for i in m..n {
        h[(i, i)] = (-1).into();
    }
    h
}

/// Ambient space parameters. `1 <= m <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HermSpace {
    pub m: usize,
    pub n: usize,
}

impl HermSpace {
    pub fn new(m: usize, n: usize) -> Result<Self, Error> {
        if m == 0 || m > n {
            return Err(Error::Precondition(format!(
                "need 1 <= m <= n, got m={m}, n={n}"
            )));
        }
        Ok(Self { m, n })
    }

    pub fn dim(&self) -> usize {
        self.m + self.n
    }

    pub fn h(&self) -> RMatrix {
        standard_form(self.m, self.n)
    }

    /// `H * B` by block permutation, without a full product.
    pub fn apply_h(&self, b: &RMatrix) -> RMatrix {
        let (m, n) = (self.m, self.n);
        assert_eq!(b.rows(), m + n, "apply_h: wrong row count");
        let mut out = RMatrix::zeros(m + n, b.cols());
        for j in 0..b.cols() {
            for i in 0..m {
                out[(i, j)] = b[(n + i, j)].clone();
                out[(n + i, j)] = b[(i, j)].clone();
            }
            for i in m..n {
                out[(i, j)] = -&b[(i, j)];
            }
        }
        out
    }

    /// `A* H B`.
    pub fn gram(&self, a: &RMatrix, b: &RMatrix) -> RMatrix {
        &a.adjoint() * &self.apply_h(b)
    }

    /// `u* H v` for column vectors.
    pub fn pairing(&self, u: &RMatrix, v: &RMatrix) -> Result<GaussianRational, Error> {
        if u.shape() != (self.dim(), 1) || v.shape() != (self.dim(), 1) {
            return Err(Error::DimensionMismatch(
                "pairing expects column vectors of length m+n".into(),
            ));
        }
        Ok(self.gram(u, v)[(0, 0)].clone())
    }

    pub fn unit(&self, i: usize) -> RMatrix {
        RMatrix::unit(self.dim(), i)
    }

    /// Whether `g* H g = H`.
    pub fn is_h_unitary(&self, g: &RMatrix) -> bool {
        g.shape() == (self.dim(), self.dim()) && self.gram(g, g) == self.h()
    }
}

/// A linear subspace of C^{m+n}, stored by its column-reduced echelon basis.
/// Equality of values is equality of subspaces.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    space: HermSpace,
    basis: RMatrix,
}

/// Column-reduced echelon form of the column space of `b`, zero columns dropped.
fn canonical_basis(b: &RMatrix) -> RMatrix {
    let (r, pivots) = b.transpose().rref();
    r.row_block(0, pivots.len()).transpose()
}

impl Subspace {
    /// Column space of `b` (any spanning set).
    pub fn new(space: HermSpace, b: &RMatrix) -> Result<Self, Error> {
        if b.rows() != space.dim() {
            return Err(Error::DimensionMismatch(format!(
                "basis has {} rows, ambient dimension is {}",
                b.rows(),
                space.dim()
            )));
        }
        Ok(Self {
            space,
            basis: canonical_basis(b),
        })
    }

    pub fn from_columns(m: usize, n: usize, b: &RMatrix) -> Result<Self, Error> {
        Self::new(HermSpace::new(m, n)?, b)
    }

    /// Span of the standard basis vectors with the given 0-based indices.
    pub fn coordinate(space: HermSpace, idx: &[usize]) -> Self {
        let cols: Vec<RMatrix> = idx.iter().map(|&i| space.unit(i)).collect();
        let refs: Vec<&RMatrix> = cols.iter().collect();
        let b = if refs.is_empty() {
            RMatrix::zeros(space.dim(), 0)
        } else {
            RMatrix::hstack(&refs).expect("same rows")
        };
        Self::new(space, &b).expect("valid shape")
    }

    pub fn zero(space: HermSpace) -> Self {
        Self {
            space,
            basis: RMatrix::zeros(space.dim(), 0),
        }
    }

    pub fn full(space: HermSpace) -> Self {
        Self {
            space,
            basis: RMatrix::identity(space.dim()),
        }
    }

    pub fn space(&self) -> HermSpace {
        self.space
    }

    pub fn basis(&self) -> &RMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    fn same_space(&self, o: &Subspace) -> Result<(), Error> {
        if self.space == o.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// Gram matrix `B* H B` of h on the canonical basis.
    pub fn restrict_form(&self) -> RMatrix {
        self.space.gram(&self.basis, &self.basis)
    }

    pub fn form_signature(&self) -> Signature {
        signature(&self.restrict_form()).expect("Gram matrices are Hermitian")
    }

    pub fn is_isotropic(&self) -> bool {
        self.restrict_form().is_zero()
    }

    pub fn orth_complement(&self) -> Subspace {
        let k = self
            .space
            .gram(&self.basis, &RMatrix::identity(self.space.dim()))
            .kernel();
        Subspace::new(self.space, &k).expect("shape")
    }

    pub fn contains(&self, o: &Subspace) -> bool {
        self.same_space(o).is_ok() && self.contains_columns(&o.basis)
    }

    /// Whether every column of `b` lies in this subspace.
    pub fn contains_columns(&self, b: &RMatrix) -> bool {
        if b.cols() == 0 {
            return true;
        }
        let aug = RMatrix::hstack(&[&self.basis, b]).expect("same rows");
        aug.rank() == self.dim()
    }

    pub fn span(parts: &[&Subspace]) -> Result<Subspace, Error> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Precondition("span of an empty list".into()))?;
        for p in parts {
            first.same_space(p)?;
        }
        let bs: Vec<&RMatrix> = parts.iter().map(|p| &p.basis).collect();
        Subspace::new(first.space, &RMatrix::hstack(&bs)?)
    }

    pub fn intersect(&self, o: &Subspace) -> Result<Subspace, Error> {
        self.same_space(o)?;
        if self.dim() == 0 || o.dim() == 0 {
            return Ok(Subspace::zero(self.space));
        }
        // A a = B b  <=>  [A | -B] (a; b) = 0
        let k = RMatrix::hstack(&[&self.basis, &-&o.basis])?.kernel();
        let a = k.row_block(0, self.dim());
        Subspace::new(self.space, &(&self.basis * &a))
    }

    pub fn intersect_all(parts: &[&Subspace]) -> Result<Subspace, Error> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Precondition("intersection of an empty list".into()))?;
        parts[1..]
            .iter()
            .try_fold((*first).clone(), |acc, p| acc.intersect(p))
    }

    /// Image under a linear map of the ambient space.
    pub fn transform(&self, g: &RMatrix) -> Subspace {
        Subspace::new(self.space, &(g * &self.basis)).expect("square map")
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct SubspaceRepr {
    pub m: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub basis: RMatrix,
}

impl SubspaceRepr {
    pub(crate) fn of(s: &Subspace, kind: Option<&str>) -> Self {
        Self {
            m: s.space.m,
            n: s.space.n,
            kind: kind.map(str::to_owned),
            basis: s.basis.clone(),
        }
    }

    pub(crate) fn into_subspace(self) -> Result<Subspace, Error> {
        Subspace::from_columns(self.m, self.n, &self.basis)
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SubspaceRepr::of(self, None).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        SubspaceRepr::deserialize(d)?
            .into_subspace()
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(m: usize, n: usize) -> HermSpace {
        HermSpace::new(m, n).unwrap()
    }

    #[test]
    fn pairing_examples() {
        for (m, n) in [(1, 2), (2, 3), (2, 5)] {
            let s = sp(m, n);
            assert_eq!(s.pairing(&s.unit(0), &s.unit(n)).unwrap(), 1.into());
            assert_eq!(s.pairing(&s.unit(m), &s.unit(m)).unwrap(), (-1).into());
            assert_eq!(s.pairing(&s.unit(0), &s.unit(0)).unwrap(), 0.into());
        }
        assert!(sp(1, 2)
            .pairing(&RMatrix::unit(2, 0), &RMatrix::unit(3, 0))
            .is_err());
    }

    #[test]
    fn apply_h_matches_product() {
        let s = sp(2, 3);
        let b = RMatrix::from_fn(5, 2, |i, j| {
            GaussianRational::from_ints(i as i64 - j as i64, (i * j) as i64)
        });
        assert_eq!(s.apply_h(&b), &s.h() * &b);
    }

    #[test]
    fn restrict_examples() {
        let s = sp(2, 3);
        let vinf = Subspace::coordinate(s, &[0, 1]);
        assert!(vinf.restrict_form().is_zero());
        let e = Subspace::coordinate(s, &[2]);
        assert_eq!(e.restrict_form(), RMatrix::from_int_rows(&[&[-1]]));
    }

    #[test]
    fn complement_of_vinf() {
        for (m, n) in [(1, 2), (2, 3), (3, 5)] {
            let s = sp(m, n);
            let vinf = Subspace::coordinate(s, &(0..m).collect::<Vec<_>>());
            let expected = Subspace::coordinate(s, &(0..n).collect::<Vec<_>>());
            assert_eq!(vinf.orth_complement(), expected);
            assert_eq!(Subspace::full(s).orth_complement(), Subspace::zero(s));
        }
    }

    #[test]
    fn span_and_intersection() {
        let s = sp(2, 3);
        let vinf = Subspace::coordinate(s, &[0, 1]);
        let v0 = Subspace::coordinate(s, &[3, 4]);
        let sp2 = Subspace::span(&[&vinf, &v0]).unwrap();
        assert_eq!(sp2, Subspace::coordinate(s, &[0, 1, 3, 4]));
        assert_eq!(vinf.intersect(&v0).unwrap().dim(), 0);
        assert_eq!(vinf.intersect(&vinf).unwrap(), vinf);
        assert!(sp2.contains(&vinf));
        assert!(!vinf.contains(&sp2));
    }

    #[test]
    fn canonical_form_ignores_basis_choice() {
        let s = sp(1, 2);
        let b1 = RMatrix::from_int_rows(&[&[1, 0], &[1, 1], &[0, 2]]);
        let b2 = RMatrix::from_int_rows(&[&[2, 1], &[3, 2], &[2, 2]]);
        assert_eq!(
            Subspace::new(s, &b1).unwrap(),
            Subspace::new(s, &b2).unwrap()
        );
    }

    #[test]
    fn json_canonicalizes_on_load() {
        let txt = r#"{"m":1,"n":2,"basis":{"rows":3,"cols":1,"data":[{"re":"2","im":"0"},{"re":"0","im":"0"},{"re":"0","im":"0"}]}}"#;
        let s: Subspace = serde_json::from_str(txt).unwrap();
        assert_eq!(s, Subspace::coordinate(sp(1, 2), &[0]));
    }
}
