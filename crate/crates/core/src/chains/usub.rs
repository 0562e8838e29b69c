//! Real linear subspaces of u(m).

use num_rational::BigRational;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exactnum::{GaussianRational, RMatrix};

/// Real coordinates of an anti-Hermitian m×m matrix: `Im a_jj` for each j,
/// then `Re a_jk, Im a_jk` for j < k.
pub fn u_coords(a: &RMatrix) -> Vec<BigRational> {
    let m = a.rows();
    let mut v = Vec::with_capacity(m * m);
    for j in 0..m {
        v.push(a[(j, j)].im());
    }
    for j in 0..m {
        for k in j + 1..m {
            v.push(a[(j, k)].re());
            v.push(a[(j, k)].im());
        }
    }
    v
}

pub fn from_u_coords(m: usize, v: &[BigRational]) -> RMatrix {
    assert_eq!(v.len(), m * m, "coordinate vector length");
    let mut a = RMatrix::zeros(m, m);
    for j in 0..m {
        a[(j, j)] = GaussianRational::new(BigRational::zero(), v[j].clone());
    }
    let mut idx = m;
    for j in 0..m {
        for k in j + 1..m {
            let z = GaussianRational::new(v[idx].clone(), v[idx + 1].clone());
            a[(k, j)] = -z.conj();
            a[(j, k)] = z;
            idx += 2;
        }
    }
    a
}

/// Real part of `tr(A* B)`.
pub fn u_inner(a: &RMatrix, b: &RMatrix) -> BigRational {
    let mut s = BigRational::zero();
    for (x, y) in a.data().iter().zip(b.data()) {
        s += &x.re() * &y.re() + &x.im() * &y.im();
    }
    s
}

/// Basis of u(m): `i E_jj`, `E_jk - E_kj`, `i (E_jk + E_kj)`.
pub fn u_basis(m: usize) -> Vec<RMatrix> {
    (0..m * m)
        .map(|t| {
            let mut v = vec![BigRational::zero(); m * m];
            v[t] = BigRational::from_integer(1.into());
            from_u_coords(m, &v)
        })
        .collect()
}

/// A real subspace of u(m) stored as the reduced row echelon form of its
/// coordinate vectors; equal subspaces have equal values.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct USubspace {
    m: usize,
    rows: RMatrix,
}

impl USubspace {
    pub fn zero(m: usize) -> Self {
        Self {
            m,
            rows: RMatrix::zeros(0, m * m),
        }
    }

    pub fn full(m: usize) -> Self {
        Self {
            m,
            rows: RMatrix::identity(m * m),
        }
    }

    /// Real span of anti-Hermitian matrices. Non-anti-Hermitian inputs panic.
    pub fn span(m: usize, gens: &[RMatrix]) -> Self {
        for g in gens {
            assert!(
                g.shape() == (m, m) && g.is_anti_hermitian(),
                "generator is not in u(m)"
            );
        }
        let mut data = Vec::with_capacity(gens.len() * m * m);
        for g in gens {
            data.extend(u_coords(g).into_iter().map(GaussianRational::real));
        }
        let raw = RMatrix::new(gens.len(), m * m, data).expect("shape");
        Self::from_rows(m, &raw)
    }

    fn from_rows(m: usize, raw: &RMatrix) -> Self {
        let (r, piv) = raw.rref();
        Self {
            m,
            rows: r.row_block(0, piv.len()),
        }
    }

    /// `E_k`: matrices supported in the top-left k×k block.
    pub fn e_k(m: usize, k: usize) -> Self {
        let gens: Vec<RMatrix> = u_basis(k)
            .into_iter()
            .map(|b| {
                let mut a = RMatrix::zeros(m, m);
                a.set_block(0, 0, &b);
                a
            })
            .collect();
        Self::span(m, &gens)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.rows.rows()
    }

    pub fn basis(&self) -> Vec<RMatrix> {
        (0..self.dim())
            .map(|i| {
                let v: Vec<BigRational> = (0..self.m * self.m)
                    .map(|j| self.rows[(i, j)].re())
                    .collect();
                from_u_coords(self.m, &v)
            })
            .collect()
    }

    pub fn contains(&self, a: &RMatrix) -> bool {
        if !a.is_anti_hermitian() || a.rows() != self.m {
            return false;
        }
        self.sum(&USubspace::span(self.m, std::slice::from_ref(a)))
            .dim()
            == self.dim()
    }

    pub fn contains_space(&self, o: &USubspace) -> bool {
        self.sum(o).dim() == self.dim()
    }

    pub fn sum(&self, o: &USubspace) -> USubspace {
        assert_eq!(self.m, o.m, "u(m) size mismatch");
        let raw = RMatrix::vstack(&[&self.rows, &o.rows]).expect("same cols");
        Self::from_rows(self.m, &raw)
    }

    /// Whether `Re tr(A* B) = 0` for all A here and B in `o`.
    pub fn orthogonal_to(&self, o: &USubspace) -> bool {
        let (a, b) = (self.basis(), o.basis());
        a.iter().all(|x| b.iter().all(|y| u_inner(x, y).is_zero()))
    }

    /// `{ g A g* : A in self }`
    pub fn conjugate(&self, g: &RMatrix) -> USubspace {
        let ga = g.adjoint();
        let gens: Vec<RMatrix> = self.basis().iter().map(|a| &(g * a) * &ga).collect();
        USubspace::span(self.m, &gens)
    }
}

impl Serialize for USubspace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.basis().serialize(s)
    }
}

impl<'de> Deserialize<'de> for USubspace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let gens = Vec::<RMatrix>::deserialize(d)?;
        let m = gens.first().map_or(0, RMatrix::rows);
        if gens
            .iter()
            .any(|g| g.shape() != (m, m) || !g.is_anti_hermitian())
        {
            return Err(D::Error::custom(
                "basis elements must be anti-Hermitian of equal size",
            ));
        }
        Ok(USubspace::span(m, &gens))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basis_is_orthogonal_and_spans() {
        for m in 1..4 {
            let b = u_basis(m);
            assert_eq!(USubspace::span(m, &b), USubspace::full(m));
            for (i, x) in b.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    assert_eq!(u_inner(x, y).is_zero(), i != j);
                }
            }
        }
    }

    #[test]
    fn e_k_dimensions() {
        for m in 1..4 {
            for k in 0..=m {
                assert_eq!(USubspace::e_k(m, k).dim(), k * k);
            }
        }
        assert_eq!(USubspace::e_k(3, 3), USubspace::full(3));
    }

    proptest! {
        #[test]
        fn coords_round_trip(v in proptest::collection::vec(-20i64..20, 9)) {
            let v: Vec<BigRational> = v.into_iter().map(|x| BigRational::from_integer(x.into())).collect();
            let a = from_u_coords(3, &v);
            prop_assert!(a.is_anti_hermitian());
            prop_assert_eq!(u_coords(&a), v);
        }
    }
}
