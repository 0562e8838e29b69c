//! Central stabilizers M_T and the map S(Z_1, Z_2).

use crate::exactnum::{GaussianRational, RMatrix};
use crate::shilov::{MChain, ShilovPoint};
use crate::Error;

use super::usub::{u_basis, USubspace};

/// Top m×k block of a basis of `v_inf ∩ V_T`, i.e. `Z_T` as a subspace of C^m.
pub fn vertical_part(t: &MChain) -> RMatrix {
    let space = t.space();
    let z = ShilovPoint::v_inf(space)
        .subspace()
        .intersect(t.subspace())
        .expect("same space");
    z.basis().row_block(0, space.m)
}

/// `M_T = a^{-1} E_k a^{-*}` for any `a` with `a(Z_T) = Z_k`. Taking
/// `a^{-1} = [Z | extension]` this is `{ Z X Z* : X in u(k) }`.
pub fn chain_stabilizer_m(t: &MChain) -> USubspace {
    let z = vertical_part(t);
    let za = z.adjoint();
    let gens: Vec<RMatrix> = u_basis(z.cols()).iter().map(|x| &(&z * x) * &za).collect();
    USubspace::span(t.space().m, &gens)
}

/// `a^{-1} E_k a^{-*}` for an explicit invertible `a`.
pub fn stabilizer_via(a: &RMatrix, k: usize) -> Result<USubspace, Error> {
    let a_inv = a
        .inverse()
        .ok_or_else(|| Error::Precondition("a must be invertible".into()))?;
    Ok(USubspace::e_k(a.rows(), k).conjugate(&a_inv))
}

/// Independent description: `F in u(m)` with `(0, F) V_T ⊆ V_T`, i.e.
/// `Wp_bot* F V_bot = 0` for a basis `Wp` of `V_T^⊥`.
pub fn chain_stabilizer_oracle(t: &MChain) -> USubspace {
    let space = t.space();
    let (m, n) = (space.m, space.n);
    let wp = t.subspace().orth_complement();
    let wb = wp.basis().row_block(n, n + m).adjoint();
    let vb = t.basis().row_block(n, n + m);
    // Solve the real-linear system in the u(m) coordinates.
    let basis = u_basis(m);
    let images: Vec<RMatrix> = basis.iter().map(|b| &(&wb * b) * &vb).collect();
    let kernel = real_kernel(&images);
    let gens: Vec<RMatrix> = kernel.iter().map(|c| combine(&basis, c)).collect();
    USubspace::span(m, &gens)
}

/// Real kernel of the map `c -> Σ c_i M_i` for complex matrices `M_i`.
pub(crate) fn real_kernel(images: &[RMatrix]) -> Vec<Vec<GaussianRational>> {
    let a = real_system(images);
    let k = a.kernel();
    (0..k.cols())
        .map(|j| (0..k.rows()).map(|i| k[(i, j)].clone()).collect())
        .collect()
}

/// Real matrix whose columns are the real/imaginary entries of each `M_i`.
pub(crate) fn real_system(images: &[RMatrix]) -> RMatrix {
    let len = images.first().map_or(0, |m| m.data().len());
    RMatrix::from_fn(2 * len, images.len(), |r, c| {
        let z = &images[c].data()[r / 2];
        GaussianRational::real(if r % 2 == 0 { z.re() } else { z.im() })
    })
}

/// Real column vector of the entries of `m`, matching [`real_system`].
pub(crate) fn real_rhs(m: &RMatrix) -> RMatrix {
    let d = m.data();
    RMatrix::from_fn(2 * d.len(), 1, |r, _| {
        GaussianRational::real(if r % 2 == 0 {
            d[r / 2].re()
        } else {
            d[r / 2].im()
        })
    })
}

pub(crate) fn combine(basis: &[RMatrix], c: &[GaussianRational]) -> RMatrix {
    let mut out = RMatrix::zeros(basis[0].rows(), basis[0].cols());
    for (b, x) in basis.iter().zip(c) {
        if !num_traits::Zero::is_zero(x) {
            out = &out + &b.scale(x);
        }
    }
    out
}

/// `S(Z_1, Z_2)`: real span of `z_1 z_2* - z_2 z_1*` over `z_i in Z_i`.
/// The inputs are column bases of subspaces of C^m.
pub fn s_map(z1: &RMatrix, z2: &RMatrix) -> USubspace {
    let m = z1.rows();
    let i = GaussianRational::i();
    let mut gens = Vec::new();
    for a in 0..z1.cols() {
        for b in 0..z2.cols() {
            let u = z1.column(a);
            let v = z2.column(b);
            let uv = &u * &v.adjoint();
            let vu = &v * &u.adjoint();
            gens.push(&uv - &vu);
            // z_1 -> i z_1
            gens.push((&uv + &vu).scale(&i));
        }
    }
    USubspace::span(m, &gens)
}

/// Orthogonal complement in C^m under the standard Hermitian product.
pub fn std_complement(z: &RMatrix) -> RMatrix {
    if z.cols() == 0 {
        return RMatrix::identity(z.rows());
    }
    z.adjoint().kernel()
}

/// Column-echelon basis of a subspace of C^m, for exact comparison.
pub fn canonical_cm(z: &RMatrix) -> RMatrix {
    let (r, piv) = z.transpose().rref();
    r.row_block(0, piv.len()).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{standard_chain, valid_indices};
    use crate::hermitian::HermSpace;

    #[test]
    fn stabilizer_of_standard_chains_is_e_k() {
        for (m, n) in [(2, 3), (3, 4), (3, 5)] {
            let s = HermSpace::new(m, n).unwrap();
            for k in valid_indices(s) {
                let t = standard_chain(s, k).unwrap();
                assert_eq!(chain_stabilizer_m(&t), USubspace::e_k(m, k));
                assert_eq!(chain_stabilizer_oracle(&t), USubspace::e_k(m, k));
            }
        }
    }

    #[test]
    fn s_map_examples() {
        for m in 1..4 {
            let id = RMatrix::identity(m);
            assert_eq!(s_map(&id, &id), USubspace::full(m));
            assert_eq!(s_map(&RMatrix::zeros(m, 0), &id).dim(), 0);
            for k in 0..=m {
                let zk = id.col_block(0, k);
                assert_eq!(s_map(&zk, &zk), USubspace::e_k(m, k));
            }
        }
    }
}
