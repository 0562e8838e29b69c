//! Floating-point signature backend, used only to cross-check the exact one.

use nalgebra::DMatrix;

use super::{RMatrix, Signature};

/// Eigenvalue sign counts of a Hermitian matrix via the real symmetric
/// embedding `[[Re, -Im], [Im, Re]]`, whose spectrum is the complex spectrum
/// doubled. Eigenvalues with `|λ| <= tol` count as zero.
pub fn float_signature(a: &RMatrix, tol: f64) -> Signature {
    let n = a.rows();
    let mut m = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let (re, im) = a[(i, j)].to_f64_pair();
            m[(i, j)] = re;
            m[(i + n, j + n)] = re;
            m[(i, j + n)] = -im;
            m[(i + n, j)] = im;
        }
    }
    let eig = m.symmetric_eigenvalues();
    let pos = eig.iter().filter(|&&x| x > tol).count();
    let neg = eig.iter().filter(|&&x| x < -tol).count();
    Signature {
        pos: pos / 2,
        neg: neg / 2,
        zero: n - pos / 2 - neg / 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{signature, GaussianRational};

    #[test]
    fn agrees_on_hyperbolic_complex_plane() {
        let i = GaussianRational::i();
        let h = RMatrix::new(2, 2, vec![0.into(), i.clone(), -i, 0.into()]).unwrap();
        assert_eq!(float_signature(&h, 1e-8), signature(&h).unwrap());
    }
}
