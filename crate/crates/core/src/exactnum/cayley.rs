use super::RMatrix;
use crate::Error;

/// `(Id - K)(Id + K)^{-1}` for an `H`-anti-Hermitian `K` (`K*H + HK = 0`).
/// The result satisfies `g*Hg = H` exactly.
pub fn cayley_h_unitary(k: &RMatrix, h: &RMatrix) -> Result<RMatrix, Error> {
    if !k.is_square() || k.shape() != h.shape() {
        return Err(Error::DimensionMismatch(
            "cayley: K and H must be square of equal size".into(),
        ));
    }
    if !(&(&k.adjoint() * h) + &(h * k)).is_zero() {
        return Err(Error::NotAntiHermitian);
    }
    let id = RMatrix::identity(k.rows());
    let inv = (&id + k).inverse().ok_or(Error::SingularCayley)?;
    Ok(&(&id - k) * &inv)
}
