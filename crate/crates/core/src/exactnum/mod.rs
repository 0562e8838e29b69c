//! Exact arithmetic over the Gaussian rationals Q(i).

mod cayley;
mod float;
mod integral;
mod matrix;
mod scalar;
mod signature;

pub use cayley::cayley_h_unitary;
pub use float::float_signature;
pub use matrix::RMatrix;
pub use scalar::{format_ratio, parse_ratio, ratio_to_f64, GaussianRational};
pub use signature::{signature, Signature};

/// Alias matching the usual name of the operation.
pub fn hermitian_signature(a: &RMatrix) -> Result<Signature, crate::Error> {
    signature(a)
}

pub fn rank(m: &RMatrix) -> usize {
    m.rank()
}

pub fn kernel(m: &RMatrix) -> RMatrix {
    m.kernel()
}
