//! Exact incidence geometry of m-chains in the Shilov boundary of SU(m,n).
//!
//! All predicates run over the Gaussian rationals; floats appear only in the
//! Cartan angle and in the signature cross-check.

pub mod chains;
mod error;
pub mod exactnum;
pub mod heisenberg;
pub mod hermitian;
pub mod sampler;
pub mod shilov;
pub mod verify;

pub use error::Error;
pub use exactnum::{GaussianRational, RMatrix, Signature};
pub use hermitian::Subspace;
pub use shilov::{MChain, ShilovPoint};
