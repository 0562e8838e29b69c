use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("matrix is not anti-Hermitian with respect to the form")]
    NotAntiHermitian,
    #[error("Id + K is singular")]
    SingularCayley,
    #[error("subspace is not isotropic")]
    NotIsotropic,
    #[error("subspace does not have signature (m,m)")]
    NotAChain,
    #[error("points are not transverse")]
    NotTransverse,
    #[error("point is not transverse to v_inf")]
    NotTransverseToVinf,
    #[error("triple does not span a 2m-dimensional space")]
    NotCoplanar,
    #[error("a pairing between representatives vanishes")]
    DegeneratePairing,
    #[error("chain contains v_inf; its projection is a single point")]
    VerticalChain,
    #[error("point does not lie over the circle")]
    NotOnCircle,
    #[error("point is outside the domain D")]
    NotInDomain,
    #[error("chains have no common point")]
    NoCommonPoint,
    #[error("no rational point found on the chain")]
    NoRationalPoint,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid regime: {0}")]
    InvalidRegime(String),
    #[error("unknown check: {0}")]
    UnknownCheck(String),
    #[error("objects live in different ambient spaces")]
    SpaceMismatch,
}
