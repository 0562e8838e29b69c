//! Generic intersections of chains through a common point.

use crate::hermitian::Subspace;
use crate::shilov::{span_dim, MChain, ShilovPoint};
use crate::Error;

/// Smallest integer strictly greater than `1 + m/(n-m)`; `None` when n = m.
pub fn oo_length(m: usize, n: usize) -> Option<usize> {
    let l = n.checked_sub(m).filter(|&l| l > 0)?;
    Some(2 + m / l)
}

/// `max(2m - (n-m)(j-1), m)` for `j = 1..=count`.
pub fn expected_dims(m: usize, n: usize, count: usize) -> Vec<usize> {
    let l = n - m;
    (1..=count)
        .map(|j| (2 * m).saturating_sub(l * (j - 1)).max(m))
        .collect()
}

/// `dim ∩_{i<=j} <z, x_i>` for `j = 1..=xs.len()`.
pub fn generic_intersection_dims(z: &ShilovPoint, xs: &[ShilovPoint]) -> Result<Vec<usize>, Error> {
    let mut out = Vec::with_capacity(xs.len());
    let mut acc: Option<Subspace> = None;
    for x in xs {
        let s = Subspace::span(&[z.subspace(), x.subspace()])?;
        let next = match acc {
            None => s,
            Some(a) => a.intersect(&s)?,
        };
        out.push(next.dim());
        acc = Some(next);
    }
    Ok(out)
}

/// The common point of the chains, when their spans meet in an isotropic
/// m-dimensional subspace.
pub fn intersect_chains(ts: &[MChain]) -> Result<ShilovPoint, Error> {
    let parts: Vec<&Subspace> = ts.iter().map(MChain::subspace).collect();
    if parts.is_empty() {
        return Err(Error::Precondition("no chains given".into()));
    }
    let s = Subspace::intersect_all(&parts)?;
    if s.dim() != s.space().m || !s.is_isotropic() {
        return Err(Error::NoCommonPoint);
    }
    ShilovPoint::new(s)
}

/// `dim <a, b, w> = 3m`, regime n >= 2m.
pub fn triple_span_generic(
    a: &ShilovPoint,
    b: &ShilovPoint,
    w: &ShilovPoint,
) -> Result<bool, Error> {
    let space = a.space();
    if space.n < 2 * space.m {
        return Err(Error::InvalidRegime("needs n >= 2m".into()));
    }
    Ok(span_dim(&[a, b, w]) == 3 * space.m)
}
