use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{GaussianRational, RMatrix};
use crate::Error;

/// Inertia of a Hermitian form: counts of positive, negative and zero squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl Signature {
    pub fn rank(&self) -> usize {
        self.pos + self.neg
    }

    /// pos - neg
    pub fn index(&self) -> i64 {
        self.pos as i64 - self.neg as i64
    }
}

/// Exact signature by symmetric elimination (congruence diagonalisation).
pub fn signature(h: &RMatrix) -> Result<Signature, Error> {
    if !h.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let mut a = h.clone();
    let n = a.rows();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        // Prefer a nonzero diagonal pivot with the largest magnitude.
        let diag = active
            .iter()
            .copied()
            .filter(|&i| !a[(i, i)].re().is_zero())
            .max_by(|&i, &j| a[(i, i)].re().abs().cmp(&a[(j, j)].re().abs()));
        let p = match diag {
            Some(p) => p,
            None => {
                // All remaining diagonals vanish; find an off-diagonal entry.
                let mut found = None;
                'outer: for &i in &active {
                    for &j in &active {
                        if i != j && !a[(i, j)].is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let Some((i, j)) = found else { break };
                // e_i <- e_i + c e_j with c = a_ij gives a_ii = 2|a_ij|^2.
                let c = a[(i, j)].clone();
                add_congruence(&mut a, i, j, &c);
                i
            }
        };
        let piv: BigRational = a[(p, p)].re();
        if piv.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        let piv_inv = GaussianRational::real(piv.recip());
        active.retain(|&i| i != p);
        // Schur complement: a_rc -= a_rp a_pc / a_pp.
        for &r in &active {
            if a[(r, p)].is_zero() {
                continue;
            }
            let f = &a[(r, p)] * &piv_inv;
            for &c in &active {
                if !a[(p, c)].is_zero() {
                    let t = &f * &a[(p, c)];
                    a[(r, c)] -= &t;
                }
            }
        }
        for &r in &active {
            a[(r, p)] = GaussianRational::zero();
            a[(p, r)] = GaussianRational::zero();
        }
    }
    Ok(Signature {
        pos,
        neg,
        zero: n - pos - neg,
    })
}

/// Applies row op R_i += c R_j and the matching column op C_i += conj(c) C_j.
fn add_congruence(a: &mut RMatrix, i: usize, j: usize, c: &GaussianRational) {
    let n = a.rows();
    for k in 0..n {
        let t = c * &a[(j, k)];
        a[(i, k)] += &t;
    }
    let cc = c.conj();
    for k in 0..n {
        let t = &a[(k, j)] * &cc;
        a[(k, i)] += &t;
    }
}
