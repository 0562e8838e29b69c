//! Search for a rational point of a chain transverse to v_inf.
//!
//! Over Q(i) an indefinite Hermitian form need not be isotropic, so this is a
//! best-effort search: diagonalize, look for a pair `d_i, d_j` of opposite
//! signs with `-d_i/d_j` a norm from Q(i), split off the hyperbolic plane, and
//! repeat under random changes of basis.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactnum::{GaussianRational, RMatrix};
use crate::heisenberg::{chart_of_basis, HeisPoint};
use crate::shilov::MChain;
use crate::Error;

const BASIS_TRIES: usize = 40;
const GRAPH_TRIES: usize = 60;
/// Give up after this many bases whose ratios are all too large to factor.
const OVERSIZED_TRIES: usize = 3;
/// Ratios `a/b` with `ab` up to 10^18 are factored.
const NORM_BITS: u64 = 60;

/// A chart point `(X, Y)` lying on `t`, if one is found.
pub fn rational_chart_point(t: &MChain) -> Result<HeisPoint, Error> {
    let space = t.space();
    let m = space.m;
    let b = t.basis();
    let g = space.gram(b, b);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (u, w) = hyperbolic_basis(&g, m, &mut rng).ok_or(Error::NoRationalPoint)?;
    // Lagrangians span(W + U S) with S anti-Hermitian.
    let (bu, bw) = (b * &u, b * &w);
    for attempt in 0..GRAPH_TRIES {
        let s = if attempt == 0 {
            RMatrix::zeros(m, m)
        } else {
            small_anti_hermitian(m, &mut rng)
        };
        let l = &bw + &(&bu * &s);
        if let Ok(p) = chart_of_basis(space, &l) {
            return Ok(p);
        }
    }
    Err(Error::NoRationalPoint)
}

/// Coordinates `U, W` (2m×m each) with `U*GU = W*GW = 0` and `U*GW = Id`.
fn hyperbolic_basis(g: &RMatrix, m: usize, rng: &mut ChaCha8Rng) -> Option<(RMatrix, RMatrix)> {
    let dim = g.rows();
    let mut us = Vec::new();
    let mut ws = Vec::new();
    // Columns spanning the part still to be split, in coordinates.
    let mut rest = RMatrix::identity(dim);
    for _ in 0..m {
        let gr = &(&rest.adjoint() * g) * &rest;
        let c = isotropic_vector(&gr, rng)?;
        let u = &rest * &c;
        let gu = &u.adjoint() * g;
        // Partner: a column of `rest` pairing nontrivially with u.
        let j = (0..rest.cols()).find(|&j| !(&gu * &rest.column(j))[(0, 0)].is_zero())?;
        let mut w = rest.column(j);
        let s = (&gu * &w)[(0, 0)].clone();
        let ww = (&(&w.adjoint() * g) * &w)[(0, 0)].clone();
        let half: GaussianRational = BigRational::new(1.into(), 2.into()).into();
        let coef = -(&(&ww * &half) / &s.conj());
        w = &w + &u.scale(&coef);
        let w = w.scale(&s.inv()?);
        // Restrict to the orthogonal of span(u, w) inside `rest`.
        let constraints =
            RMatrix::vstack(&[&(&gu * &rest), &(&(&w.adjoint() * g) * &rest)]).ok()?;
        rest = &rest * &constraints.kernel();
        us.push(u);
        ws.push(w);
    }
    let ur: Vec<&RMatrix> = us.iter().collect();
    let wr: Vec<&RMatrix> = ws.iter().collect();
    Some((RMatrix::hstack(&ur).ok()?, RMatrix::hstack(&wr).ok()?))
}

/// A nonzero `c` with `c* G c = 0` for a nondegenerate indefinite `G`.
fn isotropic_vector(g: &RMatrix, rng: &mut ChaCha8Rng) -> Option<RMatrix> {
    let n = g.rows();
    if let Some(i) = (0..n).find(|&i| g[(i, i)].is_zero()) {
        return Some(RMatrix::unit(n, i));
    }
    let mut within_bound = false;
    for attempt in 0..BASIS_TRIES {
        let q = if attempt == 0 {
            RMatrix::identity(n)
        } else {
            random_unimodular(n, rng)
        };
        let gq = &(&q.adjoint() * g) * &q;
        let (p, d) = diagonalize(&gq);
        for i in 0..n {
            for j in i + 1..n {
                let (di, dj) = (&d[i], &d[j]);
                if di.is_zero() || dj.is_zero() || di.is_positive() == dj.is_positive() {
                    continue;
                }
                let r = -(di / dj);
                if r.numer().bits() + r.denom().bits() <= NORM_BITS {
                    within_bound = true;
                }
                if let Some(t) = norm_root(&r) {
                    let v = &p.column(i) + &p.column(j).scale(&t);
                    return Some(&q * &v);
                }
            }
        }
        // random bases only grow the entries
        if attempt + 1 >= OVERSIZED_TRIES && !within_bound {
            return None;
        }
    }
    None
}

/// `P` with `P* G P = diag(d)`, by congruence elimination.
fn diagonalize(g: &RMatrix) -> (RMatrix, Vec<BigRational>) {
    let n = g.rows();
    let mut a = g.clone();
    let mut p = RMatrix::identity(n);
    for col in 0..n {
        if a[(col, col)].is_zero() {
            // Bring in a later vector with nonzero pairing.
            if let Some(j) = (col + 1..n).find(|&j| !a[(col, j)].is_zero()) {
                // e_col += t a_cj e_j gives diagonal t|a_cj|^2 (2 + t a_jj): nonzero for some t in 1..=3.
                let c = a[(col, j)].clone();
                for t in 1..=3 {
                    let mut e = RMatrix::identity(n);
                    e[(j, col)] = c.scale(&BigRational::from_integer(t.into()));
                    let cand = &(&e.adjoint() * &a) * &e;
                    if !cand[(col, col)].is_zero() {
                        a = cand;
                        p = &p * &e;
                        break;
                    }
                }
            }
        }
        if a[(col, col)].is_zero() {
            continue;
        }
        let inv = a[(col, col)].inv().expect("nonzero");
        let mut e = RMatrix::identity(n);
        for j in col + 1..n {
            e[(col, j)] = -(&inv * &a[(col, j)]);
        }
        a = &(&e.adjoint() * &a) * &e;
        p = &p * &e;
    }
    let d = (0..n).map(|i| a[(i, i)].re()).collect();
    (p, d)
}

fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> RMatrix {
    // Lower times upper unitriangular with small Gaussian integer entries.
    let mut lo = RMatrix::identity(n);
    let mut up = RMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let z = GaussianRational::from_ints(rng.gen_range(-2..=2), rng.gen_range(-2..=2));
            if i > j {
                lo[(i, j)] = z;
            } else if i < j {
                up[(i, j)] = z;
            }
        }
    }
    &lo * &up
}

fn small_anti_hermitian(m: usize, rng: &mut ChaCha8Rng) -> RMatrix {
    let s = RMatrix::from_fn(m, m, |_, _| {
        GaussianRational::from_ints(rng.gen_range(-3..=3), rng.gen_range(-3..=3))
    });
    &s - &s.adjoint()
}

/// `t` in Q(i) with `|t|^2 = r`, for positive rational `r`, when one is found.
pub fn norm_root(r: &BigRational) -> Option<GaussianRational> {
    if !r.is_positive() {
        return None;
    }
    // r = a/b = (a b)/b^2
    let n = r.numer() * r.denom();
    let (x, y) = two_squares(&n)?;
    let d = BigRational::from_integer(r.denom().clone());
    Some(GaussianRational::new(
        BigRational::from_integer(x) / &d,
        BigRational::from_integer(y) / d,
    ))
}

/// `(x, y)` with `x^2 + y^2 = n`, for `n` up to about 10^18 with at most one
/// prime factor above the trial-division bound.
pub fn two_squares(n: &BigInt) -> Option<(BigInt, BigInt)> {
    let mut rest = n
        .to_u128()
        .filter(|&v| v > 0 && v <= 1_000_000_000_000_000_000)?;
    let mut acc = (1i128, 0i128);
    let mul = |a: (i128, i128), b: (i128, i128)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let mut p: u128 = 2;
    while p * p <= rest && p <= 1_000_000 {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            if p % 4 == 3 {
                if e % 2 == 1 {
                    return None;
                }
                acc = (
                    acc.0 * (p as i128).pow(e / 2),
                    acc.1 * (p as i128).pow(e / 2),
                );
            } else {
                let g = prime_two_squares(p)?;
                for _ in 0..e {
                    acc = mul(acc, g);
                }
            }
        }
        p += 1;
    }
    if rest > 1 {
        let g = if is_prime(rest) {
            if rest % 4 == 3 {
                return None;
            }
            prime_two_squares(rest)?
        } else {
            let s = isqrt(rest);
            if s * s != rest {
                return None;
            }
            (s as i128, 0)
        };
        acc = mul(acc, g);
    }
    Some((BigInt::from(acc.0.abs()), BigInt::from(acc.1.abs())))
}

fn isqrt(n: u128) -> u128 {
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    // m < 2^60, so a*b < 2^120.
    (a % m) * (b % m) % m
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Sum of two squares for a prime `p = 2` or `p ≡ 1 mod 4` (Hermite–Serret).
fn prime_two_squares(p: u128) -> Option<(i128, i128)> {
    if p == 2 {
        return Some((1, 1));
    }
    if p % 4 != 1 {
        return None;
    }
    let x = (2..p)
        .map(|c| pow_mod(c, (p - 1) / 4, p))
        .find(|&x| mul_mod(x, x, p) == p - 1)?;
    let (mut a, mut b) = (p, x);
    let limit = isqrt(p);
    while b > limit {
        let r = a % b;
        a = b;
        b = r;
    }
    let rest = p - b * b;
    let c = isqrt(rest);
    (c * c == rest).then_some((b as i128, c as i128))
}
