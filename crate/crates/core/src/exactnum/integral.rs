//! Gaussian-integer kernels: denominators are cleared once, elimination is
//! fraction-free, and results are normalized once at the end. Each kernel
//! runs on checked i128 first and on big integers after an overflow.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::scalar::{gcd_big, gcd_u128};
use super::{GaussianRational, RMatrix};

/// Gaussian integers, with the operations the kernels need.
trait Zi: Clone {
    /// Positive integers, used for cleared denominators.
    type Int: Clone;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn add(&self, o: &Self) -> Option<Self>;
    /// `self / d` where the quotient is known to be a Gaussian integer.
    fn div_exact(&self, d: &Self) -> Option<Self>;
    /// `self / d` in Q(i), reduced.
    fn over(&self, d: &Self) -> Option<GaussianRational>;
    fn over_int(&self, d: &Self::Int) -> Option<GaussianRational>;
    fn int_mul(a: &Self::Int, b: &Self::Int) -> Option<Self::Int>;
    /// Entries times their least common denominator `l`.
    fn clear<'a>(
        v: impl Iterator<Item = &'a GaussianRational> + Clone,
    ) -> Option<(Vec<Self>, Self::Int)>;
}

#[derive(Clone, Debug, PartialEq)]
struct GInt {
    re: BigInt,
    im: BigInt,
}

impl GInt {
    fn conj_mul(&self, d: &GInt) -> GInt {
        GInt {
            re: &self.re * &d.re + &self.im * &d.im,
            im: &self.im * &d.re - &self.re * &d.im,
        }
    }
}

fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a == b || b.is_one() {
        return a.clone();
    }
    if a.is_one() {
        return b.clone();
    }
    a / gcd_big(a, b) * b
}

impl Zi for GInt {
    type Int = BigInt;

    fn zero() -> Self {
        Self {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    fn one() -> Self {
        Self {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &GInt) -> Option<GInt> {
        if self.im.is_zero() && o.im.is_zero() {
            return Some(GInt {
                re: &self.re * &o.re,
                im: BigInt::zero(),
            });
        }
        Some(GInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        })
    }

    fn sub(&self, o: &GInt) -> Option<GInt> {
        Some(GInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        })
    }

    fn add(&self, o: &GInt) -> Option<GInt> {
        Some(GInt {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        })
    }

    fn div_exact(&self, d: &GInt) -> Option<GInt> {
        if d.im.is_zero() {
            if d.re.is_one() {
                return Some(self.clone());
            }
            return Some(GInt {
                re: &self.re / &d.re,
                im: &self.im / &d.re,
            });
        }
        let n = &d.re * &d.re + &d.im * &d.im;
        let num = self.conj_mul(d);
        debug_assert!(
            (&num.re % &n).is_zero() && (&num.im % &n).is_zero(),
            "inexact division"
        );
        Some(GInt {
            re: num.re / &n,
            im: num.im / n,
        })
    }

    fn over(&self, d: &GInt) -> Option<GaussianRational> {
        if d.im.is_zero() {
            return Some(GaussianRational::from_big(
                self.re.clone(),
                self.im.clone(),
                d.re.clone(),
            ));
        }
        let n = &d.re * &d.re + &d.im * &d.im;
        let num = self.conj_mul(d);
        Some(GaussianRational::from_big(num.re, num.im, n))
    }

    fn over_int(&self, d: &BigInt) -> Option<GaussianRational> {
        Some(GaussianRational::from_big(
            self.re.clone(),
            self.im.clone(),
            d.clone(),
        ))
    }

    fn int_mul(a: &BigInt, b: &BigInt) -> Option<BigInt> {
        Some(a * b)
    }

    fn clear<'a>(
        v: impl Iterator<Item = &'a GaussianRational> + Clone,
    ) -> Option<(Vec<GInt>, BigInt)> {
        let l = v.clone().fold(BigInt::one(), |l, x| lcm(&l, &x.parts().2));
        let w = v
            .map(|x| {
                let (re, im, den) = x.parts();
                if den == l {
                    GInt { re, im }
                } else {
                    let f = &l / den;
                    GInt {
                        re: re * &f,
                        im: im * f,
                    }
                }
            })
            .collect();
        Some((w, l))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Small {
    re: i128,
    im: i128,
}

impl Small {
    fn conj_mul(&self, d: &Small) -> Option<Small> {
        Some(Small {
            re: self
                .re
                .checked_mul(d.re)?
                .checked_add(self.im.checked_mul(d.im)?)?,
            im: self
                .im
                .checked_mul(d.re)?
                .checked_sub(self.re.checked_mul(d.im)?)?,
        })
    }

    fn norm(&self) -> Option<i128> {
        self.re
            .checked_mul(self.re)?
            .checked_add(self.im.checked_mul(self.im)?)
    }
}

impl Zi for Small {
    type Int = i128;

    fn zero() -> Self {
        Small { re: 0, im: 0 }
    }

    fn one() -> Self {
        Small { re: 1, im: 0 }
    }

    fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    fn mul(&self, o: &Small) -> Option<Small> {
        if self.im == 0 && o.im == 0 {
            return Some(Small {
                re: self.re.checked_mul(o.re)?,
                im: 0,
            });
        }
        Some(Small {
            re: self
                .re
                .checked_mul(o.re)?
                .checked_sub(self.im.checked_mul(o.im)?)?,
            im: self
                .re
                .checked_mul(o.im)?
                .checked_add(self.im.checked_mul(o.re)?)?,
        })
    }

    fn sub(&self, o: &Small) -> Option<Small> {
        Some(Small {
            re: self.re.checked_sub(o.re)?,
            im: self.im.checked_sub(o.im)?,
        })
    }

    fn add(&self, o: &Small) -> Option<Small> {
        Some(Small {
            re: self.re.checked_add(o.re)?,
            im: self.im.checked_add(o.im)?,
        })
    }

    fn div_exact(&self, d: &Small) -> Option<Small> {
        if d.im == 0 {
            return Some(Small {
                re: self.re / d.re,
                im: self.im / d.re,
            });
        }
        let n = d.norm()?;
        let num = self.conj_mul(d)?;
        debug_assert!(num.re % n == 0 && num.im % n == 0, "inexact division");
        Some(Small {
            re: num.re / n,
            im: num.im / n,
        })
    }

    fn over(&self, d: &Small) -> Option<GaussianRational> {
        if d.im == 0 {
            return GaussianRational::from_i128(self.re, self.im, d.re);
        }
        let num = self.conj_mul(d)?;
        GaussianRational::from_i128(num.re, num.im, d.norm()?)
    }

    fn over_int(&self, d: &i128) -> Option<GaussianRational> {
        GaussianRational::from_i128(self.re, self.im, *d)
    }

    fn int_mul(a: &i128, b: &i128) -> Option<i128> {
        a.checked_mul(*b)
    }

    fn clear<'a>(
        v: impl Iterator<Item = &'a GaussianRational> + Clone,
    ) -> Option<(Vec<Small>, i128)> {
        let mut l: i128 = 1;
        for x in v.clone() {
            let d = x.small_parts()?.2 as i128;
            if d != l && d != 1 {
                l = (l / gcd_u128(l as u128, d as u128) as i128).checked_mul(d)?;
            }
        }
        v.map(|x| {
            let (re, im, den) = x.small_parts()?;
            let f = l / den as i128;
            Some(Small {
                re: (re as i128).checked_mul(f)?,
                im: (im as i128).checked_mul(f)?,
            })
        })
        .collect::<Option<Vec<_>>>()
        .map(|w| (w, l))
    }
}

type Cleared<T> = (Vec<Vec<T>>, Vec<<T as Zi>::Int>);

fn integer_rows<T: Zi>(a: &RMatrix) -> Option<Cleared<T>> {
    (0..a.rows())
        .map(|i| T::clear(a.data()[i * a.cols()..(i + 1) * a.cols()].iter()))
        .collect::<Option<Vec<_>>>()
        .map(|v| v.into_iter().unzip())
}

fn integer_cols<T: Zi>(a: &RMatrix) -> Option<Cleared<T>> {
    (0..a.cols())
        .map(|j| T::clear(a.data().iter().skip(j).step_by(a.cols().max(1))))
        .collect::<Option<Vec<_>>>()
        .map(|v| v.into_iter().unzip())
}

fn product_in<T: Zi>(a: &RMatrix, b: &RMatrix) -> Option<RMatrix> {
    let (n, inner, p) = (a.rows(), a.cols(), b.cols());
    let (ar, ls) = integer_rows::<T>(a)?;
    let (bc, ms) = integer_cols::<T>(b)?;
    let mut data = Vec::with_capacity(n * p);
    for i in 0..n {
        for j in 0..p {
            let mut s = T::zero();
            for k in 0..inner {
                let (x, y) = (&ar[i][k], &bc[j][k]);
                if !x.is_zero() && !y.is_zero() {
                    s = s.add(&x.mul(y)?)?;
                }
            }
            data.push(if s.is_zero() {
                GaussianRational::zero()
            } else {
                s.over_int(&T::int_mul(&ls[i], &ms[j])?)?
            });
        }
    }
    Some(RMatrix::new(n, p, data).expect("shape"))
}

/// Matrix product; `a.cols() == b.rows()` is checked by the caller.
pub(crate) fn product(a: &RMatrix, b: &RMatrix) -> RMatrix {
    product_in::<Small>(a, b)
        .unwrap_or_else(|| product_in::<GInt>(a, b).expect("big integers do not overflow"))
}

/// `(piv r_j - f p_j) / prev`, skipping structural zeros.
fn eliminate<T: Zi>(r: &mut [T], prow: &[T], piv: &T, prev: &T, f: &T, from: usize) -> Option<()> {
    for j in from..r.len() {
        let v = if f.is_zero() || prow[j].is_zero() {
            if r[j].is_zero() {
                continue;
            }
            piv.mul(&r[j])?
        } else {
            piv.mul(&r[j])?.sub(&f.mul(&prow[j])?)?
        };
        r[j] = v.div_exact(prev)?;
    }
    Some(())
}

/// Fraction-free Gauss-Jordan elimination. Every pivot of the result equals
/// the returned `d`, and the reduced row echelon form is the result over `d`.
fn gauss_jordan<T: Zi>(mut a: Vec<Vec<T>>, cols: usize) -> Option<(Vec<Vec<T>>, Vec<usize>, T)> {
    let rows = a.len();
    let mut prev = T::one();
    let mut pivots = Vec::new();
    for col in 0..cols {
        let row = pivots.len();
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let piv = a[row][col].clone();
        let (top, rest) = a.split_at_mut(row);
        let (prow, bottom) = rest.split_first_mut().expect("pivot row");
        for r in top.iter_mut().chain(bottom.iter_mut()) {
            let f = r[col].clone();
            eliminate(r, prow, &piv, &prev, &f, 0)?;
        }
        prev = piv;
        pivots.push(col);
    }
    Some((a, pivots, prev))
}

fn rref_in<T: Zi>(a: &RMatrix) -> Option<(RMatrix, Vec<usize>)> {
    let (rows, cols) = a.shape();
    let (g, pivots, d) = gauss_jordan(integer_rows::<T>(a)?.0, cols)?;
    let mut data = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            data.push(if i >= pivots.len() || g[i][j].is_zero() {
                GaussianRational::zero()
            } else if pivots[i] == j {
                GaussianRational::one()
            } else {
                g[i][j].over(&d)?
            });
        }
    }
    Some((RMatrix::new(rows, cols, data).expect("shape"), pivots))
}

/// Reduced row echelon form and pivot columns.
pub(crate) fn rref(a: &RMatrix) -> (RMatrix, Vec<usize>) {
    rref_in::<Small>(a).unwrap_or_else(|| rref_in::<GInt>(a).expect("big integers do not overflow"))
}

/// Fraction-free forward elimination; the rank.
fn bareiss_rank<T: Zi>(mut a: Vec<Vec<T>>, cols: usize) -> Option<usize> {
    let rows = a.len();
    let mut prev = T::one();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let (head, bottom) = a.split_at_mut(row + 1);
        let prow = &head[row];
        let piv = &prow[col];
        for r in bottom.iter_mut() {
            let f = r[col].clone();
            eliminate(r, prow, piv, &prev, &f, col + 1)?;
            r[col] = T::zero();
        }
        prev = piv.clone();
        row += 1;
    }
    Some(row)
}

fn exact_rank(a: &RMatrix) -> usize {
    integer_rows::<Small>(a)
        .and_then(|(r, _)| bareiss_rank(r, a.cols()))
        .unwrap_or_else(|| {
            bareiss_rank(integer_rows::<GInt>(a).expect("big").0, a.cols())
                .expect("big integers do not overflow")
        })
}

const P: u64 = 4_611_686_018_427_387_817;
/// A square root of -1 modulo `P`.
const I_MOD_P: u64 = 120_863_620_846_201_794;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    r
}

fn reduce(x: &BigInt) -> u64 {
    let p = BigInt::from(P);
    let r = ((x % &p) + &p) % p;
    r.to_u64().expect("reduced")
}

/// Image of `x` under Z[i] -> F_P, i -> I_MOD_P, or None if `P` divides the denominator.
fn to_field(x: &GaussianRational) -> Option<u64> {
    let (re, im, den) = match x.small_parts() {
        Some((re, im, den)) => {
            let r = |v: i64| v.rem_euclid(P as i64) as u64;
            (r(re), r(im), r(den))
        }
        None => {
            let (re, im, den) = x.parts();
            (reduce(&re), reduce(&im), reduce(&den))
        }
    };
    if den == 0 {
        return None;
    }
    let num = (re as u128 + mulmod(im, I_MOD_P) as u128) % P as u128;
    Some(mulmod(num as u64, powmod(den, P - 2)))
}

/// Rank of the reduction modulo a prime over Z[i]. Minors only vanish more
/// often after reduction, so this is a lower bound for the rank over Q(i).
fn rank_mod_p(a: &RMatrix) -> Option<usize> {
    let (rows, cols) = a.shape();
    let mut m: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| to_field(&a[(i, j)]))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<_>>()?;
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, p);
        let inv = powmod(m[row][col], P - 2);
        for r in row + 1..rows {
            if m[r][col] == 0 {
                continue;
            }
            let f = mulmod(m[r][col], inv);
            for j in col..cols {
                let t = mulmod(f, m[row][j]);
                m[r][j] = (m[r][j] + P - t) % P;
            }
        }
        row += 1;
    }
    Some(row)
}

pub(crate) fn rank(a: &RMatrix) -> usize {
    let full = a.rows().min(a.cols());
    if full == 0 {
        return 0;
    }
    if rank_mod_p(a) == Some(full) {
        return full;
    }
    exact_rank(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_rref(a: &RMatrix) -> (RMatrix, Vec<usize>) {
        let mut a = a.clone();
        let mut pivots = Vec::new();
        for col in 0..a.cols() {
            let row = pivots.len();
            if row == a.rows() {
                break;
            }
            let Some(p) = (row..a.rows()).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            for j in 0..a.cols() {
                let t = a[(row, j)].clone();
                a[(row, j)] = a[(p, j)].clone();
                a[(p, j)] = t;
            }
            let inv = a[(row, col)].inv().expect("nonzero");
            for j in 0..a.cols() {
                a[(row, j)] = &a[(row, j)] * &inv;
            }
            for r in 0..a.rows() {
                if r != row {
                    let f = a[(r, col)].clone();
                    for j in 0..a.cols() {
                        let t = &f * &a[(row, j)];
                        a[(r, j)] = &a[(r, j)] - &t;
                    }
                }
            }
            pivots.push(col);
        }
        (a, pivots)
    }

    fn naive_product(a: &RMatrix, b: &RMatrix) -> RMatrix {
        RMatrix::from_fn(a.rows(), b.cols(), |i, j| {
            (0..a.cols()).fold(GaussianRational::zero(), |s, k| {
                &s + &(&a[(i, k)] * &b[(k, j)])
            })
        })
    }

    fn entry(v: &[i64]) -> GaussianRational {
        GaussianRational::from_fracs(v[0], v[1].abs() + 1, v[2], v[3].abs() + 1)
    }

    fn matrix(rows: usize, cols: usize, v: &[i64], zeros: &[bool]) -> RMatrix {
        RMatrix::from_fn(rows, cols, |i, j| {
            let k = i * cols + j;
            if zeros[k] {
                GaussianRational::zero()
            } else {
                entry(&v[4 * k..4 * k + 4])
            }
        })
    }

    #[test]
    fn rank_deficient_and_big_entries() {
        let big = GaussianRational::from_fracs(i64::MAX, 3, -7, i64::MAX - 2);
        let row = [
            big.clone(),
            GaussianRational::from_ints(2, -1),
            GaussianRational::one(),
        ];
        let mut data: Vec<GaussianRational> = row.to_vec();
        data.extend(row.iter().map(|x| x * &big));
        data.extend([GaussianRational::zero(), GaussianRational::i(), big.clone()]);
        let a = RMatrix::new(3, 3, data).unwrap();
        assert_eq!(rank(&a), 2);
        assert_eq!(rref(&a), naive_rref(&a));
    }

    proptest::proptest! {
        #[test]
        fn kernels_match_naive_elimination(
            shape in (1usize..5, 1usize..6, 1usize..4),
            v in proptest::collection::vec(-40i64..40, 4 * 30),
            z in proptest::collection::vec(proptest::bool::weighted(0.4), 30),
        ) {
            let (r, c, p) = shape;
            let a = matrix(r, c, &v, &z);
            // a dependent row on top of `a`
            let dep = RMatrix::vstack(&[&a, &(&RMatrix::from_fn(1, r, |_, j| entry(&v[4 * j..4 * j + 4])) * &a)]).unwrap();
            for m in [&a, &dep] {
                let want = naive_rref(m);
                proptest::prop_assert_eq!(rref(m), want.clone());
                proptest::prop_assert_eq!(rank(m), want.1.len());
            }
            let b = matrix(c, p, &v[40..], &z[10..]);
            proptest::prop_assert_eq!(product(&a, &b), naive_product(&a, &b));
        }
    }
}
