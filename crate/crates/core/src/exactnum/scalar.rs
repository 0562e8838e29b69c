use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element of Q(i): a complex number with rational real and imaginary parts.
///
/// Stored as `(a + b i) / d` with `d > 0` and `gcd(a, b, d) = 1`, in machine
/// integers while they fit. The representation is canonical, so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small { re: i64, im: i64, den: i64 },
    Big(Box<[BigInt; 3]>),
}

impl Default for GaussianRational {
    fn default() -> Self {
        Self::zero()
    }
}

pub(crate) fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

pub(crate) fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    match (a.magnitude().to_u128(), b.magnitude().to_u128()) {
        (Some(x), Some(y)) => BigInt::from(gcd_u128(x, y)),
        _ => {
            let to = |x: &BigInt| dashu_int::UBig::from_le_bytes(&x.magnitude().to_bytes_le());
            let g = dashu_int::ops::Gcd::gcd(to(a), to(b));
            BigInt::from_bytes_le(num_bigint::Sign::Plus, &g.to_le_bytes())
        }
    }
}

impl GaussianRational {
    /// Normalizes `(re + im i) / den`, `den != 0`.
    pub(crate) fn from_i128(mut re: i128, mut im: i128, mut den: i128) -> Option<Self> {
        if den < 0 {
            re = re.checked_neg()?;
            im = im.checked_neg()?;
            den = den.checked_neg()?;
        }
        let g = gcd_u128(gcd_u128(re.unsigned_abs(), im.unsigned_abs()), den as u128) as i128;
        let (re, im, den) = (re / g, im / g, den / g);
        match (i64::try_from(re), i64::try_from(im), i64::try_from(den)) {
            (Ok(re), Ok(im), Ok(den)) => Some(Self(Repr::Small { re, im, den })),
            _ => Some(Self::from_big_unchecked(re.into(), im.into(), den.into())),
        }
    }

    fn from_big_unchecked(re: BigInt, im: BigInt, den: BigInt) -> Self {
        Self(Repr::Big(Box::new([re, im, den])))
    }

    /// Normalizes `(re + im i) / den`, `den != 0`.
    pub(crate) fn from_big(mut re: BigInt, mut im: BigInt, mut den: BigInt) -> Self {
        if den.is_negative() {
            re = -re;
            im = -im;
            den = -den;
        }
        let g = gcd_big(&gcd_big(&re, &im), &den);
        if !g.is_one() {
            re /= &g;
            im /= &g;
            den /= &g;
        }
        match (re.to_i64(), im.to_i64(), den.to_i64()) {
            (Some(re), Some(im), Some(den)) => Self(Repr::Small { re, im, den }),
            _ => Self::from_big_unchecked(re, im, den),
        }
    }

    pub(crate) fn small_parts(&self) -> Option<(i64, i64, i64)> {
        match self.0 {
            Repr::Small { re, im, den } => Some((re, im, den)),
            Repr::Big(_) => None,
        }
    }

    pub(crate) fn parts(&self) -> (BigInt, BigInt, BigInt) {
        match &self.0 {
            Repr::Small { re, im, den } => ((*re).into(), (*im).into(), (*den).into()),
            Repr::Big(b) => (b[0].clone(), b[1].clone(), b[2].clone()),
        }
    }

    pub fn new(re: BigRational, im: BigRational) -> Self {
        let (rn, rd) = re.into_raw();
        let (in_, id) = im.into_raw();
        if rd == id {
            return Self::from_big(rn, in_, rd);
        }
        Self::from_big(rn * &id, in_ * &rd, rd * id)
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self(Repr::Small { re, im, den: 1 })
    }

    /// `p/q + (r/s) i`. Panics on a zero denominator.
    pub fn from_fracs(p: i64, q: i64, r: i64, s: i64) -> Self {
        assert!(q != 0 && s != 0, "zero denominator");
        let (p, q, r, s) = (p as i128, q as i128, r as i128, s as i128);
        Self::from_i128(p * s, r * q, q * s).expect("fits")
    }

    pub fn real(re: BigRational) -> Self {
        let (n, d) = re.into_raw();
        Self::from_big(n, BigInt::zero(), d)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    /// Real part.
    pub fn re(&self) -> BigRational {
        match &self.0 {
            Repr::Small { re, den, .. } => BigRational::new((*re).into(), (*den).into()),
            Repr::Big(b) => BigRational::new(b[0].clone(), b[2].clone()),
        }
    }

    /// Imaginary part.
    pub fn im(&self) -> BigRational {
        match &self.0 {
            Repr::Small { im, den, .. } => BigRational::new((*im).into(), (*den).into()),
            Repr::Big(b) => BigRational::new(b[1].clone(), b[2].clone()),
        }
    }

    pub fn conj(&self) -> Self {
        match &self.0 {
            Repr::Small { re, im, den } if *im != i64::MIN => Self(Repr::Small {
                re: *re,
                im: -im,
                den: *den,
            }),
            _ => {
                let (re, im, den) = self.parts();
                Self::from_big(re, -im, den)
            }
        }
    }

    /// |z|^2, which is rational.
    pub fn norm_sqr(&self) -> BigRational {
        let (re, im, den) = self.parts();
        BigRational::new(&re * &re + &im * &im, &den * &den)
    }

    pub fn is_real(&self) -> bool {
        match &self.0 {
            Repr::Small { im, .. } => *im == 0,
            Repr::Big(b) => b[1].is_zero(),
        }
    }

    pub fn is_imaginary(&self) -> bool {
        match &self.0 {
            Repr::Small { re, .. } => *re == 0,
            Repr::Big(b) => b[0].is_zero(),
        }
    }

    /// Sign of the real part.
    pub fn re_signum(&self) -> i32 {
        match &self.0 {
            Repr::Small { re, .. } => re.signum() as i32,
            Repr::Big(b) => {
                if b[0].is_positive() {
                    1
                } else if b[0].is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Repr::Small { re, im, den } = self.0 {
            let (re, im, den) = (re as i128, im as i128, den as i128);
            let small = (|| {
                let n = (re * re).checked_add(im * im)?;
                Self::from_i128(den.checked_mul(re)?, den.checked_mul(-im)?, n)
            })();
            if let Some(z) = small {
                return Some(z);
            }
        }
        let (re, im, den) = self.parts();
        let n = &re * &re + &im * &im;
        Some(Self::from_big(&den * re, -(den * im), n))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        self * &Self::real(r.clone())
    }

    /// Multiplication by i.
    pub fn mul_i(&self) -> Self {
        match &self.0 {
            Repr::Small { re, im, den } if *im != i64::MIN => Self(Repr::Small {
                re: -im,
                im: *re,
                den: *den,
            }),
            _ => {
                let (re, im, den) = self.parts();
                Self::from_big(-im, re, den)
            }
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        match &self.0 {
            Repr::Small { re, im, den } => (*re as f64 / *den as f64, *im as f64 / *den as f64),
            Repr::Big(_) => (ratio_to_f64(&self.re()), ratio_to_f64(&self.im())),
        }
    }

    /// Largest absolute numerator or denominator of either part.
    pub fn height(&self) -> BigInt {
        let (re, im) = (self.re(), self.im());
        [re.numer(), re.denom(), im.numer(), im.denom()]
            .into_iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_default()
    }
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        // Huge parts: shift both down to a comparable range first.
        _ => {
            let nb = r.numer().bits() as i64;
            let db = r.denom().bits() as i64;
            let shift = (nb.max(db) - 900).max(0) as usize;
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

/// Writes a rational as a reduced `p/q` string; the denominator is always present.
pub fn format_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_ratio(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let parse_int =
        |t: &str| BigInt::from_str(t.trim()).map_err(|e| format!("bad integer {t:?}: {e}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(parse_int(p)?, q))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self(Repr::Small {
            re: 0,
            im: 0,
            den: 1,
        })
    }
    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { re: 0, im: 0, .. })
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self(Repr::Small {
            re: 1,
            im: 0,
            den: 1,
        })
    }
    fn is_one(&self) -> bool {
        matches!(
            self.0,
            Repr::Small {
                re: 1,
                im: 0,
                den: 1
            }
        )
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_ints(v, 0)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(v: BigRational) -> Self {
        Self::real(v)
    }
}

fn add_sub(a: &GaussianRational, b: &GaussianRational, sub: bool) -> GaussianRational {
    if let (
        Repr::Small {
            re: r1,
            im: i1,
            den: d1,
        },
        Repr::Small {
            re: r2,
            im: i2,
            den: d2,
        },
    ) = (&a.0, &b.0)
    {
        let (r1, i1, d1, r2, i2, d2) = (
            *r1 as i128,
            *i1 as i128,
            *d1 as i128,
            *r2 as i128,
            *i2 as i128,
            *d2 as i128,
        );
        let (r2, i2) = if sub { (-r2, -i2) } else { (r2, i2) };
        if d1 == d2 {
            if let Some(z) = GaussianRational::from_i128(r1 + r2, i1 + i2, d1) {
                return z;
            }
        } else {
            let g = gcd_u128(d1 as u128, d2 as u128) as i128;
            let (l1, l2) = (d2 / g, d1 / g);
            if let Some(z) =
                GaussianRational::from_i128(r1 * l1 + r2 * l2, i1 * l1 + i2 * l2, d1 * l1)
            {
                return z;
            }
        }
    }
    let (r1, i1, d1) = a.parts();
    let (mut r2, mut i2, d2) = b.parts();
    if sub {
        r2 = -r2;
        i2 = -i2;
    }
    if d1 == d2 {
        return GaussianRational::from_big(r1 + r2, i1 + i2, d1);
    }
    let g = gcd_big(&d1, &d2);
    let l1 = &d2 / &g;
    let l2 = &d1 / &g;
    GaussianRational::from_big(r1 * &l1 + r2 * &l2, i1 * &l1 + i2 * l2, d1 * l1)
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        add_sub(self, o, false)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        if o.is_zero() {
            return self.clone();
        }
        add_sub(self, o, true)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.is_zero() || o.is_zero() {
            return GaussianRational::zero();
        }
        if let (
            Repr::Small {
                re: r1,
                im: i1,
                den: d1,
            },
            Repr::Small {
                re: r2,
                im: i2,
                den: d2,
            },
        ) = (&self.0, &o.0)
        {
            let (r1, i1, d1, r2, i2, d2) = (
                *r1 as i128,
                *i1 as i128,
                *d1 as i128,
                *r2 as i128,
                *i2 as i128,
                *d2 as i128,
            );
            let small = (|| {
                let re = (r1 * r2).checked_sub(i1 * i2)?;
                let im = (r1 * i2).checked_add(i1 * r2)?;
                GaussianRational::from_i128(re, im, d1 * d2)
            })();
            if let Some(z) = small {
                return z;
            }
        }
        let (r1, i1, d1) = self.parts();
        let (r2, i2, d2) = o.parts();
        GaussianRational::from_big(&r1 * &r2 - &i1 * &i2, &r1 * &i2 + &i1 * &r2, d1 * d2)
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, o: &GaussianRational) -> GaussianRational {
        let inv = o.inv().expect("division by zero Gaussian rational");
        self * &inv
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        match &self.0 {
            Repr::Small { re, im, den } if *re != i64::MIN && *im != i64::MIN => {
                GaussianRational(Repr::Small {
                    re: -re,
                    im: -im,
                    den: *den,
                })
            }
            _ => {
                let (re, im, den) = self.parts();
                GaussianRational::from_big(-re, -im, den)
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &GaussianRational) -> GaussianRational {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        *self = &*self + o;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        *self = &*self - o;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, o: &GaussianRational) {
        *self = &*self * o;
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (self.re(), self.im());
        match (re.is_zero(), im.is_zero()) {
            (_, true) => write!(f, "{re}"),
            (true, false) => write!(f, "{im}i"),
            (false, false) => {
                if im.is_negative() {
                    write!(f, "{re}-{}i", -im)
                } else {
                    write!(f, "{re}+{im}i")
                }
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    re: String,
    im: String,
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ScalarRepr {
            re: format_ratio(&self.re()),
            im: format_ratio(&self.im()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ScalarRepr::deserialize(d)?;
        Ok(Self::new(
            parse_ratio(&r.re).map_err(D::Error::custom)?,
            parse_ratio(&r.im).map_err(D::Error::custom)?,
        ))
    }
}
