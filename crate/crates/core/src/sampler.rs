//! Deterministic, seeded generation of exact test data.
//!
//! The generator is ChaCha8 (`rand_chacha`). Independent streams are derived
//! from `(seed, tag, index)` with a SplitMix64 mix, so trials can run in any
//! order or in parallel and still see identical data.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chains::{standard_chain, tk_chart};
use crate::exactnum::{cayley_h_unitary, GaussianRational, RMatrix};
use crate::heisenberg::{act_l, act_n, from_chart, HeisPoint, LElement, NElement};
use crate::hermitian::HermSpace;
use crate::shilov::{MChain, ShilovPoint};
use crate::Error;

pub const DEFAULT_HEIGHT: u32 = 10;
const MAX_REJECTIONS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub seed: u64,
    pub height: u32,
    pub m: usize,
    pub n: usize,
}

impl SampleConfig {
    pub fn new(m: usize, n: usize, seed: u64) -> Self {
        Self {
            seed,
            height: DEFAULT_HEIGHT,
            m,
            n,
        }
    }

    pub fn with_height(mut self, height: u32) -> Self {
        self.height = height.max(1);
        self
    }

    pub fn space(&self) -> Result<HermSpace, Error> {
        HermSpace::new(self.m, self.n)
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn tag_hash(tag: &str) -> u64 {
    tag.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

/// A chain `q . V_k` with `q` in the stabilizer of v_inf, plus a known chart
/// point on it.
#[derive(Clone, Debug)]
pub struct SampledChain {
    pub chain: MChain,
    pub point: HeisPoint,
    pub k: usize,
    pub q: RMatrix,
}

pub struct Sampler {
    rng: ChaCha8Rng,
    height: i64,
    space: HermSpace,
}

impl Sampler {
    /// Panics if `cfg` does not describe a valid space.
    pub fn new(cfg: &SampleConfig) -> Self {
        Self::stream(cfg, "", 0)
    }

    /// Independent stream for `(tag, index)`.
    pub fn stream(cfg: &SampleConfig, tag: &str, index: u64) -> Self {
        let seed = splitmix(
            splitmix(cfg.seed)
                ^ splitmix(tag_hash(tag)).rotate_left(17)
                ^ splitmix(index.wrapping_add(1)),
        );
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            height: cfg.height.max(1) as i64,
            space: cfg.space().expect("valid (m, n)"),
        }
    }

    pub fn space(&self) -> HermSpace {
        self.space
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// `p/q` with `|p| <= h`, `1 <= q <= h`.
    pub fn rational(&mut self) -> BigRational {
        let p = self.int(-self.height, self.height);
        let q = self.int(1, self.height);
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn scalar(&mut self) -> GaussianRational {
        GaussianRational::new(self.rational(), self.rational())
    }

    pub fn nonzero_scalar(&mut self) -> GaussianRational {
        loop {
            let z = self.scalar();
            if !num_traits::Zero::is_zero(&z) {
                return z;
            }
        }
    }

    pub fn matrix(&mut self, r: usize, c: usize) -> RMatrix {
        RMatrix::from_fn(r, c, |_, _| self.scalar())
    }

    pub fn anti_hermitian(&mut self, n: usize) -> RMatrix {
        let mut a = RMatrix::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = GaussianRational::new(BigRational::from_integer(0.into()), self.rational());
            for j in i + 1..n {
                let z = self.scalar();
                a[(j, i)] = -z.conj();
                a[(i, j)] = z;
            }
        }
        a
    }

    pub fn hermitian(&mut self, n: usize) -> RMatrix {
        self.anti_hermitian(n).scale(&GaussianRational::i())
    }

    pub fn invertible(&mut self, n: usize) -> RMatrix {
        loop {
            let a = self.matrix(n, n);
            if n == 0 || a.inverse().is_some() {
                return a;
            }
        }
    }

    /// Full-rank m×k matrix, a basis of a random k-dimensional subspace of C^m.
    pub fn subspace_basis(&mut self, m: usize, k: usize) -> RMatrix {
        loop {
            let a = self.matrix(m, k);
            if a.rank() == k {
                return a;
            }
        }
    }

    /// Rational unitary `(Id - S)(Id + S)^{-1}`, S anti-Hermitian.
    pub fn unitary(&mut self, n: usize) -> RMatrix {
        let s = self.anti_hermitian(n);
        let id = RMatrix::identity(n);
        &(&id - &s)
            * &(&id + &s)
                .inverse()
                .expect("Id + S is invertible for anti-Hermitian S")
    }

    /// Rational unitary of determinant one: a product of embedded SU(2)
    /// Cayley factors from traceless anti-Hermitian 2×2 blocks.
    pub fn special_unitary(&mut self, n: usize) -> RMatrix {
        let mut g = RMatrix::identity(n);
        for i in 0..n.saturating_sub(1) {
            let t = self.rational();
            let z = self.scalar();
            let s = RMatrix::new(
                2,
                2,
                vec![
                    GaussianRational::new(BigRational::from_integer(0.into()), t.clone()),
                    z.clone(),
                    -z.conj(),
                    GaussianRational::new(BigRational::from_integer(0.into()), -t),
                ],
            )
            .expect("2x2");
            let id = RMatrix::identity(2);
            let su2 = &(&id - &s) * &(&id + &s).inverse().expect("invertible");
            let mut e = RMatrix::identity(n);
            e.set_block(i, i, &su2);
            g = &g * &e;
        }
        g
    }

    /// Exact h-unitary by the Cayley transform of `K = H S`.
    pub fn h_unitary(&mut self) -> RMatrix {
        let h = self.space.h();
        let dim = self.space.dim();
        for _ in 0..MAX_REJECTIONS {
            let k = &h * &self.anti_hermitian(dim);
            if let Ok(g) = cayley_h_unitary(&k, &h) {
                return g;
            }
        }
        panic!("Cayley sampling rejected {MAX_REJECTIONS} times");
    }

    pub fn n_element(&mut self) -> NElement {
        let (m, n) = (self.space.m, self.space.n);
        NElement {
            e: self.matrix(n - m, m),
            f: self.anti_hermitian(m),
        }
    }

    pub fn central_element(&mut self) -> NElement {
        let f = self.anti_hermitian(self.space.m);
        NElement::central(self.space, f)
    }

    pub fn l_element(&mut self) -> LElement {
        let (m, n) = (self.space.m, self.space.n);
        LElement {
            a: self.invertible(m),
            b: self.special_unitary(n - m),
        }
    }

    /// An element of the stabilizer of v_inf, as `n l` with its factors.
    pub fn q_element(&mut self) -> (NElement, LElement) {
        (self.n_element(), self.l_element())
    }

    pub fn heis_point(&mut self) -> HeisPoint {
        let (m, n) = (self.space.m, self.space.n);
        HeisPoint {
            x: self.matrix(n - m, m),
            y: self.anti_hermitian(m),
        }
    }

    /// A point from a random chart point; v_inf itself with probability 1/20.
    pub fn point(&mut self) -> ShilovPoint {
        if self.coin(0.05) {
            return ShilovPoint::v_inf(self.space);
        }
        self.chart_point()
    }

    /// A point transverse to v_inf.
    pub fn chart_point(&mut self) -> ShilovPoint {
        let p = self.heis_point();
        from_chart(self.space, &p).expect("chart points are isotropic")
    }

    pub fn signs(&mut self, m: usize) -> Vec<bool> {
        (0..m).map(|_| self.coin(0.5)).collect()
    }

    /// `q . V_k` for a random `q = n l`, with a chart point on it.
    pub fn chain(&mut self, k: usize) -> Result<SampledChain, Error> {
        let space = self.space;
        let m = space.m;
        let base = standard_chain(space, k)?;
        let (ne, le) = self.q_element();
        let q = &ne.matrix() * &le.matrix();
        let r = m - k;
        let e = self.matrix(r, k);
        let xu = self.unitary(r);
        let c = self.anti_hermitian(k);
        let p0 = tk_chart(space, k, &e, &xu, &c)?;
        let point = act_n(&ne, &act_l(&le, &p0));
        Ok(SampledChain {
            chain: base.transform(&q),
            point,
            k,
            q,
        })
    }

    /// `g . (v_inf, v_d, v_0)` with random signs and h-unitary `g`.
    pub fn maximal_triple(&mut self) -> (ShilovPoint, ShilovPoint, ShilovPoint, Vec<bool>) {
        let space = self.space;
        let plus = self.signs(space.m);
        let g = self.h_unitary();
        let vd = ShilovPoint::v_d(space, &plus).expect("valid signs");
        (
            ShilovPoint::v_inf(space).transform(&g),
            vd.transform(&g),
            ShilovPoint::v_0(space).transform(&g),
            plus,
        )
    }

    /// Points `[Id; 0; S_i]`, S_i anti-Hermitian and pairwise differing by
    /// invertible matrices, all on the chain through v_inf and v_0.
    pub fn coplanar_points(&mut self, count: usize) -> Vec<ShilovPoint> {
        let space = self.space;
        let (m, n) = (space.m, space.n);
        let mut ss: Vec<RMatrix> = Vec::new();
        while ss.len() < count {
            let s = self.anti_hermitian(m);
            if s.inverse().is_some() && ss.iter().all(|t| (&s - t).inverse().is_some()) {
                ss.push(s);
            }
        }
        ss.iter()
            .map(|s| {
                let mut b = RMatrix::zeros(m + n, m);
                b.set_block(0, 0, &RMatrix::identity(m));
                b.set_block(n, 0, s);
                ShilovPoint::from_basis(space, &b).expect("isotropic")
            })
            .collect()
    }
}
