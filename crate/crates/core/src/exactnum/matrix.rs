use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::GaussianRational;
use crate::Error;

/// Dense row-major matrix over the Gaussian rationals. Zero-sized
/// dimensions are allowed and behave as empty blocks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl RMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<GaussianRational>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                GaussianRational::one()
            } else {
                GaussianRational::zero()
            }
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> GaussianRational,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Real integer matrix from nested rows; handy for tests and fixed configurations.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(r, c, |i, j| GaussianRational::from(rows[i][j]))
    }

    pub fn diag(entries: &[GaussianRational]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                GaussianRational::zero()
            }
        })
    }

    /// Column vector.
    pub fn column_vector(entries: Vec<GaussianRational>) -> Self {
        let n = entries.len();
        Self {
            rows: n,
            cols: 1,
            data: entries,
        }
    }

    /// Standard basis vector e_i (0-based) of length n as a column.
    pub fn unit(n: usize, i: usize) -> Self {
        Self::from_fn(n, 1, |r, _| {
            if r == i {
                GaussianRational::one()
            } else {
                GaussianRational::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[GaussianRational] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }

    /// A* = -A, i.e. membership in u(n).
    pub fn is_anti_hermitian(&self) -> bool {
        self.is_square() && (self + &self.adjoint()).is_zero()
    }

    pub fn trace(&self) -> GaussianRational {
        (0..self.rows.min(self.cols)).fold(GaussianRational::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn column(&self, j: usize) -> Self {
        Self::from_fn(self.rows, 1, |i, _| self[(i, j)].clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        assert!(
            r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols,
            "submatrix out of range"
        );
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn row_block(&self, r0: usize, r1: usize) -> Self {
        self.submatrix(r0, r1, 0, self.cols)
    }

    pub fn col_block(&self, c0: usize, c1: usize) -> Self {
        self.submatrix(0, self.rows, c0, c1)
    }

    /// Copies `block` into `self` with its top-left corner at `(r, c)`.
    pub fn set_block(&mut self, r: usize, c: usize, block: &RMatrix) {
        assert!(
            r + block.rows <= self.rows && c + block.cols <= self.cols,
            "block out of range"
        );
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r + i, c + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Horizontal concatenation. All parts must have the same row count.
    pub fn hstack(parts: &[&RMatrix]) -> Result<Self, Error> {
        let rows = parts.first().map_or(0, |p| p.rows);
        if parts.iter().any(|p| p.rows != rows) {
            return Err(Error::DimensionMismatch(
                "hstack with differing row counts".into(),
            ));
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c = 0;
        for p in parts {
            out.set_block(0, c, p);
            c += p.cols;
        }
        Ok(out)
    }

    /// Vertical concatenation. All parts must have the same column count.
    pub fn vstack(parts: &[&RMatrix]) -> Result<Self, Error> {
        let cols = parts.first().map_or(0, |p| p.cols);
        if parts.iter().any(|p| p.cols != cols) {
            return Err(Error::DimensionMismatch(
                "vstack with differing column counts".into(),
            ));
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Self::zeros(rows, cols);
        let mut r = 0;
        for p in parts {
            out.set_block(r, 0, p);
            r += p.rows;
        }
        Ok(out)
    }

    /// Block-diagonal matrix.
    pub fn block_diag(parts: &[&RMatrix]) -> Self {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            out.set_block(r, c, p);
            r += p.rows;
            c += p.cols;
        }
        out
    }

    pub fn try_mul(&self, o: &RMatrix) -> Result<Self, Error> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(super::integral::product(self, o))
    }

    fn zip_with(
        &self,
        o: &RMatrix,
        f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational,
    ) -> Self {
        assert_eq!(
            self.shape(),
            o.shape(),
            "shape mismatch in elementwise operation"
        );
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (RMatrix, Vec<usize>) {
        super::integral::rref(self)
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        super::integral::rank(self)
    }

    /// Basis of the right kernel, one column per free variable.
    pub fn kernel(&self) -> RMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out[(f, k)] = GaussianRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                out[(p, k)] = -&r[(i, f)];
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<RMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Self::zeros(0, 0));
        }
        let aug = Self::hstack(&[self, &Self::identity(n)]).expect("same rows");
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0, n, n, 2 * n))
    }

    /// One solution of `self * X = rhs`, or `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &RMatrix) -> Option<RMatrix> {
        assert_eq!(self.rows, rhs.rows, "solve: row mismatch");
        let aug = Self::hstack(&[self, rhs]).expect("same rows");
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(p, j)] = r[(i, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    pub fn determinant(&self) -> GaussianRational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut a = self.clone();
        let n = self.rows;
        let mut det = GaussianRational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return GaussianRational::zero();
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let piv = a[(col, col)].clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero");
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] * &inv;
                for j in col..n {
                    let t = &f * &a[(col, j)];
                    a[(r, j)] -= &t;
                }
            }
        }
        det
    }

    /// Entries as (re, im) floats, row-major.
    pub fn to_f64(&self) -> Vec<(f64, f64)> {
        self.data.iter().map(|z| z.to_f64_pair()).collect()
    }
}

impl Index<(usize, usize)> for RMatrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a RMatrix> for &'a RMatrix {
    type Output = RMatrix;
    fn mul(self, o: &RMatrix) -> RMatrix {
        self.try_mul(o).expect("matrix product dimension mismatch")
    }
}

impl<'a> Add<&'a RMatrix> for &'a RMatrix {
    type Output = RMatrix;
    fn add(self, o: &RMatrix) -> RMatrix {
        self.zip_with(o, |a, b| a + b)
    }
}

impl<'a> Sub<&'a RMatrix> for &'a RMatrix {
    type Output = RMatrix;
    fn sub(self, o: &RMatrix) -> RMatrix {
        self.zip_with(o, |a, b| a - b)
    }
}

impl Neg for &RMatrix {
    type Output = RMatrix;
    fn neg(self) -> RMatrix {
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| -z).collect(),
        }
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl Serialize for RMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            data: self.data.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        RMatrix::new(r.rows, r.cols, r.data).map_err(D::Error::custom)
    }
}
