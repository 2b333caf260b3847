use std::fmt;
use std::marker::PhantomData;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::core::{BoolMat, Perm};
use crate::network::TargetProp;

/// Coefficient semiring for [`Matrix`].
pub trait Semiring: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Semiring for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Semiring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Dense row-major matrix over a semiring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Semiring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    /// Entry `(i, j)` is one iff `i = σ(j)`.
    pub fn perm(p: &Perm) -> Self {
        let mut m = Self::zeros(p.len(), p.len());
        for j in 0..p.len() {
            m.set(p.at(j), j, T::one());
        }
        m
    }

    /// Builds from rows; `cols` is needed when there are no rows.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Option<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    /// Block diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, other);
        out
    }

    pub fn paste(&mut self, r: usize, c: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j).clone());
            }
        }
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let mut out = Self::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.set(i - r0, j - c0, self.get(i, j).clone());
            }
        }
        out
    }

    /// Zero/nonzero pattern.
    pub fn support(&self) -> BoolMat {
        let mut b = BoolMat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j).is_zero() {
                    b.set(i, j, true);
                }
            }
        }
        b
    }
}

impl<T: Semiring> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{:?}", self.to_rows())
    }
}

impl<T: Semiring> fmt::Display for Matrix<T> {
    /// Rows on separate lines; an empty shape prints as `RxC`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "{}x{}", self.rows, self.cols);
        }
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// The matrix PROP over `T`: composition is the product, tensor the direct sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct MatrixProp<T>(PhantomData<T>);

impl<T> MatrixProp<T> {
    pub fn new() -> Self {
        MatrixProp(PhantomData)
    }
}

pub type NatMatrix = MatrixProp<BigUint>;
pub type RatMatrix = MatrixProp<BigRational>;

impl<T: Semiring> TargetProp for MatrixProp<T> {
    type Elem = Matrix<T>;

    fn shape(&self, a: &Matrix<T>) -> (usize, usize) {
        a.shape()
    }

    fn compose(&self, a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
        a.mul(b)
    }

    fn tensor(&self, a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
        a.direct_sum(b)
    }

    fn phi(&self, p: &Perm) -> Matrix<T> {
        Matrix::perm(p)
    }
}

/// The boolean matrix PROP.
#[derive(Clone, Copy, Debug, Default)]
pub struct BoolMatrix;

impl TargetProp for BoolMatrix {
    type Elem = BoolMat;

    fn shape(&self, a: &BoolMat) -> (usize, usize) {
        a.shape()
    }

    fn compose(&self, a: &BoolMat, b: &BoolMat) -> BoolMat {
        a.mul(b).expect("checked shapes")
    }

    fn tensor(&self, a: &BoolMat, b: &BoolMat) -> BoolMat {
        a.direct_sum(b)
    }

    fn phi(&self, p: &Perm) -> BoolMat {
        BoolMat::perm(p)
    }
}

/// Convenience for tests and examples: a natural-number matrix from rows.
pub fn nat_matrix(rows: &[&[u64]]) -> Matrix<BigUint> {
    let cols = rows.first().map_or(0, |r| r.len());
    Matrix::from_rows(
        rows.iter().map(|r| r.iter().map(|&x| BigUint::from(x)).collect()).collect(),
        cols,
    )
    .expect("rectangular rows")
}
