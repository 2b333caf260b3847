use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::matrix::Matrix;
use crate::core::Perm;
use crate::network::TargetProp;

/// Element of the biaffine PROP over ℕ, stored as its padded matrix
///
/// ```text
/// [ 1  d  cᵀ ]
/// [ 0  1  0  ]
/// [ 0  b  A  ]
/// ```
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BaffElem {
    full: Matrix<BigUint>,
}

impl BaffElem {
    /// Checks the padding pattern.
    pub fn from_full(full: Matrix<BigUint>) -> Option<BaffElem> {
        let (r, c) = full.shape();
        if r < 2 || c < 2 {
            return None;
        }
        let one = BigUint::one();
        let ok = *full.get(0, 0) == one
            && *full.get(1, 1) == one
            && (1..r).all(|i| full.get(i, 0).is_zero())
            && (0..c).all(|j| j == 1 || full.get(1, j).is_zero());
        ok.then_some(BaffElem { full })
    }

    /// Assembles from the four parts.
    pub fn from_parts(a: &Matrix<BigUint>, b: &[BigUint], c: &[BigUint], d: BigUint) -> BaffElem {
        let (m, n) = a.shape();
        assert_eq!(b.len(), m);
        assert_eq!(c.len(), n);
        let mut full = Matrix::zeros(m + 2, n + 2);
        full.set(0, 0, BigUint::one());
        full.set(1, 1, BigUint::one());
        full.set(0, 1, d);
        for (j, x) in c.iter().enumerate() {
            full.set(0, j + 2, x.clone());
        }
        for (i, x) in b.iter().enumerate() {
            full.set(i + 2, 1, x.clone());
        }
        full.paste(2, 2, a);
        BaffElem { full }
    }

    /// Embedding of a plain matrix with zero affine parts.
    pub fn linear(a: &Matrix<BigUint>) -> BaffElem {
        BaffElem::from_parts(a, &vec![BigUint::zero(); a.rows()], &vec![BigUint::zero(); a.cols()], BigUint::zero())
    }

    pub fn full(&self) -> &Matrix<BigUint> {
        &self.full
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.full.rows() - 2, self.full.cols() - 2)
    }

    pub fn matrix_part(&self) -> Matrix<BigUint> {
        self.full.block(2, self.full.rows(), 2, self.full.cols())
    }

    pub fn vector_part(&self) -> Vec<BigUint> {
        (2..self.full.rows()).map(|i| self.full.get(i, 1).clone()).collect()
    }

    pub fn covector_part(&self) -> Vec<BigUint> {
        (2..self.full.cols()).map(|j| self.full.get(0, j).clone()).collect()
    }

    pub fn scalar_part(&self) -> BigUint {
        self.full.get(0, 1).clone()
    }

    /// Entries compared position by position, padding included.
    pub fn entries(&self) -> impl Iterator<Item = &BigUint> + '_ {
        (0..self.full.rows()).flat_map(move |i| (0..self.full.cols()).map(move |j| self.full.get(i, j)))
    }
}

impl fmt::Debug for BaffElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Baff{:?}", self.full.to_rows())
    }
}

impl fmt::Display for BaffElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.full.fmt(f)
    }
}

/// The biaffine PROP over ℕ.
#[derive(Clone, Copy, Debug, Default)]
pub struct BaffNat;

impl TargetProp for BaffNat {
    type Elem = BaffElem;

    fn shape(&self, a: &BaffElem) -> (usize, usize) {
        a.shape()
    }

    fn compose(&self, a: &BaffElem, b: &BaffElem) -> BaffElem {
        BaffElem { full: a.full.mul(&b.full) }
    }

    fn tensor(&self, x: &BaffElem, y: &BaffElem) -> BaffElem {
        let (k, l) = x.shape();
        let (m, n) = y.shape();
        let mut full = Matrix::zeros(k + m + 2, l + n + 2);
        full.set(0, 0, BigUint::one());
        full.set(1, 1, BigUint::one());
        full.set(0, 1, x.scalar_part() + y.scalar_part());
        for (j, v) in x.covector_part().into_iter().chain(y.covector_part()).enumerate() {
            full.set(0, j + 2, v);
        }
        for (i, v) in x.vector_part().into_iter().chain(y.vector_part()).enumerate() {
            full.set(i + 2, 1, v);
        }
        full.paste(2, 2, &x.matrix_part());
        full.paste(2 + k, 2 + l, &y.matrix_part());
        BaffElem { full }
    }

    fn phi(&self, p: &Perm) -> BaffElem {
        BaffElem::linear(&Matrix::perm(p))
    }
}
