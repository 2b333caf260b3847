use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{FreeError, NetClass};
use crate::core::{BoolMat, Perm};

/// Finite formal sum of network classes with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinComb {
    coarity: usize,
    arity: usize,
    terms: BTreeMap<NetClass, BigRational>,
}

impl LinComb {
    pub fn zero(coarity: usize, arity: usize) -> LinComb {
        LinComb {
            coarity,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(c: NetClass) -> LinComb {
        LinComb::term(BigRational::one(), c)
    }

    pub fn term(coeff: BigRational, c: NetClass) -> LinComb {
        let (coarity, arity) = c.shape();
        let mut out = LinComb::zero(coarity, arity);
        if !coeff.is_zero() {
            out.terms.insert(c, coeff);
        }
        out
    }

    /// Sums `(coefficient, class)` pairs; all classes must have `shape`.
    pub fn from_terms(
        shape: (usize, usize),
        terms: impl IntoIterator<Item = (BigRational, NetClass)>,
    ) -> Result<LinComb, FreeError> {
        let mut out = LinComb::zero(shape.0, shape.1);
        for (k, c) in terms {
            out.add_term(k, c)?;
        }
        Ok(out)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.coarity, self.arity)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical-code order.
    pub fn terms(&self) -> impl Iterator<Item = (&NetClass, &BigRational)> {
        self.terms.iter()
    }

    pub fn classes(&self) -> impl Iterator<Item = &NetClass> {
        self.terms.keys()
    }

    pub fn coeff(&self, c: &NetClass) -> BigRational {
        self.terms.get(c).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The class when `self` is a single term with coefficient one.
    pub fn as_monomial(&self) -> Option<&NetClass> {
        match self.terms.iter().next() {
            Some((c, k)) if self.terms.len() == 1 && k.is_one() => Some(c),
            _ => None,
        }
    }

    /// Every term lies in the filtration piece of type `q`.
    pub fn within(&self, q: &BoolMat) -> bool {
        self.terms.keys().all(|c| c.within(q))
    }

    fn check_shape(&self, shape: (usize, usize)) -> Result<(), FreeError> {
        if self.shape() != shape {
            return Err(FreeError::Shape(format!("expected shape {:?}, got {:?}", self.shape(), shape)));
        }
        Ok(())
    }

    /// Adds `k·c` in place.
    pub fn add_term(&mut self, k: BigRational, c: NetClass) -> Result<(), FreeError> {
        self.check_shape(c.shape())?;
        if k.is_zero() {
            return Ok(());
        }
        let slot = self.terms.entry(c.clone()).or_insert_with(BigRational::zero);
        *slot += k;
        if slot.is_zero() {
            self.terms.remove(&c);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &LinComb) -> Result<LinComb, FreeError> {
        self.check_shape(other.shape())?;
        let mut out = self.clone();
        for (c, k) in &other.terms {
            out.add_term(k.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &LinComb) -> Result<LinComb, FreeError> {
        self.try_add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> LinComb {
        let mut out = LinComb::zero(self.coarity, self.arity);
        if k.is_zero() {
            return out;
        }
        for (c, x) in &self.terms {
            out.terms.insert(c.clone(), x * k);
        }
        out
    }

    /// Applies a class-level operation bilinearly.
    fn bilinear(
        &self,
        other: &LinComb,
        shape: (usize, usize),
        op: impl Fn(&NetClass, &NetClass) -> Result<NetClass, FreeError>,
    ) -> Result<LinComb, FreeError> {
        let mut out = LinComb::zero(shape.0, shape.1);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(x * y, op(a, b)?)?;
            }
        }
        Ok(out)
    }

    pub fn compose(&self, other: &LinComb) -> Result<LinComb, FreeError> {
        if self.arity != other.coarity {
            return Err(FreeError::Shape(format!(
                "cannot compose arity {} with coarity {}",
                self.arity, other.coarity
            )));
        }
        self.bilinear(other, (self.coarity, other.arity), |a, b| a.compose(b))
    }

    pub fn tensor(&self, other: &LinComb) -> LinComb {
        let shape = (self.coarity + other.coarity, self.arity + other.arity);
        self.bilinear(other, shape, |a, b| Ok(a.tensor(b))).expect("tensor is total")
    }

    pub fn phi(p: &Perm) -> LinComb {
        LinComb::monomial(NetClass::phi(p))
    }

    pub fn act(&self, sigma: &Perm, tau: &Perm) -> Result<LinComb, FreeError> {
        let mut out = LinComb::zero(self.coarity, self.arity);
        for (c, k) in &self.terms {
            out.add_term(k.clone(), c.act(sigma, tau)?)?;
        }
        Ok(out)
    }

    /// Bilinear symmetric join; undefined as soon as one pair of terms is.
    pub fn sym_join(&self, r: usize, q: usize, other: &LinComb) -> Result<LinComb, FreeError> {
        let (kr, lq) = self.shape();
        let (qm, rn) = other.shape();
        if kr < r || lq < q || qm < q || rn < r {
            return Err(FreeError::Shape(format!(
                "join with r={r}, q={q} of shapes {:?} and {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let shape = (kr - r + qm - q, lq - q + rn - r);
        self.bilinear(other, shape, |a, b| a.sym_join(r, q, b))
    }

    pub fn annex(&self, other: &LinComb) -> Result<LinComb, FreeError> {
        self.sym_join(other.arity, other.coarity, other)
    }

    pub fn feedback(&self, n: usize) -> Result<LinComb, FreeError> {
        self.sym_join(n, n, &LinComb::phi(&Perm::same(n)))
    }
}

impl Add for &LinComb {
    type Output = LinComb;

    /// Panics on shape mismatch; see [`LinComb::try_add`].
    fn add(self, other: &LinComb) -> LinComb {
        self.try_add(other).expect("shapes agree")
    }
}

impl Sub for &LinComb {
    type Output = LinComb;

    fn sub(self, other: &LinComb) -> LinComb {
        self.try_sub(other).expect("shapes agree")
    }
}

impl Neg for &LinComb {
    type Output = LinComb;

    fn neg(self) -> LinComb {
        self.scale(&-BigRational::one())
    }
}

impl From<NetClass> for LinComb {
    fn from(c: NetClass) -> LinComb {
        LinComb::monomial(c)
    }
}
