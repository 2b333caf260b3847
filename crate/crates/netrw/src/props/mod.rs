//! Concrete PROPs that networks can be evaluated in.

mod assign;
mod baff;
mod conn;
mod feedback;
mod matrix;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;

pub use assign::{Assignment, RawMatrix};
pub use baff::{BaffElem, BaffNat};
pub use conn::{ConnElem, Connectivity};
pub use feedback::{baff_feedback, matrix_feedback, FeedbackError};
pub use matrix::{nat_matrix, BoolMatrix, Matrix, MatrixProp, NatMatrix, RatMatrix, Semiring};

use crate::core::{BoolMat, Symbol};
use crate::network::{EvalError, Network, TargetProp};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PropsError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown target `{0}` (expected nat-matrix, rat-matrix, bool-matrix, baff-nat or connectivity)")]
    UnknownTarget(String),
    #[error("target `{0}` needs an assignment file")]
    MissingAssignment(String),
    #[error("value for `{0}` must have natural entries")]
    NotNatural(String),
    #[error("value for `{0}` is not a biaffine padded matrix")]
    BadBaff(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// The built-in targets, addressable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetKind {
    NatMatrix,
    RatMatrix,
    BoolMatrix,
    BaffNat,
    Connectivity,
}

impl TargetKind {
    pub const ALL: [TargetKind; 5] = [
        TargetKind::NatMatrix,
        TargetKind::RatMatrix,
        TargetKind::BoolMatrix,
        TargetKind::BaffNat,
        TargetKind::Connectivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TargetKind::NatMatrix => "nat-matrix",
            TargetKind::RatMatrix => "rat-matrix",
            TargetKind::BoolMatrix => "bool-matrix",
            TargetKind::BaffNat => "baff-nat",
            TargetKind::Connectivity => "connectivity",
        }
    }
}

impl FromStr for TargetKind {
    type Err = PropsError;

    fn from_str(s: &str) -> Result<Self, PropsError> {
        TargetKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| PropsError::UnknownTarget(s.to_string()))
    }
}

impl fmt::Display for TargetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A value in one of the built-in targets.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Nat(Matrix<BigUint>),
    Rat(Matrix<BigRational>),
    Bool(BoolMat),
    Baff(BaffElem),
    Conn(ConnElem),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Nat(m) => m.fmt(f),
            Value::Rat(m) => m.fmt(f),
            Value::Bool(m) => m.fmt(f),
            Value::Baff(m) => m.fmt(f),
            Value::Conn(m) => m.fmt(f),
        }
    }
}

fn want_shape(sym: &Symbol, pad: usize) -> (usize, usize) {
    (sym.coarity + pad, sym.arity + pad)
}

/// Value of `sym` in the natural matrix target; the neutral symbol is the identity.
pub fn nat_value(assign: &Assignment, sym: &Symbol) -> Result<Option<Matrix<BigUint>>, PropsError> {
    if sym.is_neutral() {
        return Ok(Some(Matrix::identity(1)));
    }
    let Some(raw) = assign.get(&sym.name) else {
        return Ok(None);
    };
    let rows = raw.to_naturals().ok_or_else(|| PropsError::NotNatural(sym.name.to_string()))?;
    Ok(Matrix::from_rows(rows, raw.cols))
}

/// Value of `sym` in the biaffine target.
pub fn baff_value(assign: &Assignment, sym: &Symbol) -> Result<Option<BaffElem>, PropsError> {
    if sym.is_neutral() {
        return Ok(Some(BaffElem::linear(&Matrix::identity(1))));
    }
    let Some(raw) = assign.get(&sym.name) else {
        return Ok(None);
    };
    let rows = raw.to_naturals().ok_or_else(|| PropsError::NotNatural(sym.name.to_string()))?;
    let full = Matrix::from_rows(rows, raw.cols).expect("rectangular");
    if full.shape() != want_shape(sym, 2) {
        return Err(PropsError::Eval(EvalError::ArityMismatch {
            name: sym.name.to_string(),
            got: (full.rows().saturating_sub(2), full.cols().saturating_sub(2)),
            want: want_shape(sym, 0),
        }));
    }
    BaffElem::from_full(full).map(Some).ok_or_else(|| PropsError::BadBaff(sym.name.to_string()))
}

/// Every value a symbol needs, resolved up front so evaluation itself cannot fail on parsing.
fn resolve<T, F>(net: &Network, f: F) -> Result<impl Fn(&Symbol) -> Option<T>, PropsError>
where
    T: Clone,
    F: Fn(&Symbol) -> Result<Option<T>, PropsError>,
{
    let mut table: Vec<(Symbol, T)> = Vec::new();
    for sym in net.deco().values() {
        if table.iter().any(|(s, _)| s == sym) {
            continue;
        }
        if let Some(v) = f(sym)? {
            table.push((sym.clone(), v));
        }
    }
    Ok(move |s: &Symbol| table.iter().find(|(t, _)| t == s).map(|(_, v)| v.clone()))
}

/// Evaluates `net` in a named target.
///
/// `bool-matrix` without an assignment uses all-ones generators (so the
/// value is the transference); `connectivity` never needs one.
pub fn evaluate(kind: TargetKind, net: &Network, assign: Option<&Assignment>) -> Result<Value, PropsError> {
    let need = || assign.ok_or_else(|| PropsError::MissingAssignment(kind.name().to_string()));
    Ok(match kind {
        TargetKind::NatMatrix => {
            let a = need()?;
            let f = resolve(net, |s| nat_value(a, s))?;
            Value::Nat(net.evaluate(&NatMatrix::new(), f)?)
        }
        TargetKind::RatMatrix => {
            let a = need()?;
            let f = resolve(net, |s| {
                if s.is_neutral() {
                    return Ok(Some(Matrix::identity(1)));
                }
                Ok(a.get(&s.name).and_then(|r| Matrix::from_rows(r.to_rows(), r.cols)))
            })?;
            Value::Rat(net.evaluate(&RatMatrix::new(), f)?)
        }
        TargetKind::BoolMatrix => {
            let f = resolve(net, |s| {
                if s.is_neutral() {
                    return Ok(Some(BoolMat::identity(1)));
                }
                Ok(match assign {
                    None => Some(BoolMat::ones(s.coarity, s.arity)),
                    Some(a) => a.get(&s.name).map(|r| {
                        let mut b = BoolMat::zeros(r.rows, r.cols);
                        for i in 0..r.rows {
                            for j in 0..r.cols {
                                b.set(i, j, !num_traits::Zero::is_zero(r.get(i, j)));
                            }
                        }
                        b
                    }),
                })
            })?;
            Value::Bool(net.evaluate(&BoolMatrix, f)?)
        }
        TargetKind::BaffNat => {
            let a = need()?;
            let f = resolve(net, |s| baff_value(a, s))?;
            Value::Baff(net.evaluate(&BaffNat, f)?)
        }
        TargetKind::Connectivity => {
            let f = |s: &Symbol| {
                Some(if s.is_neutral() {
                    Connectivity.identity(1)
                } else {
                    ConnElem::connected(s.coarity, s.arity)
                })
            };
            Value::Conn(net.evaluate(&Connectivity, f)?)
        }
    })
}
