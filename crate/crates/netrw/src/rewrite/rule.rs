use std::fmt;

use crate::core::BoolMat;
use crate::freeprop::{LinComb, NetClass};

/// A rewrite rule `lhs ↦ rhs`, applicable in contexts admitted by its type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub id: String,
    /// Transference type: bounds which context paths may wrap around the redex.
    pub q: BoolMat,
    pub lhs: NetClass,
    pub rhs: LinComb,
    /// Whether `q` equals the transference of `lhs`.
    pub sharp: bool,
}

/// How the type of a new rule is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeSpec {
    /// The transference of the left hand side.
    Sharp,
    /// All ones except at the listed one-based `(output, input)` positions.
    Zeros(Vec<(usize, usize)>),
    Explicit(BoolMat),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RuleError {
    #[error("rule `{0}`: left hand side must be a single network with coefficient 1")]
    LhsNotMonomial(String),
    #[error("rule `{id}`: right hand side term {monomial} has a path at ({}, {}) outside the rule type", .position.0, .position.1)]
    RhsOutsideType {
        id: String,
        monomial: String,
        position: (usize, usize),
    },
    #[error("rule `{0}`: left hand side transference exceeds the rule type")]
    TrExceedsType(String),
    #[error("rule `{id}`: {msg}")]
    Shape { id: String, msg: String },
}

fn first_violation(tr: &BoolMat, q: &BoolMat) -> Option<(usize, usize)> {
    for i in 0..tr.rows() {
        for j in 0..tr.cols() {
            if tr.get(i, j) && !q.get(i, j) {
                return Some((i + 1, j + 1));
            }
        }
    }
    None
}

/// Checks and assembles a rule.
pub fn make_rule(id: &str, lhs: &LinComb, rhs: &LinComb, spec: TypeSpec) -> Result<Rule, RuleError> {
    let mu = lhs
        .as_monomial()
        .ok_or_else(|| RuleError::LhsNotMonomial(id.to_string()))?
        .clone();
    let (m, n) = mu.shape();
    if rhs.shape() != (m, n) && !rhs.is_zero() {
        return Err(RuleError::Shape {
            id: id.to_string(),
            msg: format!("lhs has shape {:?} but rhs has shape {:?}", (m, n), rhs.shape()),
        });
    }
    let q = match spec {
        TypeSpec::Sharp => mu.tr().clone(),
        TypeSpec::Zeros(zs) => {
            let mut q = BoolMat::ones(m, n);
            for (i, j) in zs {
                if i == 0 || j == 0 || i > m || j > n {
                    return Err(RuleError::Shape {
                        id: id.to_string(),
                        msg: format!("zero at ({i}, {j}) outside a {m}x{n} type"),
                    });
                }
                q.set(i - 1, j - 1, false);
            }
            q
        }
        TypeSpec::Explicit(q) => {
            if q.shape() != (m, n) {
                return Err(RuleError::Shape {
                    id: id.to_string(),
                    msg: format!("type is {:?}, lhs is {:?}", q.shape(), (m, n)),
                });
            }
            q
        }
    };
    if !mu.tr().le(&q) {
        return Err(RuleError::TrExceedsType(id.to_string()));
    }
    for c in rhs.classes() {
        if let Some(position) = first_violation(c.tr(), &q) {
            return Err(RuleError::RhsOutsideType {
                id: id.to_string(),
                monomial: c.short_code(),
                position,
            });
        }
    }
    let sharp = q == *mu.tr();
    let mut rhs = rhs.clone();
    if rhs.is_zero() {
        rhs = LinComb::zero(m, n);
    }
    Ok(Rule {
        id: id.to_string(),
        q,
        lhs: mu,
        rhs,
        sharp,
    })
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.sharp {
            " sharp".to_string()
        } else if self.q == BoolMat::ones(self.q.rows(), self.q.cols()) {
            String::new()
        } else {
            format!(" type {}", self.q.to_compact())
        };
        write!(
            f,
            "rule {}{}: {} -> {}",
            self.id,
            kind,
            crate::ainparse::format_term(&LinComb::monomial(self.lhs.clone())),
            crate::ainparse::format_term(&self.rhs)
        )
    }
}
