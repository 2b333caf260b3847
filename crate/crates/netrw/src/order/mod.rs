//! Termination orders on networks, obtained by evaluating into ordered
//! targets and comparing the values.

use std::fmt;
use std::path::Path;

use num_traits::Zero;

use crate::core::Signature;
use crate::freeprop::NetClass;
use crate::props::{baff_value, evaluate, Assignment, PropsError, TargetKind, Value};
use crate::rewrite::Rule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum CompareResult {
    #[serde(rename = "LT")]
    Less,
    #[serde(rename = "GT")]
    Greater,
    #[serde(rename = "EQUIV")]
    Equivalent,
    #[serde(rename = "INCOMPARABLE")]
    Incomparable,
}

impl CompareResult {
    pub fn reverse(self) -> CompareResult {
        match self {
            CompareResult::Less => CompareResult::Greater,
            CompareResult::Greater => CompareResult::Less,
            x => x,
        }
    }
}

impl fmt::Display for CompareResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompareResult::Less => "LT",
            CompareResult::Greater => "GT",
            CompareResult::Equivalent => "EQUIV",
            CompareResult::Incomparable => "INCOMPARABLE",
        })
    }
}

/// One comparator of a lexicographic chain.
#[derive(Clone, Debug, PartialEq)]
pub enum Stage {
    /// Entrywise order on biaffine natural matrices, pulled back along
    /// evaluation under the assignment.
    PullbackBaff(Assignment),
    /// Partition refinement plus cycle count.
    Connectivity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderSpec {
    pub stages: Vec<Stage>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("order file: {0}")]
    Parse(String),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error(transparent)]
    Props(#[from] PropsError),
    #[error("cannot compare shapes {0:?} and {1:?}")]
    Shape((usize, usize), (usize, usize)),
    #[error("an order needs at least one stage")]
    Empty,
}

/// Entrywise comparison of equally long sequences of naturals.
fn entrywise<'a, T: Ord + 'a>(a: impl Iterator<Item = &'a T>, b: impl Iterator<Item = &'a T>) -> CompareResult {
    let (mut le, mut ge) = (true, true);
    for (x, y) in a.zip(b) {
        le &= x <= y;
        ge &= x >= y;
    }
    match (le, ge) {
        (true, true) => CompareResult::Equivalent,
        (true, false) => CompareResult::Less,
        (false, true) => CompareResult::Greater,
        (false, false) => CompareResult::Incomparable,
    }
}

impl Stage {
    pub fn compare(&self, a: &NetClass, b: &NetClass) -> Result<CompareResult, OrderError> {
        match self {
            Stage::PullbackBaff(assign) => {
                let va = evaluate(TargetKind::BaffNat, a.rep(), Some(assign))?;
                let vb = evaluate(TargetKind::BaffNat, b.rep(), Some(assign))?;
                let (Value::Baff(x), Value::Baff(y)) = (va, vb) else {
                    unreachable!("biaffine target yields biaffine values")
                };
                Ok(entrywise(x.entries(), y.entries()))
            }
            Stage::Connectivity => {
                let (Value::Conn(x), Value::Conn(y)) = (
                    evaluate(TargetKind::Connectivity, a.rep(), None)?,
                    evaluate(TargetKind::Connectivity, b.rep(), None)?,
                ) else {
                    unreachable!("connectivity target yields connectivity values")
                };
                Ok(match (x.le(&y), y.le(&x)) {
                    (true, true) => CompareResult::Equivalent,
                    (true, false) => CompareResult::Less,
                    (false, true) => CompareResult::Greater,
                    (false, false) => CompareResult::Incomparable,
                })
            }
        }
    }
}

/// Lexicographic composition: later stages break ties of earlier ones.
pub fn lex_compose(specs: &[OrderSpec]) -> Result<OrderSpec, OrderError> {
    let stages: Vec<Stage> = specs.iter().flat_map(|s| s.stages.iter().cloned()).collect();
    if stages.is_empty() {
        return Err(OrderError::Empty);
    }
    Ok(OrderSpec { stages })
}

/// A generator failing the positivity condition.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Offense {
    pub stage: usize,
    pub symbol: String,
    /// Zero-based row or column of the full biaffine matrix, or the reason.
    pub problem: String,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct StrictnessReport {
    pub ok: bool,
    pub offenses: Vec<Offense>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compatibility {
    pub ok: bool,
    /// Right hand side monomials not strictly below the left hand side.
    pub witnesses: Vec<(NetClass, CompareResult)>,
}

impl OrderSpec {
    pub fn new(stages: Vec<Stage>) -> Result<OrderSpec, OrderError> {
        if stages.is_empty() {
            return Err(OrderError::Empty);
        }
        Ok(OrderSpec { stages })
    }

    /// First non-equivalent stage decides.
    pub fn compare(&self, a: &NetClass, b: &NetClass) -> Result<CompareResult, OrderError> {
        if a.shape() != b.shape() {
            return Err(OrderError::Shape(a.shape(), b.shape()));
        }
        for st in &self.stages {
            match st.compare(a, b)? {
                CompareResult::Equivalent => continue,
                r => return Ok(r),
            }
        }
        Ok(CompareResult::Equivalent)
    }

    /// Checks that every generator maps into the strict part: each row and
    /// column of its full biaffine matrix has a positive entry.
    pub fn check_strictness(&self, sig: &Signature) -> StrictnessReport {
        let mut offenses = Vec::new();
        let mut notes = Vec::new();
        for (i, st) in self.stages.iter().enumerate() {
            match st {
                Stage::Connectivity => notes.push(format!(
                    "stage {}: connectivity is not strict on its own and needs a later tie breaker",
                    i + 1
                )),
                Stage::PullbackBaff(assign) => {
                    for sym in sig.symbols() {
                        let off = |problem: String| Offense {
                            stage: i + 1,
                            symbol: sym.name.to_string(),
                            problem,
                        };
                        let elem = match baff_value(assign, sym) {
                            Ok(Some(e)) => e,
                            Ok(None) => {
                                offenses.push(off("unmapped".into()));
                                continue;
                            }
                            Err(e) => {
                                offenses.push(off(e.to_string()));
                                continue;
                            }
                        };
                        let full = elem.full();
                        for r in 0..full.rows() {
                            if (0..full.cols()).all(|c| full.get(r, c).is_zero()) {
                                offenses.push(off(format!("row {r} has no positive entry")));
                            }
                        }
                        for c in 0..full.cols() {
                            if (0..full.rows()).all(|r| full.get(r, c).is_zero()) {
                                offenses.push(off(format!("column {c} has no positive entry")));
                            }
                        }
                    }
                }
            }
        }
        StrictnessReport {
            ok: offenses.is_empty(),
            offenses,
            notes,
        }
    }

    /// Every right hand side monomial must lie strictly below the left hand side.
    pub fn rule_compatible(&self, rule: &Rule) -> Result<Compatibility, OrderError> {
        let mut witnesses = Vec::new();
        for c in rule.rhs.classes() {
            let r = self.compare(&rule.lhs, c)?;
            if r != CompareResult::Greater {
                witnesses.push((c.clone(), r));
            }
        }
        Ok(Compatibility {
            ok: witnesses.is_empty(),
            witnesses,
        })
    }

    /// Parses `order { stage baff <file> ; stage connectivity }`; assignment
    /// paths are relative to `base`. `#` starts a comment.
    pub fn parse(text: &str, base: &Path) -> Result<OrderSpec, OrderError> {
        let body: String = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .collect::<Vec<_>>()
            .join(" ");
        let body = body.trim();
        let inner = body
            .strip_prefix("order")
            .map(str::trim_start)
            .and_then(|s| s.strip_prefix('{'))
            .and_then(|s| s.trim_end().strip_suffix('}'))
            .ok_or_else(|| OrderError::Parse("expected `order { ... }`".into()))?;
        let mut stages = Vec::new();
        for part in inner.split(';') {
            let words: Vec<&str> = part.split_whitespace().collect();
            match words.as_slice() {
                [] => continue,
                ["stage", "connectivity"] => stages.push(Stage::Connectivity),
                ["stage", "baff", file] => {
                    let path = base.join(file);
                    let text = std::fs::read_to_string(&path).map_err(|e| OrderError::Io {
                        path: path.display().to_string(),
                        msg: e.to_string(),
                    })?;
                    stages.push(Stage::PullbackBaff(Assignment::parse(&text)?));
                }
                _ => return Err(OrderError::Parse(format!("bad stage `{}`", part.trim()))),
            }
        }
        OrderSpec::new(stages)
    }
}
