//! Abstract index notation: terms such as `[a| m^a_{bc} eta^b |c]` and
//! rule files built from them.
//!
//! A label names one edge. It is produced by exactly one superscript or
//! input-list entry, and consumed by exactly one subscript or
//! output-list entry. Without the brackets a term is *naked*: its outputs
//! are the unmatched superscripts and its inputs the unmatched subscripts,
//! each in order of first appearance. `delta` (or `d` when the signature
//! has no `d`) is the Kronecker delta.

mod format;
mod lexer;
mod rules;
mod term;

use std::fmt;

pub use format::{format_class, format_term};
pub use rules::{parse_rules, RuleFile};

use crate::core::{CoreError, Signature};
use crate::freeprop::LinComb;
use crate::rewrite::RuleError;

/// Output and input label lists of a term.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Legs {
    pub outputs: Vec<String>,
    pub inputs: Vec<String>,
}

impl fmt::Display for Legs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}|..|{}]", self.outputs.join(" "), self.inputs.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AinError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("factor `{factor}` needs {} superscripts and {} subscripts, has {} and {}", .expected.0, .expected.1, .found.0, .found.1)]
    ArityMismatch {
        factor: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("label `{0}` is used twice on the same side")]
    RepeatedLabel(String),
    #[error("label `{0}` has no partner")]
    UnmatchedLabel(String),
    #[error("labels form a cycle: {}", .0.join(" "))]
    CycleInTerm(Vec<String>),
    #[error("terms disagree on their legs: expected {expected}, found {found}")]
    LegOrderMismatchAcrossTerms { expected: String, found: String },
    #[error("duplicate rule id `{0}`")]
    DuplicateRule(String),
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error(transparent)]
    Signature(#[from] CoreError),
    #[error("line {line}: {err}")]
    AtLine { line: usize, err: Box<AinError> },
}

fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Parses a term; `#` starts a comment.
pub fn parse_term(text: &str, sig: &Signature) -> Result<LinComb, AinError> {
    Ok(parse_term_with_legs(text, sig, None)?.0)
}

/// Parses a term, reading naked summands against `legs` when given, and
/// returns the leg lists actually used.
pub fn parse_term_with_legs(
    text: &str,
    sig: &Signature,
    legs: Option<&Legs>,
) -> Result<(LinComb, Legs), AinError> {
    let summands = term::parse_summands(&strip_comments(text))?;
    term::to_lincomb(&summands, sig, legs)
}
