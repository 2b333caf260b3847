use std::collections::BTreeSet;

use super::term::{parse_summands, to_lincomb};
use super::{AinError, Legs};
use crate::core::{BoolMat, Signature};
use crate::rewrite::{make_rule, Rule, TypeSpec};

/// The contents of a `.rules` file.
#[derive(Clone, Debug)]
pub struct RuleFile {
    /// The given signature extended by the file's `gen` lines.
    pub signature: Signature,
    pub rules: Vec<Rule>,
}

fn at_line(line: usize) -> impl Fn(AinError) -> AinError {
    move |e| AinError::AtLine {
        line,
        err: Box::new(e),
    }
}

fn syntax(msg: impl Into<String>) -> AinError {
    AinError::Syntax {
        pos: 0,
        msg: msg.into(),
    }
}

/// Splits off a trailing `where` clause, if any.
fn split_where(text: &str) -> (&str, Option<&str>) {
    let bytes = text.as_bytes();
    let mut from = 0;
    while let Some(off) = text[from..].find("where") {
        let at = from + off;
        let before = at == 0 || bytes[at - 1].is_ascii_whitespace();
        let after = bytes.get(at + 5).is_none_or(|b| b.is_ascii_whitespace());
        if before && after {
            return (&text[..at], Some(&text[at + 5..]));
        }
        from = at + 5;
    }
    (text, None)
}

fn parse_zeros(clause: &str, legs: &Legs) -> Result<Vec<(usize, usize)>, AinError> {
    let mut out = Vec::new();
    for part in clause.split(',') {
        let (a, e) = part
            .split_once("~>")
            .ok_or_else(|| syntax(format!("expected `<output> ~> <input>`, got `{}`", part.trim())))?;
        let (a, e) = (a.trim(), e.trim());
        let i = legs
            .outputs
            .iter()
            .position(|l| l == a)
            .ok_or_else(|| syntax(format!("`{a}` is not an output label of the left hand side")))?;
        let j = legs
            .inputs
            .iter()
            .position(|l| l == e)
            .ok_or_else(|| syntax(format!("`{e}` is not an input label of the left hand side")))?;
        out.push((i + 1, j + 1));
    }
    Ok(out)
}

enum Kind {
    Plain,
    Sharp,
    Explicit(BoolMat),
}

fn parse_rule(line: &str, sig: &Signature) -> Result<Rule, AinError> {
    let rest = line.strip_prefix("rule").expect("caller checked").trim_start();
    let (header, body) = rest
        .split_once(':')
        .ok_or_else(|| syntax("expected `:` after the rule header"))?;
    let mut words = header.split_whitespace();
    let id = words.next().ok_or_else(|| syntax("missing rule id"))?.to_string();
    if !id
        .chars()
        .all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '\'' | '.'))
    {
        return Err(syntax(format!("bad rule id `{id}`")));
    }
    let kind = match (words.next(), words.next(), words.next()) {
        (None, _, _) => Kind::Plain,
        (Some("sharp"), None, _) => Kind::Sharp,
        (Some("type"), Some(m), None) => {
            Kind::Explicit(BoolMat::parse_rows(m).map_err(|e| syntax(e.to_string()))?)
        }
        _ => return Err(syntax(format!("bad rule header `{}`", header.trim()))),
    };
    let (lhs_text, rhs_text) = body
        .split_once("->")
        .ok_or_else(|| syntax("expected `->`"))?;
    let (rhs_text, clause) = split_where(rhs_text);
    let (lhs, legs) = to_lincomb(&parse_summands(lhs_text)?, sig, None)?;
    let (rhs, _) = to_lincomb(&parse_summands(rhs_text)?, sig, Some(&legs))?;
    let zeros = clause.map(|c| parse_zeros(c, &legs)).transpose()?;
    let spec = match (kind, zeros) {
        (Kind::Sharp, Some(_)) => return Err(syntax("`sharp` and `where` cannot be combined")),
        (Kind::Sharp, None) => TypeSpec::Sharp,
        (Kind::Plain, z) => TypeSpec::Zeros(z.unwrap_or_default()),
        (Kind::Explicit(mut q), z) => {
            for (i, j) in z.unwrap_or_default() {
                if i <= q.rows() && j <= q.cols() {
                    q.set(i - 1, j - 1, false);
                }
            }
            TypeSpec::Explicit(q)
        }
    };
    Ok(make_rule(&id, &lhs, &rhs, spec)?)
}

/// Parses a `.rules` file. Lines are `gen <name> <coarity> <arity>` or
/// `rule <id> [sharp | type <rows>]: <lhs> -> <rhs> [where <out> ~> <in>, ...]`;
/// `#` starts a comment.
pub fn parse_rules(text: &str, sig: &Signature) -> Result<RuleFile, AinError> {
    let mut sig = sig.clone();
    let mut rules = Vec::new();
    let mut ids = BTreeSet::new();
    for (no, raw) in text.lines().enumerate() {
        let wrap = at_line(no + 1);
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let first = line.split_whitespace().next().unwrap_or("");
        match first {
            "gen" => {
                let one = Signature::parse(line).map_err(|e| wrap(AinError::Signature(e)))?;
                for s in one.symbols() {
                    sig.declare(&s.name, s.coarity, s.arity)
                        .map_err(|e| wrap(AinError::Signature(e)))?;
                }
            }
            "rule" => {
                let rule = parse_rule(line, &sig).map_err(&wrap)?;
                if !ids.insert(rule.id.clone()) {
                    return Err(wrap(AinError::DuplicateRule(rule.id)));
                }
                rules.push(rule);
            }
            _ => return Err(wrap(syntax(format!("expected `gen` or `rule`, got `{first}`")))),
        }
    }
    Ok(RuleFile { signature: sig, rules })
}
