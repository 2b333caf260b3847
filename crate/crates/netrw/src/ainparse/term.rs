use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::lexer::{lex, split_labels, Tok, Token};
use super::{AinError, Legs};
use crate::core::{Signature, Symbol, DELTA};
use crate::freeprop::{LinComb, NetClass};
use crate::network::{Edge, Network, IN, OUT};

/// One factor `name^{sup}_{sub}`.
#[derive(Clone, Debug)]
pub(crate) struct Factor {
    pub name: String,
    pub sup: Vec<String>,
    pub sub: Vec<String>,
}

/// `coeff · ∏ factors`, optionally with explicit leg lists.
#[derive(Clone, Debug)]
pub(crate) struct Summand {
    pub coeff: BigRational,
    pub factors: Vec<Factor>,
    pub closed: Option<Legs>,
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.pos)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, AinError> {
        Err(AinError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn punct(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Punct(c))
    }

    fn expect(&mut self, c: char) -> Result<(), AinError> {
        if self.punct(c) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn sum(&mut self) -> Result<Vec<Summand>, AinError> {
        let mut out = Vec::new();
        let mut negate = false;
        if self.punct('-') || self.punct('+') {
            negate = self.punct('-');
            self.at += 1;
        }
        loop {
            let mut s = self.summand()?;
            if negate {
                s.coeff = -s.coeff;
            }
            out.push(s);
            if self.punct('+') || self.punct('-') {
                negate = self.punct('-');
                self.at += 1;
            } else {
                break;
            }
        }
        if self.at < self.toks.len() {
            return self.err("unexpected token");
        }
        Ok(out)
    }

    fn number(&mut self) -> Result<Option<BigRational>, AinError> {
        let Some(Tok::Num(n)) = self.peek() else {
            return Ok(None);
        };
        let num: BigInt = n.parse().expect("lexer yields digits");
        self.at += 1;
        let mut den = BigInt::one();
        if self.punct('/') {
            self.at += 1;
            match self.peek() {
                Some(Tok::Num(d)) => {
                    den = d.parse().expect("lexer yields digits");
                    self.at += 1;
                }
                _ => return self.err("expected denominator"),
            }
            if den.is_zero() {
                return self.err("zero denominator");
            }
        }
        if self.punct('*') {
            self.at += 1;
        }
        Ok(Some(BigRational::new(num, den)))
    }

    fn summand(&mut self) -> Result<Summand, AinError> {
        let coeff = self.number()?.unwrap_or_else(BigRational::one);
        if self.punct('[') {
            self.at += 1;
            let outputs = self.label_list()?;
            self.expect('|')?;
            let inner = self.number()?.unwrap_or_else(BigRational::one);
            let factors = self.factors()?;
            self.expect('|')?;
            let inputs = self.label_list()?;
            self.expect(']')?;
            return Ok(Summand {
                coeff: coeff * inner,
                factors,
                closed: Some(Legs { outputs, inputs }),
            });
        }
        Ok(Summand {
            coeff,
            factors: self.factors()?,
            closed: None,
        })
    }

    fn label_list(&mut self) -> Result<Vec<String>, AinError> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Ident(s)) => {
                    let pos = self.pos();
                    out.extend(split_labels(s, pos)?);
                    self.at += 1;
                }
                Some(Tok::Punct(',')) => self.at += 1,
                _ => return Ok(out),
            }
        }
    }

    fn factors(&mut self) -> Result<Vec<Factor>, AinError> {
        let mut out = Vec::new();
        while let Some(Tok::Ident(name)) = self.peek() {
            let name = name.clone();
            self.at += 1;
            let mut sup = None;
            let mut sub = None;
            loop {
                let slot = if self.punct('^') {
                    &mut sup
                } else if self.punct('_') {
                    &mut sub
                } else {
                    break;
                };
                if slot.is_some() {
                    return self.err("script given twice");
                }
                self.at += 1;
                *slot = Some(self.script()?);
            }
            out.push(Factor {
                name,
                sup: sup.unwrap_or_default(),
                sub: sub.unwrap_or_default(),
            });
        }
        Ok(out)
    }

    fn script(&mut self) -> Result<Vec<String>, AinError> {
        if self.punct('{') {
            self.at += 1;
            let labels = self.label_list()?;
            self.expect('}')?;
            return Ok(labels);
        }
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let labels = split_labels(s, self.pos())?;
                self.at += 1;
                Ok(labels)
            }
            _ => self.err("expected a label or `{`"),
        }
    }
}

pub(crate) fn parse_summands(text: &str) -> Result<Vec<Summand>, AinError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(AinError::Syntax {
            pos: 0,
            msg: "empty term".into(),
        });
    }
    Parser {
        toks,
        at: 0,
        end: text.len(),
    }
    .sum()
}

/// Unmatched superscripts and subscripts in order of first appearance.
pub(crate) fn naked_legs(factors: &[Factor]) -> Legs {
    let mut as_sup: BTreeMap<&str, usize> = BTreeMap::new();
    let mut as_sub: BTreeMap<&str, usize> = BTreeMap::new();
    for f in factors {
        for l in &f.sup {
            *as_sup.entry(l).or_default() += 1;
        }
        for l in &f.sub {
            *as_sub.entry(l).or_default() += 1;
        }
    }
    let mut legs = Legs::default();
    let mut seen = std::collections::BTreeSet::new();
    for f in factors {
        for l in &f.sup {
            if !as_sub.contains_key(l.as_str()) && seen.insert(l.clone()) {
                legs.outputs.push(l.clone());
            }
        }
        for l in &f.sub {
            if !as_sup.contains_key(l.as_str()) && seen.insert(l.clone()) {
                legs.inputs.push(l.clone());
            }
        }
    }
    legs
}

fn is_delta(name: &str, sig: &Signature) -> bool {
    name == DELTA || (name == "d" && !sig.contains("d"))
}

/// Builds the network of `∏ factors` read against explicit leg lists.
pub(crate) fn build_network(factors: &[Factor], legs: &Legs, sig: &Signature) -> Result<Network, AinError> {
    type Port = (usize, usize);
    let mut deco = BTreeMap::new();
    let mut producer: BTreeMap<&str, Port> = BTreeMap::new();
    let mut consumer: BTreeMap<&str, Port> = BTreeMap::new();
    // labels by first appearance, so edge ids are reproducible
    let mut order: Vec<&str> = Vec::new();
    fn put<'a>(
        map: &mut BTreeMap<&'a str, (usize, usize)>,
        order: &mut Vec<&'a str>,
        label: &'a str,
        port: (usize, usize),
    ) -> Result<(), AinError> {
        if map.insert(label, port).is_some() {
            return Err(AinError::RepeatedLabel(label.to_string()));
        }
        if !order.contains(&label) {
            order.push(label);
        }
        Ok(())
    }
    for (i, l) in legs.outputs.iter().enumerate() {
        put(&mut consumer, &mut order, l, (OUT, i + 1))?;
    }
    for (j, l) in legs.inputs.iter().enumerate() {
        put(&mut producer, &mut order, l, (IN, j + 1))?;
    }
    for (n, f) in factors.iter().enumerate() {
        let v = n + 2;
        let sym = if is_delta(&f.name, sig) {
            Symbol::neutral()
        } else {
            sig.get(&f.name)
                .map_err(|_| AinError::UnknownSymbol(f.name.clone()))?
                .clone()
        };
        if f.sup.len() != sym.coarity || f.sub.len() != sym.arity {
            return Err(AinError::ArityMismatch {
                factor: f.name.clone(),
                expected: (sym.coarity, sym.arity),
                found: (f.sup.len(), f.sub.len()),
            });
        }
        deco.insert(v, sym);
        for (k, l) in f.sup.iter().enumerate() {
            put(&mut producer, &mut order, l, (v, k + 1))?;
        }
        for (k, l) in f.sub.iter().enumerate() {
            put(&mut consumer, &mut order, l, (v, k + 1))?;
        }
    }
    let mut edges = BTreeMap::new();
    for (id, &l) in order.iter().enumerate() {
        match (producer.get(l), consumer.get(l)) {
            (Some(&(t, ti)), Some(&(h, hi))) => {
                edges.insert(id, Edge::new(t, ti, h, hi));
            }
            _ => return Err(AinError::UnmatchedLabel(l.to_string())),
        }
    }
    let raw = Network::unchecked(deco.clone(), edges.clone());
    if let Some(cycle) = raw.find_cycle() {
        return Err(AinError::CycleInTerm(
            cycle.iter().map(|&e| order[e].to_string()).collect(),
        ));
    }
    let net = Network::validate(deco, edges).map_err(|v| AinError::Syntax {
        pos: 0,
        msg: format!("not a network: {v:?}"),
    })?;
    Ok(net.smoothen(&[]).expect("deltas are one-in one-out").0)
}

fn same_set(a: &[String], b: &[String]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort();
    b.sort();
    a == b
}

/// Converts parsed summands, taking the leg order from `given` when present
/// and otherwise from the first summand that carries any structure.
pub(crate) fn to_lincomb(
    summands: &[Summand],
    sig: &Signature,
    given: Option<&Legs>,
) -> Result<(LinComb, Legs), AinError> {
    // a bare `0` carries no legs and is skipped when fixing the order
    let trivial = |s: &Summand| s.coeff.is_zero() && s.factors.is_empty() && s.closed.is_none();
    let legs = match given {
        Some(l) => l.clone(),
        None => match summands.iter().find(|s| !trivial(s)) {
            Some(s) => s.closed.clone().unwrap_or_else(|| naked_legs(&s.factors)),
            None => Legs::default(),
        },
    };
    let shape = (legs.outputs.len(), legs.inputs.len());
    let mut out = LinComb::zero(shape.0, shape.1);
    for s in summands.iter().filter(|s| !trivial(s)) {
        let own = match &s.closed {
            Some(l) => l.clone(),
            None => {
                let naked = naked_legs(&s.factors);
                if !same_set(&naked.outputs, &legs.outputs) || !same_set(&naked.inputs, &legs.inputs) {
                    return Err(AinError::LegOrderMismatchAcrossTerms {
                        expected: legs.to_string(),
                        found: naked.to_string(),
                    });
                }
                legs.clone()
            }
        };
        if (own.outputs.len(), own.inputs.len()) != shape {
            return Err(AinError::LegOrderMismatchAcrossTerms {
                expected: legs.to_string(),
                found: own.to_string(),
            });
        }
        if s.coeff.is_zero() && s.factors.is_empty() {
            continue;
        }
        let net = build_network(&s.factors, &own, sig)?;
        out.add_term(s.coeff.clone(), NetClass::of(&net))
            .expect("shape checked");
    }
    Ok((out, legs))
}
