use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_rational::BigRational;

use super::Rule;
use crate::ainparse::{format_class, format_term};
use crate::core::BoolMat;
use crate::freeprop::{LinComb, NetClass};
use crate::matching::{contexts, context_type_ok};

/// One simple reduction: `coeff · monomial` replaced by `coeff · (context ⋊ rhs)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: String,
    pub context: NetClass,
    pub monomial: NetClass,
    pub coeff: BigRational,
    /// `context ⋊ rhs`.
    pub result: LinComb,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "apply {} at {} : {} -> {}",
            self.rule,
            self.context.short_code(),
            format_class(&self.monomial),
            format_term(&self.result)
        )
    }
}

/// How long normalization may run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Budget {
    /// The rules are known compatible with a well-founded order.
    OrderBacked,
    MaxSteps(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error("step budget of {steps} exhausted")]
    BudgetExceeded { steps: usize, partial: LinComb },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Joinable {
    Yes(LinComb),
    No,
    Unknown,
}

/// Rules sorted by id, with memoized redex search.
pub struct Rewriter {
    rules: Vec<Rule>,
    first: Mutex<HashMap<(NetClass, BoolMat), Option<Step>>>,
}

/// Safety net for order-backed runs, far beyond anything a compatible
/// system needs on desk-sized inputs.
const ORDER_BACKED_CAP: usize = 1_000_000;

/// Frontier size above which a budgeted join search gives up.
const SEARCH_CAP: usize = 4096;

/// The ambient type of plain rewriting: all ones.
pub fn ambient(x: &LinComb) -> BoolMat {
    let (m, n) = x.shape();
    BoolMat::ones(m, n)
}

impl Rewriter {
    pub fn new(rules: &[Rule]) -> Rewriter {
        let mut rules = rules.to_vec();
        rules.sort_by(|a, b| a.id.cmp(&b.id));
        Rewriter {
            rules,
            first: Mutex::new(HashMap::new()),
        }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    fn step(rule: &Rule, k: &NetClass, nu: &NetClass, coeff: BigRational) -> Step {
        let result = LinComb::monomial(k.clone())
            .annex(&rule.rhs)
            .expect("admissible context joins with the rule type");
        Step {
            rule: rule.id.clone(),
            context: k.clone(),
            monomial: nu.clone(),
            coeff,
            result,
        }
    }

    fn admissible(rule: &Rule, k: &NetClass, q: &BoolMat) -> bool {
        context_type_ok(k.tr(), &rule.q, q).unwrap_or(false)
    }

    /// All simple reductions acting on `nu` at ambient type `q`, in
    /// rule-id then context order.
    pub fn reductions(&self, nu: &NetClass, q: &BoolMat) -> Vec<Step> {
        let mut out = Vec::new();
        for rule in &self.rules {
            for k in contexts(rule.lhs.rep(), nu.rep()) {
                if Self::admissible(rule, &k, q) {
                    out.push(Self::step(rule, &k, nu, BigRational::from_integer(1.into())));
                }
            }
        }
        out
    }

    /// The first reduction acting on `nu`, if any.
    pub fn first_reduction(&self, nu: &NetClass, q: &BoolMat) -> Option<Step> {
        let key = (nu.clone(), q.clone());
        if let Some(hit) = self.first.lock().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let mut found = None;
        'rules: for rule in &self.rules {
            if rule.lhs.inner_count() > nu.inner_count() {
                continue;
            }
            for k in contexts(rule.lhs.rep(), nu.rep()) {
                if Self::admissible(rule, &k, q) {
                    found = Some(Self::step(rule, &k, nu, BigRational::from_integer(1.into())));
                    break 'rules;
                }
            }
        }
        self.first.lock().expect("cache lock").insert(key, found.clone());
        found
    }

    /// Applies the first reduction to the first reducible monomial.
    pub fn reduce_once(&self, x: &LinComb, q: &BoolMat) -> Option<(LinComb, Step)> {
        for (nu, c) in x.terms() {
            if let Some(mut step) = self.first_reduction(nu, q) {
                step.coeff = c.clone();
                let mut y = x.clone();
                y.add_term(-c.clone(), nu.clone()).expect("same shape");
                let y = y.try_add(&step.result.scale(c)).expect("same shape");
                return Some((y, step));
            }
        }
        None
    }

    pub fn is_irreducible(&self, x: &LinComb, q: &BoolMat) -> bool {
        x.classes().all(|nu| self.first_reduction(nu, q).is_none())
    }

    /// Reduces until irreducible, recording each step.
    pub fn normalize_traced(
        &self,
        x: &LinComb,
        q: &BoolMat,
        budget: Budget,
    ) -> Result<(LinComb, Vec<Step>), RewriteError> {
        let cap = match budget {
            Budget::OrderBacked => ORDER_BACKED_CAP,
            Budget::MaxSteps(n) => n,
        };
        let mut cur = x.clone();
        let mut trace = Vec::new();
        loop {
            match self.reduce_once(&cur, q) {
                None => return Ok((cur, trace)),
                Some(_) if trace.len() >= cap => {
                    return Err(RewriteError::BudgetExceeded {
                        steps: trace.len(),
                        partial: cur,
                    })
                }
                Some((next, step)) => {
                    cur = next;
                    trace.push(step);
                }
            }
        }
    }

    pub fn normalize(&self, x: &LinComb, q: &BoolMat, budget: Budget) -> Result<LinComb, RewriteError> {
        Ok(self.normalize_traced(x, q, budget)?.0)
    }

    /// All results of one simple reduction applied to `x`.
    fn successors(&self, x: &LinComb, q: &BoolMat) -> Vec<LinComb> {
        let mut out = Vec::new();
        for (nu, c) in x.terms() {
            for step in self.reductions(nu, q) {
                let mut y = x.clone();
                y.add_term(-c.clone(), nu.clone()).expect("same shape");
                out.push(y.try_add(&step.result.scale(c)).expect("same shape"));
            }
        }
        out
    }

    /// Whether some reductions take `x` and `y` to a common element.
    ///
    /// Normal forms are compared first. With an order-backed budget that
    /// is decisive for confluent systems; otherwise a breadth first search
    /// from both ends runs to the given depth.
    pub fn joinable(&self, x: &LinComb, y: &LinComb, q: &BoolMat, budget: Budget) -> Result<Joinable, RewriteError> {
        if x.shape() != y.shape() {
            return Err(RewriteError::Shape(format!("{:?} vs {:?}", x.shape(), y.shape())));
        }
        if x == y {
            return Ok(Joinable::Yes(x.clone()));
        }
        let nx = self.normalize(x, q, budget);
        let ny = self.normalize(y, q, budget);
        if let (Ok(a), Ok(b)) = (&nx, &ny) {
            if a == b {
                return Ok(Joinable::Yes(a.clone()));
            }
        }
        let depth = match budget {
            Budget::OrderBacked => {
                if nx.is_ok() && ny.is_ok() {
                    return self.search(x, y, q, usize::MAX);
                }
                return Ok(Joinable::Unknown);
            }
            Budget::MaxSteps(n) => n,
        };
        self.search(x, y, q, depth)
    }

    fn search(&self, x: &LinComb, y: &LinComb, q: &BoolMat, depth: usize) -> Result<Joinable, RewriteError> {
        let mut seen = [BTreeSet::from([key(x)]), BTreeSet::from([key(y)])];
        let mut frontier = [vec![x.clone()], vec![y.clone()]];
        let mut level = 0;
        while level < depth {
            if frontier[0].is_empty() && frontier[1].is_empty() {
                return Ok(Joinable::No);
            }
            for side in 0..2 {
                let mut next = Vec::new();
                for z in &frontier[side] {
                    for w in self.successors(z, q) {
                        let kw = key(&w);
                        if seen[1 - side].contains(&kw) {
                            return Ok(Joinable::Yes(w));
                        }
                        if seen[side].insert(kw) {
                            next.push(w);
                        }
                    }
                }
                if next.len() > SEARCH_CAP {
                    return Ok(Joinable::Unknown);
                }
                frontier[side] = next;
            }
            level += 1;
        }
        if frontier[0].is_empty() && frontier[1].is_empty() {
            Ok(Joinable::No)
        } else {
            Ok(Joinable::Unknown)
        }
    }
}

fn key(x: &LinComb) -> Vec<(Vec<u8>, String)> {
    x.terms().map(|(c, k)| (c.code().to_vec(), k.to_string())).collect()
}

pub fn reduce_once(x: &LinComb, q: &BoolMat, rules: &[Rule]) -> Option<(LinComb, Step)> {
    Rewriter::new(rules).reduce_once(x, q)
}

pub fn normalize(x: &LinComb, q: &BoolMat, rules: &[Rule], budget: Budget) -> Result<LinComb, RewriteError> {
    Rewriter::new(rules).normalize(x, q, budget)
}

pub fn is_irreducible(x: &LinComb, q: &BoolMat, rules: &[Rule]) -> bool {
    Rewriter::new(rules).is_irreducible(x, q)
}

pub fn joinable(x: &LinComb, y: &LinComb, q: &BoolMat, rules: &[Rule], budget: Budget) -> Result<Joinable, RewriteError> {
    Rewriter::new(rules).joinable(x, y, q, budget)
}
