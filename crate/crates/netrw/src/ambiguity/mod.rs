//! Ambiguities between rule pairs, their resolution, confluence reports,
//! and a small completion loop.
//!
//! Sites are found by gluing the two left hand sides. Every gluing is
//! re-read through the embedding search on the resulting site, and a pair
//! of embeddings is kept when it covers the site, keeps output legs of one
//! side off the input legs of the other, feeds a pattern's own legs back
//! only through the other pattern, and is not a side by side montage.
//!
//! For pairs where some rule is not sharp the leg condition is dropped:
//! such systems can hide obstructions where one redex wraps around the
//! other without sharing anything, and those are reported as
//! [`AmbiguityKind::Wrap`]. Reports for non-sharp systems are advisory.

mod overlap;

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::ainparse::{format_class, format_term};
use crate::core::BoolMat;
use crate::freeprop::{LinComb, NetClass};
use crate::matching::{complement, context_type_ok, find_embeddings, strong_embeddings, StrongEmbedding};
use crate::order::{CompareResult, OrderError, OrderSpec};
use crate::rewrite::{make_rule, Budget, Joinable, Rewriter, Rule, RuleError, TypeSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbiguityKind {
    /// A rule against itself at the same place.
    Trivial,
    /// Terse and not a montage.
    Decisive,
    /// Non-terse but not a montage; only searched for non-sharp pairs.
    Wrap,
}

/// Two reductions acting on one site.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    pub rule1: String,
    pub rule2: String,
    pub site: NetClass,
    pub se1: StrongEmbedding,
    pub se2: StrongEmbedding,
    pub context1: NetClass,
    pub context2: NetClass,
    pub amb_type: BoolMat,
    pub kind: AmbiguityKind,
    /// Both rules sharp.
    pub sharp: bool,
    /// The site after the first and after the second reduction.
    pub reduct1: LinComb,
    pub reduct2: LinComb,
}

impl Ambiguity {
    pub fn is_trivial(&self) -> bool {
        self.kind == AmbiguityKind::Trivial
    }

    fn sort_key(&self) -> (&str, &str, &[u8], &[u8], &[u8]) {
        (
            &self.rule1,
            &self.rule2,
            self.site.code(),
            self.context1.code(),
            self.context2.code(),
        )
    }
}

impl fmt::Display for Ambiguity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            AmbiguityKind::Trivial => "trivial",
            AmbiguityKind::Decisive => "decisive",
            AmbiguityKind::Wrap => "wrap",
        };
        write!(
            f,
            "{kind} ({}, {}) at {} type {}",
            self.rule1,
            self.rule2,
            format_class(&self.site),
            self.amb_type.to_compact()
        )
    }
}

fn reduct(rule: &Rule, k: &NetClass) -> LinComb {
    LinComb::monomial(k.clone())
        .annex(&rule.rhs)
        .expect("context fits the rule")
}

/// All decisive ambiguities of `s1` against `s2`, up to site isomorphism,
/// leg order, and (when the rules coincide) operand swap. The trivial
/// self-ambiguity is included and marked. For non-sharp pairs wrap
/// ambiguities are included too, typed all-ones.
pub fn enumerate_decisive(s1: &Rule, s2: &Rule) -> Vec<Ambiguity> {
    let same = s1.id == s2.id;
    let sharp = s1.sharp && s2.sharp;
    let (h1, h2) = (s1.lhs.rep(), s2.lhs.rep());
    let mut found: BTreeSet<(Vec<u8>, Vec<u8>, Vec<u8>)> = BTreeSet::new();
    let mut out = Vec::new();
    for site in overlap::candidate_sites(h1, h2, !sharp) {
        let g = site.rep();
        let emb1 = find_embeddings(h1, g);
        let emb2 = find_embeddings(h2, g);
        for a in &emb1 {
            for b in &emb2 {
                let ov = overlap::classify(g, h1, a, h2, b);
                if !ov.covering || !ov.no_private_feedback {
                    continue;
                }
                let trivial = same && a == b;
                let kind = if trivial {
                    AmbiguityKind::Trivial
                } else if ov.montage {
                    continue;
                } else if ov.legs_apart {
                    AmbiguityKind::Decisive
                } else if !sharp {
                    AmbiguityKind::Wrap
                } else {
                    continue;
                };
                let amb_type = match kind {
                    AmbiguityKind::Trivial => s1.q.clone(),
                    _ if sharp => g.transference(),
                    _ => BoolMat::ones(g.coarity(), g.arity()),
                };
                for x in strong_embeddings(h1, a, g) {
                    let k1 = complement(g, h1, &x);
                    if !context_type_ok(k1.tr(), &s1.q, &amb_type).unwrap_or(false) {
                        continue;
                    }
                    for y in strong_embeddings(h2, b, g) {
                        let k2 = complement(g, h2, &y);
                        if !context_type_ok(k2.tr(), &s2.q, &amb_type).unwrap_or(false) {
                            continue;
                        }
                        let (mut x, mut y, mut k1, mut k2) = (x.clone(), y, k1.clone(), k2);
                        if same && k2 < k1 {
                            std::mem::swap(&mut x, &mut y);
                            std::mem::swap(&mut k1, &mut k2);
                        }
                        let kind = if same && k1 == k2 { AmbiguityKind::Trivial } else { kind };
                        let key = (site.code().to_vec(), k1.code().to_vec(), k2.code().to_vec());
                        if !found.insert(key) {
                            continue;
                        }
                        out.push(Ambiguity {
                            rule1: s1.id.clone(),
                            rule2: s2.id.clone(),
                            reduct1: reduct(s1, &k1),
                            reduct2: reduct(s2, &k2),
                            site: site.clone(),
                            se1: x,
                            se2: y,
                            context1: k1,
                            context2: k2,
                            amb_type: amb_type.clone(),
                            kind,
                            sharp,
                        });
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Resolved,
    /// Normal forms (or, failing those, the reducts) and their difference.
    Unresolved {
        left: LinComb,
        right: LinComb,
        difference: LinComb,
    },
    Unknown,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Resolved => "resolved",
            Status::Unresolved { .. } => "unresolved",
            Status::Unknown => "unknown",
        }
    }
}

/// Reduces both sides of an ambiguity and checks that they meet.
pub fn resolve(amb: &Ambiguity, rw: &Rewriter, budget: Budget) -> Status {
    if amb.reduct1 == amb.reduct2 {
        return Status::Resolved;
    }
    match rw.joinable(&amb.reduct1, &amb.reduct2, &amb.amb_type, budget) {
        Ok(Joinable::Yes(_)) => Status::Resolved,
        Ok(Joinable::No) => {
            let nf = |x: &LinComb| rw.normalize(x, &amb.amb_type, budget).unwrap_or_else(|_| x.clone());
            let (left, right) = (nf(&amb.reduct1), nf(&amb.reduct2));
            let difference = left.try_sub(&right).expect("same shape");
            Status::Unresolved {
                left,
                right,
                difference,
            }
        }
        Ok(Joinable::Unknown) | Err(_) => Status::Unknown,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Confluent,
    NotConfluent,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub entries: Vec<(Ambiguity, Status)>,
    pub verdict: Verdict,
    /// Some rule is not sharp, so a clean report certifies nothing.
    pub advisory: bool,
    /// Every symbol has one output; only single-output sites were kept.
    pub operadic: bool,
    pub warnings: Vec<String>,
}

impl ConfluenceReport {
    pub fn nontrivial(&self) -> impl Iterator<Item = &(Ambiguity, Status)> {
        self.entries.iter().filter(|(a, _)| !a.is_trivial())
    }

    /// One line such as `1 nontrivial ambiguity, resolved`.
    pub fn summary(&self) -> String {
        let n = self.nontrivial().count();
        let noun = if n == 1 { "ambiguity" } else { "ambiguities" };
        let bad = self
            .nontrivial()
            .filter(|(_, s)| matches!(s, Status::Unresolved { .. }))
            .count();
        let unknown = self.nontrivial().filter(|(_, s)| *s == Status::Unknown).count();
        match (bad, unknown) {
            (0, 0) if n == 1 => format!("1 nontrivial {noun}, resolved"),
            (0, 0) => format!("{n} nontrivial {noun}, all resolved"),
            _ => format!("{n} nontrivial {noun}, {bad} unresolved, {unknown} unknown"),
        }
    }
}

impl fmt::Display for ConfluenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        for (a, s) in self.nontrivial() {
            writeln!(f, "{a}: {}", s.label())?;
            if let Status::Unresolved { left, right, .. } = s {
                writeln!(f, "  left:  {}", format_term(left))?;
                writeln!(f, "  right: {}", format_term(right))?;
            }
        }
        let verdict = match self.verdict {
            Verdict::Confluent => "confluent",
            Verdict::NotConfluent => "not confluent",
            Verdict::Undecided => "undecided",
        };
        let advisory = if self.advisory { " (advisory)" } else { "" };
        write!(f, "{}\nverdict: {verdict}{advisory}", self.summary())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AmbiguityError {
    #[error("rule `{0}` is not compatible with the order")]
    IncompatibleRule(String),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("cannot orient {0}")]
    OrientationFailed(String),
    #[error("completion stopped after {rounds} rounds with {rules} rules")]
    LimitReached { rounds: usize, rules: usize },
    #[error(transparent)]
    Rule(#[from] RuleError),
}

/// Runs `f` on a pool capped by `NETRW_THREADS` when that is set.
pub fn with_thread_cap<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let cap = std::env::var("NETRW_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    match cap.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

fn is_operadic(rules: &[Rule]) -> bool {
    let one_output = |x: &NetClass| x.rep().inner_vertices().all(|v| x.rep().symbol(v).coarity == 1);
    !rules.is_empty()
        && rules
            .iter()
            .all(|r| r.lhs.coarity() == 1 && one_output(&r.lhs) && r.rhs.classes().all(one_output))
}

/// Ambiguities of all rule pairs, in deterministic order.
pub fn all_ambiguities(rules: &[Rule]) -> Vec<Ambiguity> {
    let mut sorted = rules.to_vec();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    let pairs: Vec<(usize, usize)> = (0..sorted.len())
        .flat_map(|i| (i..sorted.len()).map(move |j| (i, j)))
        .collect();
    let mut out: Vec<Ambiguity> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| enumerate_decisive(&sorted[i], &sorted[j]))
        .collect();
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    out
}

/// Resolves every decisive ambiguity of the system. With an order, rules
/// are first checked compatible and normalization runs to completion;
/// otherwise it is capped at `max_steps`.
pub fn confluence_report(
    rules: &[Rule],
    order: Option<&OrderSpec>,
    max_steps: usize,
) -> Result<ConfluenceReport, AmbiguityError> {
    let budget = match order {
        Some(spec) => {
            for r in rules {
                if !spec.rule_compatible(r)?.ok {
                    return Err(AmbiguityError::IncompatibleRule(r.id.clone()));
                }
            }
            Budget::OrderBacked
        }
        None => Budget::MaxSteps(max_steps),
    };
    let advisory = rules.iter().any(|r| !r.sharp);
    let operadic = is_operadic(rules);
    let mut warnings = Vec::new();
    if advisory {
        let ids: Vec<&str> = rules.iter().filter(|r| !r.sharp).map(|r| r.id.as_str()).collect();
        warnings.push(format!(
            "not sharp: {}; ambiguities typed all-ones, report is advisory",
            ids.join(", ")
        ));
    }
    let rw = Rewriter::new(rules);
    let entries = with_thread_cap(|| {
        let mut ambs = all_ambiguities(rules);
        if operadic {
            ambs.retain(|a| a.site.coarity() == 1);
        }
        ambs.into_par_iter()
            .map(|a| {
                let s = if a.is_trivial() {
                    Status::Resolved
                } else {
                    resolve(&a, &rw, budget)
                };
                (a, s)
            })
            .collect::<Vec<_>>()
    });
    let verdict = if entries.iter().all(|(_, s)| *s == Status::Resolved) {
        Verdict::Confluent
    } else if entries.iter().any(|(_, s)| matches!(s, Status::Unresolved { .. })) {
        Verdict::NotConfluent
    } else {
        Verdict::Undecided
    };
    Ok(ConfluenceReport {
        entries,
        verdict,
        advisory,
        operadic,
        warnings,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_rounds: usize,
    pub max_rules: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rounds: 8,
            max_rules: 32,
        }
    }
}

/// Turns a nonzero difference into a rule whose left hand side is the
/// monomial above all others.
fn orient(id: &str, diff: &LinComb, spec: &OrderSpec, amb_type: &BoolMat) -> Result<Rule, AmbiguityError> {
    let fail = || AmbiguityError::OrientationFailed(format_term(diff));
    let mut top = None;
    for (mu, _) in diff.terms() {
        let mut above_all = true;
        for (nu, _) in diff.terms() {
            if nu != mu && spec.compare(mu, nu)? != CompareResult::Greater {
                above_all = false;
                break;
            }
        }
        if above_all {
            top = Some(mu.clone());
            break;
        }
    }
    let mu = top.ok_or_else(fail)?;
    let c = diff.coeff(&mu);
    let lhs = LinComb::monomial(mu.clone());
    let rest = diff.try_sub(&LinComb::term(c.clone(), mu)).expect("same shape");
    let rhs = rest.scale(&(-c.recip()));
    make_rule(id, &lhs, &rhs, TypeSpec::Sharp)
        .or_else(|_| make_rule(id, &lhs, &rhs, TypeSpec::Explicit(amb_type.clone())))
        .map_err(AmbiguityError::from)
}

/// Adds oriented critical pairs until the system is confluent.
pub fn complete(
    rules: &[Rule],
    spec: &OrderSpec,
    limits: Limits,
) -> Result<(Vec<Rule>, ConfluenceReport), AmbiguityError> {
    let mut rules = rules.to_vec();
    let mut fresh = 0;
    for _ in 0..limits.max_rounds {
        let report = confluence_report(&rules, Some(spec), 0)?;
        if report.verdict == Verdict::Confluent {
            return Ok((rules, report));
        }
        let mut added = Vec::new();
        for (a, s) in &report.entries {
            match s {
                Status::Unresolved { difference, .. } if !difference.is_zero() => {
                    let known = added.iter().chain(&rules).any(|r: &Rule| {
                        let lhs = LinComb::monomial(r.lhs.clone());
                        lhs.try_sub(&r.rhs).ok().as_ref() == Some(difference)
                            || r.rhs.try_sub(&lhs).ok().as_ref() == Some(difference)
                    });
                    if known {
                        continue;
                    }
                    fresh += 1;
                    added.push(orient(&format!("c{fresh}"), difference, spec, &a.amb_type)?);
                }
                Status::Unknown => {
                    return Err(AmbiguityError::LimitReached {
                        rounds: limits.max_rounds,
                        rules: rules.len(),
                    })
                }
                _ => {}
            }
        }
        if added.is_empty() {
            break;
        }
        rules.extend(added);
        if rules.len() > limits.max_rules {
            break;
        }
    }
    Err(AmbiguityError::LimitReached {
        rounds: limits.max_rounds,
        rules: rules.len(),
    })
}
