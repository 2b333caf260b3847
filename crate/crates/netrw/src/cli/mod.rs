//! The `netrw` command line: subcommands over the text formats.
//!
//! Term arguments name a `.term` file when such a file exists and are read
//! as literal terms otherwise. Exit status is 0 on success or a positive
//! verdict, 1 on a negative verdict, and 2 on bad input.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

use crate::ainparse::{format_class, format_term, parse_rules, parse_term, AinError};
use crate::ambiguity::{self, AmbiguityError, ConfluenceReport, Limits, Status, Verdict};
use crate::core::{BoolMat, Signature};
use crate::freeprop::LinComb;
use crate::order::OrderSpec;
use crate::props::{evaluate, Assignment, TargetKind};
use crate::rewrite::{Budget, RewriteError, Rewriter, Rule};

#[derive(Parser, Debug)]
#[command(name = "netrw", version, about = "Rewriting in free linear PROPs of networks")]
pub struct Cli {
    /// Signature file (`gen <name> <coarity> <arity>` lines).
    #[arg(long, global = true)]
    pub sig: Option<PathBuf>,
    /// Emit structured JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct RulesArg {
    /// Rule file.
    #[arg(long)]
    pub rules: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that terms denote valid networks.
    Validate { terms: Vec<String> },
    /// Decide whether two terms are equal.
    Iso { a: String, b: String },
    /// Transference matrix of a term.
    Tr { term: String },
    /// Evaluate a network in a target PROP.
    Eval {
        #[arg(long)]
        target: String,
        #[arg(long)]
        map: Option<PathBuf>,
        term: String,
    },
    /// Symmetric join of two networks.
    Join {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        q: usize,
        a: String,
        b: String,
    },
    /// Reduce a term to normal form.
    Normalize {
        #[command(flatten)]
        rules: RulesArg,
        #[arg(long, conflicts_with = "max_steps")]
        order: Option<PathBuf>,
        #[arg(long)]
        max_steps: Option<usize>,
        /// Ambient type as rows of 0/1 separated by `;` (default all ones).
        #[arg(long = "type")]
        ambient: Option<String>,
        /// Print every step.
        #[arg(long)]
        trace: bool,
        term: String,
    },
    /// List decisive ambiguities.
    Ambiguities {
        #[command(flatten)]
        rules: RulesArg,
        #[arg(long, num_args = 2, value_names = ["S1", "S2"])]
        pair: Option<Vec<String>>,
    },
    /// Resolve every decisive ambiguity.
    Confluence {
        #[command(flatten)]
        rules: RulesArg,
        #[arg(long, conflicts_with = "max_steps")]
        order: Option<PathBuf>,
        #[arg(long, default_value_t = 25)]
        max_steps: usize,
    },
    /// Add oriented critical pairs until confluent.
    Complete {
        #[command(flatten)]
        rules: RulesArg,
        #[arg(long)]
        order: PathBuf,
        #[arg(long, default_value_t = Limits::default().max_rounds)]
        max_rounds: usize,
        #[arg(long, default_value_t = Limits::default().max_rules)]
        max_rules: usize,
    },
    /// Check an order for strictness and rule compatibility.
    OrderCheck {
        #[arg(long)]
        order: PathBuf,
        #[arg(long)]
        rules: PathBuf,
    },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Fail(String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Fail {
        Fail(e.to_string())
    }
}

type Res<T> = Result<T, Fail>;

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| Fail(format!("{}: {e}", path.display())))
}

fn term_text(arg: &str) -> Res<String> {
    let p = Path::new(arg);
    if p.is_file() {
        read(p)
    } else {
        Ok(arg.to_string())
    }
}

fn in_file<T>(path: &Path, r: Result<T, AinError>) -> Res<T> {
    r.map_err(|e| Fail(format!("{}: {e}", path.display())))
}

struct Ctx {
    sig: Signature,
    json: bool,
    out: String,
}

impl Ctx {
    fn term(&self, arg: &str) -> Res<LinComb> {
        Ok(parse_term(&term_text(arg)?, &self.sig)?)
    }

    fn rules(&mut self, path: &Path) -> Res<Vec<Rule>> {
        let file = in_file(path, parse_rules(&read(path)?, &self.sig))?;
        self.sig = file.signature;
        Ok(file.rules)
    }

    fn order(&self, path: &Path) -> Res<OrderSpec> {
        let base = path.parent().unwrap_or(Path::new("."));
        OrderSpec::parse(&read(path)?, base).map_err(|e| Fail(format!("{}: {e}", path.display())))
    }

    fn emit(&mut self, text: impl AsRef<str>, data: Json) {
        if self.json {
            self.out.push_str(&serde_json::to_string_pretty(&data).expect("json"));
            self.out.push('\n');
        } else {
            self.out.push_str(text.as_ref());
            if !text.as_ref().ends_with('\n') {
                self.out.push('\n');
            }
        }
    }
}

/// Parses `args` (without the program name) and runs the subcommand.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("netrw")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    execute(cli)
}

pub fn execute(cli: Cli) -> Outcome {
    let mut ctx = Ctx {
        sig: Signature::new(),
        json: cli.json,
        out: String::new(),
    };
    let result = (|| -> Res<bool> {
        if let Some(p) = &cli.sig {
            ctx.sig = Signature::parse(&read(p)?).map_err(|e| Fail(format!("{}: {e}", p.display())))?;
        }
        dispatch(&mut ctx, cli.command)
    })();
    match result {
        Ok(positive) => Outcome {
            code: if positive { 0 } else { 1 },
            stdout: ctx.out,
            stderr: String::new(),
        },
        Err(Fail(msg)) => Outcome {
            code: 2,
            stdout: ctx.out,
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn matrix_json(m: &BoolMat) -> Json {
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": m.to_compact() })
}

fn ambiguity_json(a: &ambiguity::Ambiguity, status: Option<&Status>) -> Json {
    let mut v = json!({
        "rules": [a.rule1, a.rule2],
        "kind": a.kind,
        "site": format_class(&a.site),
        "type": a.amb_type.to_compact(),
        "reducts": [format_term(&a.reduct1), format_term(&a.reduct2)],
    });
    if let Some(s) = status {
        v["status"] = json!(s.label());
        if let Status::Unresolved { left, right, difference } = s {
            v["normal_forms"] = json!([format_term(left), format_term(right)]);
            v["difference"] = json!(format_term(difference));
        }
    }
    v
}

fn report_json(r: &ConfluenceReport) -> Json {
    json!({
        "verdict": r.verdict,
        "advisory": r.advisory,
        "operadic": r.operadic,
        "summary": r.summary(),
        "warnings": r.warnings,
        "ambiguities": r.nontrivial().map(|(a, s)| ambiguity_json(a, Some(s))).collect::<Vec<_>>(),
    })
}

fn ambient(spec: Option<&str>, x: &LinComb) -> Res<BoolMat> {
    let q = match spec {
        Some(s) => BoolMat::parse_rows(s)?,
        None => crate::rewrite::ambient(x),
    };
    if q.shape() != x.shape() {
        return Err(Fail(format!("type is {:?} but the term has shape {:?}", q.shape(), x.shape())));
    }
    Ok(q)
}

fn dispatch(ctx: &mut Ctx, cmd: Command) -> Res<bool> {
    match cmd {
        Command::Validate { terms } => {
            let mut all = true;
            let mut recs = Vec::new();
            let mut text = String::new();
            for t in &terms {
                let src = term_text(t)?;
                match parse_term(&src, &ctx.sig) {
                    Ok(x) => {
                        let (m, n) = x.shape();
                        writeln!(text, "ok {m}x{n}, {} term(s)", x.len()).ok();
                        recs.push(json!({ "term": t, "valid": true, "shape": [m, n], "terms": x.len() }));
                    }
                    Err(e @ (AinError::Syntax { .. } | AinError::UnknownSymbol(_))) => return Err(e.into()),
                    Err(e) => {
                        all = false;
                        writeln!(text, "invalid: {e}").ok();
                        recs.push(json!({ "term": t, "valid": false, "error": e.to_string() }));
                    }
                }
            }
            ctx.emit(text, json!(recs));
            Ok(all)
        }
        Command::Iso { a, b } => {
            let (x, y) = (ctx.term(&a)?, ctx.term(&b)?);
            let same = x == y;
            ctx.emit(
                if same { "isomorphic" } else { "not isomorphic" },
                json!({ "isomorphic": same }),
            );
            Ok(same)
        }
        Command::Tr { term } => {
            let x = ctx.term(&term)?;
            let (m, n) = x.shape();
            let mut tr = BoolMat::zeros(m, n);
            for c in x.classes() {
                tr = tr.add(c.tr())?;
            }
            ctx.emit(format!("{}  ({m}x{n})", tr.to_compact()), matrix_json(&tr));
            Ok(true)
        }
        Command::Eval { target, map, term } => {
            let kind: TargetKind = target.parse()?;
            let assign = match &map {
                Some(p) => Some(Assignment::parse(&read(p)?).map_err(|e| Fail(format!("{}: {e}", p.display())))?),
                None => None,
            };
            let x = ctx.term(&term)?;
            let c = x
                .as_monomial()
                .ok_or_else(|| Fail("eval needs a single network with coefficient 1".into()))?;
            let v = evaluate(kind, c.rep(), assign.as_ref())?;
            ctx.emit(v.to_string(), json!({ "target": kind.name(), "value": v.to_string() }));
            Ok(true)
        }
        Command::Join { r, q, a, b } => {
            let (x, y) = (ctx.term(&a)?, ctx.term(&b)?);
            match x.sym_join(r, q, &y) {
                Ok(z) => {
                    let s = format_term(&z);
                    ctx.emit(&s, json!({ "join": s }));
                    Ok(true)
                }
                Err(e) => {
                    ctx.emit(format!("undefined: {e}"), json!({ "join": null, "reason": e.to_string() }));
                    Ok(false)
                }
            }
        }
        Command::Normalize {
            rules,
            order,
            max_steps,
            ambient: ty,
            trace,
            term,
        } => {
            let rs = ctx.rules(&rules.rules)?;
            let budget = match (&order, max_steps) {
                (Some(p), _) => {
                    let spec = ctx.order(p)?;
                    for r in &rs {
                        if !spec.rule_compatible(r)?.ok {
                            return Err(Fail(format!("rule `{}` is not compatible with the order", r.id)));
                        }
                    }
                    Budget::OrderBacked
                }
                (None, Some(n)) => Budget::MaxSteps(n),
                (None, None) => Budget::MaxSteps(1000),
            };
            let x = ctx.term(&term)?;
            let q = ambient(ty.as_deref(), &x)?;
            let rw = Rewriter::new(&rs);
            match rw.normalize_traced(&x, &q, budget) {
                Ok((nf, steps)) => {
                    let mut text = String::new();
                    if trace {
                        for s in &steps {
                            writeln!(text, "{s}").ok();
                        }
                    }
                    text.push_str(&format_term(&nf));
                    let data = json!({
                        "normal_form": format_term(&nf),
                        "steps": steps.len(),
                        "trace": steps.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    });
                    ctx.emit(text, data);
                    Ok(true)
                }
                Err(RewriteError::BudgetExceeded { steps, partial }) => {
                    ctx.emit(
                        format!("budget of {steps} steps exhausted at {}", format_term(&partial)),
                        json!({ "normal_form": null, "steps": steps, "partial": format_term(&partial) }),
                    );
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Ambiguities { rules, pair } => {
            let rs = ctx.rules(&rules.rules)?;
            let ambs = match pair {
                Some(p) => {
                    let find = |id: &str| {
                        rs.iter()
                            .find(|r| r.id == id)
                            .ok_or_else(|| Fail(format!("no rule `{id}`")))
                    };
                    ambiguity::enumerate_decisive(find(&p[0])?, find(&p[1])?)
                }
                None => ambiguity::with_thread_cap(|| ambiguity::all_ambiguities(&rs)),
            };
            let mut text = String::new();
            for a in &ambs {
                writeln!(text, "{a}").ok();
            }
            let n = ambs.iter().filter(|a| !a.is_trivial()).count();
            write!(text, "{n} nontrivial").ok();
            ctx.emit(text, json!(ambs.iter().map(|a| ambiguity_json(a, None)).collect::<Vec<_>>()));
            Ok(true)
        }
        Command::Confluence { rules, order, max_steps } => {
            let rs = ctx.rules(&rules.rules)?;
            let spec = order.as_deref().map(|p| ctx.order(p)).transpose()?;
            let report = match ambiguity::confluence_report(&rs, spec.as_ref(), max_steps) {
                Ok(r) => r,
                Err(AmbiguityError::IncompatibleRule(id)) => {
                    ctx.emit(
                        format!("rule `{id}` is not compatible with the order"),
                        json!({ "verdict": "incompatible", "rule": id }),
                    );
                    return Ok(false);
                }
                Err(e) => return Err(e.into()),
            };
            ctx.emit(report.to_string(), report_json(&report));
            Ok(report.verdict == Verdict::Confluent)
        }
        Command::Complete {
            rules,
            order,
            max_rounds,
            max_rules,
        } => {
            let rs = ctx.rules(&rules.rules)?;
            let spec = ctx.order(&order)?;
            let limits = Limits { max_rounds, max_rules };
            match ambiguity::complete(&rs, &spec, limits) {
                Ok((done, report)) => {
                    let mut text = ctx.sig.to_text();
                    for r in &done {
                        writeln!(text, "{r}").ok();
                    }
                    write!(text, "# {}", report.summary()).ok();
                    let data = json!({
                        "rules": done.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                        "added": done.len() - rs.len(),
                        "report": report_json(&report),
                    });
                    ctx.emit(text, data);
                    Ok(true)
                }
                Err(e @ (AmbiguityError::OrientationFailed(_) | AmbiguityError::LimitReached { .. })) => {
                    ctx.emit(e.to_string(), json!({ "completed": false, "reason": e.to_string() }));
                    Ok(false)
                }
                Err(AmbiguityError::IncompatibleRule(id)) => {
                    ctx.emit(
                        format!("rule `{id}` is not compatible with the order"),
                        json!({ "completed": false, "rule": id }),
                    );
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::OrderCheck { order, rules } => {
            let rs = ctx.rules(&rules)?;
            let spec = ctx.order(&order)?;
            let strict = spec.check_strictness(&ctx.sig);
            let mut text = String::new();
            for n in &strict.notes {
                writeln!(text, "note: {n}").ok();
            }
            for o in &strict.offenses {
                writeln!(text, "not strict: stage {} symbol {}: {}", o.stage, o.symbol, o.problem).ok();
            }
            let mut ok = strict.ok;
            let mut recs = Vec::new();
            for r in &rs {
                let c = spec.rule_compatible(r)?;
                ok &= c.ok;
                let mark = if c.ok { "compatible" } else { "incompatible" };
                writeln!(text, "rule {}: {mark}", r.id).ok();
                for (m, res) in &c.witnesses {
                    writeln!(text, "  {} is {res} the left hand side", format_class(m)).ok();
                }
                recs.push(json!({
                    "rule": r.id,
                    "compatible": c.ok,
                    "witnesses": c.witnesses.iter().map(|(m, res)| json!({ "monomial": format_class(m), "compare": res })).collect::<Vec<_>>(),
                }));
            }
            write!(text, "{}", if ok { "order ok" } else { "order rejected" }).ok();
            ctx.emit(text, json!({ "ok": ok, "strictness": strict, "rules": recs }));
            Ok(ok)
        }
    }
}
