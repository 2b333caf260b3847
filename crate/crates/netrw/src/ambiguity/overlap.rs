//! Candidate sites: two left hand sides glued along shared vertices,
//! stray edges laid over other edges, and (for non-sharp pairs) output
//! legs of one side plugged into input legs of the other.

use std::collections::{BTreeMap, BTreeSet};

use crate::core::Symbol;
use crate::freeprop::NetClass;
use crate::matching::Embedding;
use crate::network::{Edge, LegOrder, Network, IN, OUT};

type End = Option<(usize, usize)>;

struct Half {
    side: u8,
    tail: End,
    head: End,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[b.max(a)] = a.min(b);
        }
    }
}

/// Merged edge class: its ends and which patterns contribute to it.
#[derive(Clone)]
struct Class {
    tail: End,
    head: End,
    sides: u8,
}

fn merge_ends(a: End, b: End) -> Option<End> {
    match (a, b) {
        (Some(x), Some(y)) if x != y => None,
        (Some(x), _) | (_, Some(x)) => Some(Some(x)),
        _ => Some(None),
    }
}

fn merge(a: &Class, b: &Class) -> Option<Class> {
    Some(Class {
        tail: merge_ends(a.tail, b.tail)?,
        head: merge_ends(a.head, b.head)?,
        sides: a.sides | b.sides,
    })
}

/// All partial injective, decoration preserving maps from the inner
/// vertices of `h2` to those of `h1`.
fn identifications(h1: &Network, h2: &Network) -> Vec<BTreeMap<usize, usize>> {
    let v2: Vec<usize> = h2.inner_vertices().collect();
    let mut out = Vec::new();
    let mut cur = BTreeMap::new();
    let mut used = BTreeSet::new();
    fn go(
        i: usize,
        v2: &[usize],
        h1: &Network,
        h2: &Network,
        cur: &mut BTreeMap<usize, usize>,
        used: &mut BTreeSet<usize>,
        out: &mut Vec<BTreeMap<usize, usize>>,
    ) {
        if i == v2.len() {
            out.push(cur.clone());
            return;
        }
        go(i + 1, v2, h1, h2, cur, used, out);
        let sym: &Symbol = h2.symbol(v2[i]);
        for u in h1.inner_vertices() {
            if h1.symbol(u) == sym && used.insert(u) {
                cur.insert(v2[i], u);
                go(i + 1, v2, h1, h2, cur, used, out);
                cur.remove(&v2[i]);
                used.remove(&u);
            }
        }
    }
    go(0, &v2, h1, h2, &mut cur, &mut used, &mut out);
    out
}

/// Glues `h1` and `h2` into candidate sites, each reduced to its class
/// with canonically ordered legs.
pub(super) fn candidate_sites(h1: &Network, h2: &Network, leg_gluing: bool) -> BTreeSet<NetClass> {
    let offset = h1.max_vertex() + 1;
    let mut sites = BTreeSet::new();
    for ident in identifications(h1, h2) {
        let gv2 = |v: usize| ident.get(&v).copied().unwrap_or(offset + v);
        let mut halves = Vec::new();
        for e in h1.edges().values() {
            halves.push(Half {
                side: 1,
                tail: (e.tail != IN).then_some((e.tail, e.tail_index)),
                head: (e.head != OUT).then_some((e.head, e.head_index)),
            });
        }
        for e in h2.edges().values() {
            halves.push(Half {
                side: 2,
                tail: (e.tail != IN).then(|| (gv2(e.tail), e.tail_index)),
                head: (e.head != OUT).then(|| (gv2(e.head), e.head_index)),
            });
        }
        let mut dsu = Dsu((0..halves.len()).collect());
        let mut at_port: BTreeMap<(bool, (usize, usize)), usize> = BTreeMap::new();
        for (k, h) in halves.iter().enumerate() {
            for key in [h.tail.map(|t| (false, t)), h.head.map(|t| (true, t))].into_iter().flatten() {
                match at_port.get(&key) {
                    Some(&j) => dsu.union(j, k),
                    None => {
                        at_port.insert(key, k);
                    }
                }
            }
        }
        let mut classes: BTreeMap<usize, Class> = BTreeMap::new();
        let mut consistent = true;
        for (k, h) in halves.iter().enumerate() {
            let c = Class {
                tail: h.tail,
                head: h.head,
                sides: h.side,
            };
            let r = dsu.find(k);
            let merged = match classes.get(&r) {
                Some(prev) => merge(prev, &c),
                None => Some(c),
            };
            match merged {
                Some(m) => {
                    classes.insert(r, m);
                }
                None => consistent = false,
            }
        }
        if !consistent {
            continue;
        }
        let classes: Vec<Class> = classes.into_values().collect();
        let mut deco = BTreeMap::new();
        for v in h1.inner_vertices() {
            deco.insert(v, h1.symbol(v).clone());
        }
        for v in h2.inner_vertices() {
            deco.entry(gv2(v)).or_insert_with(|| h2.symbol(v).clone());
        }
        for glued in optional_merges(&classes, leg_gluing) {
            if let Some(site) = build(&deco, &glued) {
                sites.insert(site);
            }
        }
    }
    sites
}

/// Stray classes laid over other classes, and cross leg gluings.
fn optional_merges(classes: &[Class], leg_gluing: bool) -> Vec<Vec<Class>> {
    let mut out = Vec::new();
    let mut state: Vec<Option<Class>> = classes.iter().cloned().map(Some).collect();
    fn go(i: usize, state: &mut Vec<Option<Class>>, leg_gluing: bool, out: &mut Vec<Vec<Class>>) {
        if i == state.len() {
            out.push(state.iter().flatten().cloned().collect());
            return;
        }
        go(i + 1, state, leg_gluing, out);
        let Some(c) = state[i].clone() else {
            return;
        };
        let stray = c.tail.is_none() && c.head.is_none();
        let open_head = c.tail.is_some() && c.head.is_none();
        if !stray && !(leg_gluing && open_head) {
            return;
        }
        for j in 0..state.len() {
            let Some(d) = state[j].clone() else { continue };
            if j == i {
                continue;
            }
            let allowed = if stray {
                true
            } else {
                d.tail.is_none() && d.head.is_some() && (c.sides | d.sides) == 3 && c.sides != d.sides
            };
            if !allowed {
                continue;
            }
            if let Some(m) = merge(&c, &d) {
                state[i] = None;
                state[j] = Some(m);
                go(i + 1, state, leg_gluing, out);
                state[i] = Some(c.clone());
                state[j] = Some(d);
            }
        }
    }
    go(0, &mut state, leg_gluing, &mut out);
    out
}

fn build(deco: &BTreeMap<usize, Symbol>, classes: &[Class]) -> Option<NetClass> {
    let mut edges = BTreeMap::new();
    let (mut outs, mut ins) = (0, 0);
    for (id, c) in classes.iter().enumerate() {
        let (tail, ti) = c.tail.unwrap_or_else(|| {
            ins += 1;
            (IN, ins)
        });
        let (head, hi) = c.head.unwrap_or_else(|| {
            outs += 1;
            (OUT, outs)
        });
        edges.insert(id, Edge::new(tail, ti, head, hi));
    }
    let net = Network::validate(deco.clone(), edges).ok()?;
    if net.find_cycle().is_some() {
        return None;
    }
    Some(NetClass::of(&net.canonical_with(LegOrder::Free).network))
}

/// How two embeddings into a common site relate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(super) struct Overlap {
    /// Every site vertex and edge is covered.
    pub covering: bool,
    /// No edge is both an output leg image of one and an input leg image of the other.
    pub legs_apart: bool,
    /// Feedback of a pattern's own legs only along edges the other pattern covers.
    pub no_private_feedback: bool,
    /// Vertex and edge images disjoint.
    pub montage: bool,
}

pub(super) fn classify(g: &Network, h1: &Network, a: &Embedding, h2: &Network, b: &Embedding) -> Overlap {
    let v1: BTreeSet<usize> = a.vertex_map.values().copied().collect();
    let v2: BTreeSet<usize> = b.vertex_map.values().copied().collect();
    let e1: BTreeSet<usize> = a.edge_map.values().copied().collect();
    let e2: BTreeSet<usize> = b.edge_map.values().copied().collect();
    let covering = g.inner_vertices().all(|v| v1.contains(&v) || v2.contains(&v))
        && g.edges().keys().all(|e| e1.contains(e) || e2.contains(e));
    let legs = |h: &Network, m: &Embedding, out: bool| -> BTreeSet<usize> {
        h.edges()
            .iter()
            .filter(|(_, e)| if out { e.head == OUT } else { e.tail == IN })
            .map(|(id, _)| m.edge_map[id])
            .collect()
    };
    let (out1, in1) = (legs(h1, a, true), legs(h1, a, false));
    let (out2, in2) = (legs(h2, b, true), legs(h2, b, false));
    let legs_apart = out1.is_disjoint(&in2) && in1.is_disjoint(&out2);
    let private = |h: &Network, m: &Embedding, other: &BTreeSet<usize>| {
        h.edges().iter().all(|(i, e)| {
            e.head != OUT
                || h.edges().iter().all(|(j, f)| {
                    i == j || f.tail != IN || m.edge_map[i] != m.edge_map[j] || other.contains(&m.edge_map[i])
                })
        })
    };
    let no_private_feedback = private(h1, a, &e2) && private(h2, b, &e1);
    let montage = v1.is_disjoint(&v2) && e1.is_disjoint(&e2);
    Overlap {
        covering,
        legs_apart,
        no_private_feedback,
        montage,
    }
}
