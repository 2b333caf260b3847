//! Canonical labelling.
//!
//! Ports are totally ordered at every vertex, so once a single node of a
//! connected component has been fixed, a breadth-first walk over ports
//! numbers the rest of the component deterministically. Components that
//! touch a leg are rooted at their legs; closed components (and, when legs
//! are unordered, every component) are rooted at whichever start node
//! yields the smallest encoding.

use std::collections::{BTreeMap, VecDeque};

use super::{Edge, Network, IN, OUT};
use crate::core::{Perm, Symbol};

/// Whether leg positions are part of the structure being canonicalised.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LegOrder {
    /// Legs keep their positions; codes distinguish leg permutations.
    Fixed,
    /// Legs are reordered canonically; codes identify leg permutations.
    Free,
}

/// Result of canonicalisation.
#[derive(Clone, Debug)]
pub struct Canon {
    pub code: Vec<u8>,
    /// Representative with vertices `2..` and edges `0..` in canonical order.
    pub network: Network,
    /// Original vertex id to canonical id (inner vertices only).
    pub vertex_map: BTreeMap<usize, usize>,
    /// Original edge id to canonical id.
    pub edge_map: BTreeMap<usize, usize>,
    /// Old output position (zero-based) to new position.
    pub out_perm: Perm,
    /// Old input position (zero-based) to new position.
    pub in_perm: Perm,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum End {
    Inner(usize, usize),
    Leg,
}

struct Dense<'a> {
    syms: Vec<&'a Symbol>,
    vertex_ids: Vec<usize>,
    edge_ids: Vec<usize>,
    // per edge: tail end, head end, original leg indices
    tails: Vec<End>,
    heads: Vec<End>,
    raw: Vec<Edge>,
    ins: Vec<Vec<usize>>,
    outs: Vec<Vec<usize>>,
}

impl<'a> Dense<'a> {
    fn new(net: &'a Network) -> Dense<'a> {
        let vertex_ids: Vec<usize> = net.deco.keys().copied().collect();
        let vpos: BTreeMap<usize, usize> = vertex_ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edge_ids: Vec<usize> = net.edges.keys().copied().collect();
        let epos: BTreeMap<usize, usize> = edge_ids.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut tails = Vec::with_capacity(edge_ids.len());
        let mut heads = Vec::with_capacity(edge_ids.len());
        let mut raw = Vec::with_capacity(edge_ids.len());
        for e in net.edges.values() {
            tails.push(if e.tail == IN { End::Leg } else { End::Inner(vpos[&e.tail], e.tail_index) });
            heads.push(if e.head == OUT { End::Leg } else { End::Inner(vpos[&e.head], e.head_index) });
            raw.push(*e);
        }
        let ins = vertex_ids
            .iter()
            .map(|v| net.in_edges(*v).iter().map(|e| epos[e]).collect())
            .collect();
        let outs = vertex_ids
            .iter()
            .map(|v| net.out_edges(*v).iter().map(|e| epos[e]).collect())
            .collect();
        Dense {
            syms: net.deco.values().collect(),
            vertex_ids,
            edge_ids,
            tails,
            heads,
            raw,
            ins,
            outs,
        }
    }

    fn n(&self) -> usize {
        self.syms.len()
    }

    fn m(&self) -> usize {
        self.edge_ids.len()
    }

    fn node_count(&self) -> usize {
        self.n() + 2 * self.m()
    }

    // node numbering: inner vertices, then out-terminal per edge, then in-terminal per edge
    fn out_term(&self, e: usize) -> usize {
        self.n() + e
    }

    fn in_term(&self, e: usize) -> usize {
        self.n() + self.m() + e
    }

    fn tail_node(&self, e: usize) -> usize {
        match self.tails[e] {
            End::Inner(v, _) => v,
            End::Leg => self.in_term(e),
        }
    }

    fn head_node(&self, e: usize) -> usize {
        match self.heads[e] {
            End::Inner(v, _) => v,
            End::Leg => self.out_term(e),
        }
    }

    fn neighbours(&self, node: usize, out: &mut Vec<usize>) {
        out.clear();
        if node < self.n() {
            for &e in &self.ins[node] {
                out.push(self.tail_node(e));
            }
            for &e in &self.outs[node] {
                out.push(self.head_node(e));
            }
        } else if node < self.n() + self.m() {
            out.push(self.tail_node(node - self.n()));
        } else {
            out.push(self.head_node(node - self.n() - self.m()));
        }
    }

    /// Breadth-first numbering from `root`, continuing from `next`.
    fn walk(&self, root: usize, num: &mut [usize], order: &mut Vec<usize>) {
        let mut queue = VecDeque::from([root]);
        num[root] = order.len();
        order.push(root);
        let mut nb = Vec::new();
        while let Some(x) = queue.pop_front() {
            self.neighbours(x, &mut nb);
            for &y in &nb {
                if num[y] == usize::MAX {
                    num[y] = order.len();
                    order.push(y);
                    queue.push_back(y);
                }
            }
        }
    }

    /// Token encoding of the nodes in `order` (numbered by `num`).
    fn encode(&self, order: &[usize], num: &[usize], legs: LegOrder, base: usize, out: &mut Vec<u32>) {
        for &x in order {
            if x < self.n() {
                let s = self.syms[x];
                out.push(0);
                out.push(s.name.len() as u32);
                out.extend(s.name.bytes().map(u32::from));
                out.push(s.coarity as u32);
                out.push(s.arity as u32);
            } else if x < self.n() + self.m() {
                out.push(1);
                let e = x - self.n();
                out.push(match legs {
                    LegOrder::Fixed => self.raw[e].head_index as u32,
                    LegOrder::Free => 0,
                });
            } else {
                out.push(2);
                let e = x - self.n() - self.m();
                out.push(match legs {
                    LegOrder::Fixed => self.raw[e].tail_index as u32,
                    LegOrder::Free => 0,
                });
            }
        }
        out.push(u32::MAX);
        let mut rows = self.edge_rows(order, num);
        rows.sort_unstable();
        for (t, tp, h, hp, _) in rows {
            out.extend([(t - base) as u32, tp as u32, (h - base) as u32, hp as u32]);
        }
        out.push(u32::MAX);
    }

    /// `(tail number, tail port, head number, head port, edge)` for every edge
    /// incident to the listed nodes.
    fn edge_rows(&self, order: &[usize], num: &[usize]) -> Vec<(usize, usize, usize, usize, usize)> {
        let mut seen = Vec::new();
        for &x in order {
            if x < self.n() {
                // only take edges by their head (or tail for output legs) to avoid doubles
                for &e in &self.ins[x] {
                    seen.push(e);
                }
                for &e in &self.outs[x] {
                    if self.heads[e] == End::Leg {
                        seen.push(e);
                    }
                }
            } else if x >= self.n() + self.m() {
                let e = x - self.n() - self.m();
                if self.heads[e] == End::Leg {
                    seen.push(e);
                }
            }
        }
        seen.sort_unstable();
        seen.dedup();
        seen.into_iter()
            .map(|e| {
                let tp = match self.tails[e] {
                    End::Inner(_, p) => p,
                    End::Leg => 0,
                };
                let hp = match self.heads[e] {
                    End::Inner(_, p) => p,
                    End::Leg => 0,
                };
                (num[self.tail_node(e)], tp, num[self.head_node(e)], hp, e)
            })
            .collect()
    }

    /// Minimal local encoding of the component containing `seed`, with the
    /// node order realising it.
    fn best_rooting(&self, seed: usize, legs: LegOrder) -> (Vec<u32>, Vec<usize>) {
        let mut num = vec![usize::MAX; self.node_count()];
        let mut comp = Vec::new();
        self.walk(seed, &mut num, &mut comp);
        let mut best: Option<(Vec<u32>, Vec<usize>)> = None;
        let mut starts: Vec<usize> = comp.clone();
        starts.sort_unstable();
        for &s in &starts {
            for &x in &comp {
                num[x] = usize::MAX;
            }
            let mut order = Vec::with_capacity(comp.len());
            self.walk(s, &mut num, &mut order);
            let mut toks = Vec::new();
            self.encode(&order, &num, legs, 0, &mut toks);
            if best.as_ref().is_none_or(|(b, _)| toks < *b) {
                best = Some((toks, order));
            }
        }
        best.expect("nonempty component")
    }

    fn is_live(&self, x: usize) -> bool {
        if x < self.n() {
            true
        } else if x < self.n() + self.m() {
            self.heads[x - self.n()] == End::Leg
        } else {
            self.tails[x - self.n() - self.m()] == End::Leg
        }
    }
}

fn leb128(tokens: &[u32]) -> Vec<u8> {
    let mut out = Vec::with_capacity(tokens.len() + 4);
    for &t in tokens {
        let mut t = t;
        loop {
            let byte = (t & 0x7f) as u8;
            t >>= 7;
            if t == 0 {
                out.push(byte);
                break;
            }
            out.push(byte | 0x80);
        }
    }
    out
}

impl Network {
    /// Canonical byte code: equal exactly for isomorphic networks.
    pub fn canonical_code(&self) -> Vec<u8> {
        self.canonical_with(LegOrder::Fixed).code
    }

    pub fn canonical(&self) -> Canon {
        self.canonical_with(LegOrder::Fixed)
    }

    pub fn canonical_with(&self, legs: LegOrder) -> Canon {
        let d = Dense::new(self);
        let total = d.node_count();
        let mut num = vec![usize::MAX; total];
        let mut order: Vec<usize> = Vec::new();
        let mut pending: Vec<(Vec<u32>, Vec<usize>)> = Vec::new();
        if legs == LegOrder::Fixed {
            let mut roots: Vec<(usize, usize)> = Vec::new();
            for e in 0..d.m() {
                if d.heads[e] == End::Leg {
                    roots.push((d.raw[e].head_index, d.out_term(e)));
                }
            }
            roots.sort_unstable();
            let mut inroots: Vec<(usize, usize)> = Vec::new();
            for e in 0..d.m() {
                if d.tails[e] == End::Leg {
                    inroots.push((d.raw[e].tail_index, d.in_term(e)));
                }
            }
            inroots.sort_unstable();
            for (_, r) in roots.into_iter().chain(inroots) {
                if num[r] == usize::MAX {
                    d.walk(r, &mut num, &mut order);
                }
            }
        }
        let mut claimed = num.clone();
        for x in 0..total {
            if claimed[x] == usize::MAX && d.is_live(x) {
                let (toks, comp_order) = d.best_rooting(x, legs);
                for &y in &comp_order {
                    claimed[y] = 0;
                }
                pending.push((toks, comp_order));
            }
        }
        pending.sort();
        for (_, comp_order) in pending {
            for y in comp_order {
                num[y] = order.len();
                order.push(y);
            }
        }
        let mut toks = Vec::new();
        d.encode(&order, &num, legs, 0, &mut toks);
        let code = leb128(&toks);

        // canonical representative
        let mut vertex_map = BTreeMap::new();
        let mut out_new = vec![0; self.coarity()];
        let mut in_new = vec![0; self.arity()];
        let (mut next_out, mut next_in) = (0, 0);
        for &x in &order {
            if x < d.n() {
                vertex_map.insert(d.vertex_ids[x], 2 + vertex_map.len());
            } else if x < d.n() + d.m() {
                let e = x - d.n();
                out_new[d.raw[e].head_index - 1] = next_out;
                next_out += 1;
            } else {
                let e = x - d.n() - d.m();
                in_new[d.raw[e].tail_index - 1] = next_in;
                next_in += 1;
            }
        }
        if legs == LegOrder::Fixed {
            out_new = (0..self.coarity()).collect();
            in_new = (0..self.arity()).collect();
        }
        let mut rows = d.edge_rows(&order, &num);
        rows.sort_unstable();
        let mut edge_map = BTreeMap::new();
        let mut edges = BTreeMap::new();
        let mut deco = BTreeMap::new();
        for (&old, &new) in &vertex_map {
            deco.insert(new, self.deco[&old].clone());
        }
        for (i, &(_, _, _, _, e)) in rows.iter().enumerate() {
            let old = d.raw[e];
            let (tail, tail_index) = if old.tail == IN {
                (IN, in_new[old.tail_index - 1] + 1)
            } else {
                (vertex_map[&old.tail], old.tail_index)
            };
            let (head, head_index) = if old.head == OUT {
                (OUT, out_new[old.head_index - 1] + 1)
            } else {
                (vertex_map[&old.head], old.head_index)
            };
            edge_map.insert(d.edge_ids[e], i);
            edges.insert(i, Edge::new(tail, tail_index, head, head_index));
        }
        Canon {
            code,
            network: Network::assemble(deco, edges),
            vertex_map,
            edge_map,
            out_perm: Perm::from_zero_based(out_new),
            in_perm: Perm::from_zero_based(in_new),
        }
    }
}
