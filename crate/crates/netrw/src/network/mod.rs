//! Decorated acyclic port-graphs.
//!
//! Vertex `0` collects the outputs and vertex `1` feeds the inputs. Every
//! edge runs from a tail port to a head port; ports are numbered from 1.

mod canon;
mod decompose;
mod eval;
mod smooth;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::core::{BoolMat, Perm, Symbol};

pub use canon::{Canon, LegOrder};
pub use decompose::DecomposeError;
pub use eval::{EvalError, TargetProp};
pub use smooth::{Homeomorphism, SmoothError};

/// The output vertex.
pub const OUT: usize = 0;
/// The input vertex.
pub const IN: usize = 1;

/// One edge: `tail.tail_index -> head.head_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub head: usize,
    pub head_index: usize,
    pub tail: usize,
    pub tail_index: usize,
}

impl Edge {
    pub fn new(tail: usize, tail_index: usize, head: usize, head_index: usize) -> Edge {
        Edge {
            head,
            head_index,
            tail,
            tail_index,
        }
    }

    /// An edge straight from input to output.
    pub fn is_stray(&self) -> bool {
        self.head == OUT && self.tail == IN
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Head,
    Tail,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Head => "head",
            Side::Tail => "tail",
        })
    }
}

/// A violated network axiom.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("axiom 1: directed cycle through edges {0:?}")]
    CycleFound(Vec<usize>),
    #[error("axiom 2: vertex {vertex} has two edges at {side} index {index}")]
    DuplicatePort {
        vertex: usize,
        side: Side,
        index: usize,
    },
    #[error("axiom 3: {side} indices at vertex {vertex} are not 1..k")]
    GapInIndices { vertex: usize, side: Side },
    #[error("axiom 4: valencies of vertex {vertex} disagree with its decoration")]
    ArityMismatch { vertex: usize },
    #[error("edge {edge} has its head at the input vertex")]
    HeadAtInput { edge: usize },
    #[error("edge {edge} has its tail at the output vertex")]
    TailAtOutput { edge: usize },
    #[error("edge {edge} touches undeclared vertex {vertex}")]
    UnknownVertex { edge: usize, vertex: usize },
    #[error("vertex ids 0 and 1 are reserved for the boundary")]
    ReservedVertex,
}

/// A validated network.
#[derive(Clone, PartialEq, Eq)]
pub struct Network {
    deco: BTreeMap<usize, Symbol>,
    edges: BTreeMap<usize, Edge>,
    ins: BTreeMap<usize, Vec<usize>>,
    outs: BTreeMap<usize, Vec<usize>>,
}

impl Network {
    /// Checks the four network axioms.
    pub fn validate(
        deco: BTreeMap<usize, Symbol>,
        edges: BTreeMap<usize, Edge>,
    ) -> Result<Network, Vec<Violation>> {
        let mut bad = Vec::new();
        if deco.contains_key(&OUT) || deco.contains_key(&IN) {
            bad.push(Violation::ReservedVertex);
        }
        let known = |v: usize| v == OUT || v == IN || deco.contains_key(&v);
        let mut heads: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
        let mut tails: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
        for (&id, e) in &edges {
            if e.head == IN {
                bad.push(Violation::HeadAtInput { edge: id });
            }
            if e.tail == OUT {
                bad.push(Violation::TailAtOutput { edge: id });
            }
            for v in [e.head, e.tail] {
                if !known(v) {
                    bad.push(Violation::UnknownVertex { edge: id, vertex: v });
                }
            }
            if heads.entry(e.head).or_default().insert(e.head_index, id).is_some() {
                bad.push(Violation::DuplicatePort {
                    vertex: e.head,
                    side: Side::Head,
                    index: e.head_index,
                });
            }
            if tails.entry(e.tail).or_default().insert(e.tail_index, id).is_some() {
                bad.push(Violation::DuplicatePort {
                    vertex: e.tail,
                    side: Side::Tail,
                    index: e.tail_index,
                });
            }
        }
        let contiguous = |m: Option<&BTreeMap<usize, usize>>| {
            m.is_none_or(|m| m.keys().copied().eq(1..=m.len()))
        };
        let mut vertices: BTreeSet<usize> = deco.keys().copied().collect();
        vertices.insert(OUT);
        vertices.insert(IN);
        for &v in &vertices {
            if !contiguous(heads.get(&v)) {
                bad.push(Violation::GapInIndices { vertex: v, side: Side::Head });
            }
            if !contiguous(tails.get(&v)) {
                bad.push(Violation::GapInIndices { vertex: v, side: Side::Tail });
            }
        }
        for (&v, sym) in &deco {
            let nin = heads.get(&v).map_or(0, |m| m.len());
            let nout = tails.get(&v).map_or(0, |m| m.len());
            if nin != sym.arity || nout != sym.coarity {
                bad.push(Violation::ArityMismatch { vertex: v });
            }
        }
        if !bad.is_empty() {
            return Err(bad);
        }
        let to_vec = |m: BTreeMap<usize, BTreeMap<usize, usize>>| {
            m.into_iter()
                .map(|(v, ports)| (v, ports.into_values().collect()))
                .collect()
        };
        let net = Network {
            deco,
            edges,
            ins: to_vec(heads),
            outs: to_vec(tails),
        };
        if let Some(cycle) = net.find_cycle() {
            return Err(vec![Violation::CycleFound(cycle)]);
        }
        Ok(net)
    }

    /// Builds without the acyclicity check; used for witnesses of failed joins.
    pub(crate) fn unchecked(deco: BTreeMap<usize, Symbol>, edges: BTreeMap<usize, Edge>) -> Network {
        let mut ins: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
        let mut outs: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
        for (&id, e) in &edges {
            ins.entry(e.head).or_default().insert(e.head_index, id);
            outs.entry(e.tail).or_default().insert(e.tail_index, id);
        }
        let to_vec = |m: BTreeMap<usize, BTreeMap<usize, usize>>| {
            m.into_iter()
                .map(|(v, ports)| (v, ports.into_values().collect()))
                .collect()
        };
        Network {
            deco,
            edges,
            ins: to_vec(ins),
            outs: to_vec(outs),
        }
    }

    /// Validation for networks assembled internally, where a failure is a bug.
    pub(crate) fn assemble(deco: BTreeMap<usize, Symbol>, edges: BTreeMap<usize, Edge>) -> Network {
        match Network::validate(deco, edges) {
            Ok(n) => n,
            Err(v) => panic!("internal network construction failed: {v:?}"),
        }
    }

    /// `φ(σ)`: input `j` wired straight to output `σ(j)`.
    pub fn perm(p: &Perm) -> Network {
        let edges = (0..p.len())
            .map(|j| (j, Edge::new(IN, j + 1, OUT, p.at(j) + 1)))
            .collect();
        Network::assemble(BTreeMap::new(), edges)
    }

    pub fn identity(n: usize) -> Network {
        Network::perm(&Perm::same(n))
    }

    /// A single vertex decorated by `sym`, with its ports as legs in order.
    pub fn generator(sym: &Symbol) -> Network {
        let mut edges = BTreeMap::new();
        for g in 1..=sym.arity {
            edges.insert(edges.len(), Edge::new(IN, g, 2, g));
        }
        for s in 1..=sym.coarity {
            edges.insert(edges.len(), Edge::new(2, s, OUT, s));
        }
        Network::assemble(BTreeMap::from([(2, sym.clone())]), edges)
    }

    pub fn deco(&self) -> &BTreeMap<usize, Symbol> {
        &self.deco
    }

    pub fn edges(&self) -> &BTreeMap<usize, Edge> {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[&id]
    }

    pub fn inner_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.deco.keys().copied()
    }

    pub fn inner_count(&self) -> usize {
        self.deco.len()
    }

    pub fn symbol(&self, v: usize) -> &Symbol {
        &self.deco[&v]
    }

    /// Edges whose head is `v`, ordered by head index.
    pub fn in_edges(&self, v: usize) -> &[usize] {
        self.ins.get(&v).map_or(&[], |v| v.as_slice())
    }

    /// Edges whose tail is `v`, ordered by tail index.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        self.outs.get(&v).map_or(&[], |v| v.as_slice())
    }

    /// Number of outputs, `ω(G)`.
    pub fn coarity(&self) -> usize {
        self.in_edges(OUT).len()
    }

    /// Number of inputs, `α(G)`.
    pub fn arity(&self) -> usize {
        self.out_edges(IN).len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.coarity(), self.arity())
    }

    /// Output legs ordered by position.
    pub fn output_legs(&self) -> &[usize] {
        self.in_edges(OUT)
    }

    /// Input legs ordered by position.
    pub fn input_legs(&self) -> &[usize] {
        self.out_edges(IN)
    }

    pub fn max_vertex(&self) -> usize {
        self.deco.keys().next_back().copied().unwrap_or(IN).max(IN)
    }

    pub fn max_edge(&self) -> Option<usize> {
        self.edges.keys().next_back().copied()
    }

    /// Some directed cycle, as a list of edge ids, if the graph has one.
    pub(crate) fn find_cycle(&self) -> Option<Vec<usize>> {
        // colours: 0 unseen, 1 on stack, 2 done
        let mut colour: BTreeMap<usize, u8> = BTreeMap::new();
        for start in self.deco.keys().copied() {
            if colour.get(&start).copied().unwrap_or(0) != 0 {
                continue;
            }
            // stack of (vertex, next out-edge position, edge used to enter)
            let mut stack: Vec<(usize, usize, Option<usize>)> = vec![(start, 0, None)];
            colour.insert(start, 1);
            while let Some(top) = stack.last_mut() {
                let (v, pos) = (top.0, top.1);
                let outs = self.out_edges(v);
                if pos == outs.len() {
                    colour.insert(v, 2);
                    stack.pop();
                    continue;
                }
                top.1 += 1;
                let e = outs[pos];
                let w = self.edges[&e].head;
                if w == OUT {
                    continue;
                }
                match colour.get(&w).copied().unwrap_or(0) {
                    0 => {
                        colour.insert(w, 1);
                        stack.push((w, 0, Some(e)));
                    }
                    1 => {
                        let i = stack.iter().position(|f| f.0 == w).expect("on stack");
                        let mut cycle: Vec<usize> =
                            stack[i + 1..].iter().filter_map(|f| f.2).collect();
                        cycle.push(e);
                        return Some(cycle);
                    }
                    _ => {}
                }
            }
        }
        None
    }

    /// Inner vertices in a topological order (inputs first), taking the
    /// lowest id among the available vertices at each step.
    pub fn topo_order(&self) -> Vec<usize> {
        let mut pending: BTreeMap<usize, usize> = BTreeMap::new();
        let mut ready = BTreeSet::new();
        for v in self.deco.keys().copied() {
            let n = self
                .in_edges(v)
                .iter()
                .filter(|e| self.edges[e].tail != IN)
                .count();
            if n == 0 {
                ready.insert(v);
            } else {
                pending.insert(v, n);
            }
        }
        let mut order = Vec::with_capacity(self.deco.len());
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for e in self.out_edges(v) {
                let w = self.edges[e].head;
                if w == OUT {
                    continue;
                }
                let n = pending.get_mut(&w).expect("pending successor");
                *n -= 1;
                if *n == 0 {
                    pending.remove(&w);
                    ready.insert(w);
                }
            }
        }
        order
    }

    /// Boolean `ω×α` matrix of input-to-output reachability.
    pub fn transference(&self) -> BoolMat {
        let alpha = self.arity();
        let mut reach: BTreeMap<usize, BoolMat> = BTreeMap::new();
        let unit = |j: usize| {
            let mut r = BoolMat::zeros(1, alpha);
            r.set(0, j - 1, true);
            r
        };
        for e in self.input_legs() {
            reach.insert(*e, unit(self.edges[e].tail_index));
        }
        for v in self.topo_order() {
            let mut acc = BoolMat::zeros(1, alpha);
            for e in self.in_edges(v) {
                acc = acc.add(&reach[e]).expect("same width");
            }
            for e in self.out_edges(v) {
                reach.insert(*e, acc.clone());
            }
        }
        let mut tr = BoolMat::zeros(self.coarity(), alpha);
        for (i, e) in self.output_legs().iter().enumerate() {
            tr.paste(i, 0, &reach[e]);
        }
        tr
    }

    /// Renames vertices and edges injectively; boundary vertices stay put.
    pub fn relabel(&self, vmap: impl Fn(usize) -> usize, emap: impl Fn(usize) -> usize) -> Network {
        let v = |x: usize| if x == OUT || x == IN { x } else { vmap(x) };
        let deco = self.deco.iter().map(|(&k, s)| (v(k), s.clone())).collect();
        let edges = self
            .edges
            .iter()
            .map(|(&id, e)| {
                (
                    emap(id),
                    Edge::new(v(e.tail), e.tail_index, v(e.head), e.head_index),
                )
            })
            .collect();
        Network::assemble(deco, edges)
    }

    /// Relabels vertices to `2..` and edges to `0..` in id order.
    pub fn compact(&self) -> Network {
        let vm: BTreeMap<usize, usize> = self.deco.keys().enumerate().map(|(i, &v)| (v, i + 2)).collect();
        let em: BTreeMap<usize, usize> = self.edges.keys().enumerate().map(|(i, &e)| (e, i)).collect();
        self.relabel(|v| vm[&v], |e| em[&e])
    }

    /// `σ·G·τ`: output positions pushed through `σ`, input positions through `τ⁻¹`.
    pub fn act(&self, sigma: &Perm, tau: &Perm) -> Result<Network, crate::core::CoreError> {
        if sigma.len() != self.coarity() {
            return Err(crate::core::CoreError::SizeMismatch(sigma.len(), self.coarity()));
        }
        if tau.len() != self.arity() {
            return Err(crate::core::CoreError::SizeMismatch(tau.len(), self.arity()));
        }
        let tinv = tau.inverse();
        let edges = self
            .edges
            .iter()
            .map(|(&id, e)| {
                let mut e = *e;
                if e.head == OUT {
                    e.head_index = sigma.at(e.head_index - 1) + 1;
                }
                if e.tail == IN {
                    e.tail_index = tinv.at(e.tail_index - 1) + 1;
                }
                (id, e)
            })
            .collect();
        Ok(Network::assemble(self.deco.clone(), edges))
    }

    /// Gluing `self ∘ other`: inputs of `self` meet outputs of `other`.
    pub fn compose(&self, other: &Network) -> Result<Network, crate::core::CoreError> {
        if self.arity() != other.coarity() {
            return Err(crate::core::CoreError::ShapeMismatch(format!(
                "cannot compose arity {} with coarity {}",
                self.arity(),
                other.coarity()
            )));
        }
        let mut b = Builder::new();
        let va = b.import_vertices(self);
        let vb = b.import_vertices(other);
        for e in self.edges.values() {
            if e.tail != IN {
                b.edge(va(e.tail), e.tail_index, va(e.head), e.head_index);
            }
        }
        for e in other.edges.values() {
            if e.head != OUT {
                b.edge(vb(e.tail), e.tail_index, vb(e.head), e.head_index);
            }
        }
        for (top, bottom) in self.input_legs().iter().zip(other.output_legs()) {
            let (t, u) = (self.edges[top], other.edges[bottom]);
            b.edge(vb(u.tail), u.tail_index, va(t.head), t.head_index);
        }
        Ok(b.finish())
    }

    /// Juxtaposition `self ⊗ other`.
    pub fn tensor(&self, other: &Network) -> Network {
        let (k, l) = self.shape();
        let mut b = Builder::new();
        let va = b.import_vertices(self);
        let vb = b.import_vertices(other);
        for e in self.edges.values() {
            b.edge(va(e.tail), e.tail_index, va(e.head), e.head_index);
        }
        for e in other.edges.values() {
            let hi = if e.head == OUT { e.head_index + k } else { e.head_index };
            let ti = if e.tail == IN { e.tail_index + l } else { e.tail_index };
            b.edge(vb(e.tail), ti, vb(e.head), hi);
        }
        b.finish()
    }

    /// Vertex ids reachable from `v` along edges (excluding `v` unless on a cycle).
    pub fn descendants(&self, v: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for e in self.out_edges(x) {
                let w = self.edges[e].head;
                if w != OUT && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Connected components of inner vertices, ignoring the boundary.
    pub fn components(&self) -> Vec<BTreeSet<usize>> {
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for v in self.deco.keys().copied() {
            if !seen.insert(v) {
                continue;
            }
            let mut comp = BTreeSet::from([v]);
            let mut stack = vec![v];
            while let Some(x) = stack.pop() {
                let nbrs = self
                    .in_edges(x)
                    .iter()
                    .map(|e| self.edges[e].tail)
                    .chain(self.out_edges(x).iter().map(|e| self.edges[e].head));
                for w in nbrs {
                    if w != OUT && w != IN && seen.insert(w) {
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// Leg-free components made only of inner vertices: no edge reaches 0 or 1.
    pub fn is_closed_component(&self, comp: &BTreeSet<usize>) -> bool {
        comp.iter().all(|&v| {
            self.in_edges(v).iter().all(|e| self.edges[e].tail != IN)
                && self.out_edges(v).iter().all(|e| self.edges[e].head != OUT)
        })
    }
}

impl fmt::Debug for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Network(")?;
        let verts: Vec<String> = self.deco.iter().map(|(v, s)| format!("{v}:{}", s.name)).collect();
        write!(f, "[{}]", verts.join(" "))?;
        for (id, e) in &self.edges {
            write!(
                f,
                " {id}:{}.{}->{}.{}",
                e.tail, e.tail_index, e.head, e.head_index
            )?;
        }
        write!(f, ")")
    }
}

/// Incremental construction with fresh ids.
#[derive(Default)]
pub(crate) struct Builder {
    deco: BTreeMap<usize, Symbol>,
    edges: BTreeMap<usize, Edge>,
    next_vertex: usize,
    next_edge: usize,
}

impl Builder {
    pub(crate) fn new() -> Builder {
        Builder {
            next_vertex: 2,
            ..Builder::default()
        }
    }

    pub(crate) fn vertex(&mut self, sym: Symbol) -> usize {
        let v = self.next_vertex;
        self.next_vertex += 1;
        self.deco.insert(v, sym);
        v
    }

    pub(crate) fn edge(&mut self, tail: usize, tail_index: usize, head: usize, head_index: usize) -> usize {
        let id = self.next_edge;
        self.next_edge += 1;
        self.edges.insert(id, Edge::new(tail, tail_index, head, head_index));
        id
    }

    /// Copies the inner vertices of `net`, returning the id translation.
    pub(crate) fn import_vertices(&mut self, net: &Network) -> impl Fn(usize) -> usize {
        let map: BTreeMap<usize, usize> = net
            .deco
            .iter()
            .map(|(&v, s)| (v, self.vertex(s.clone())))
            .collect();
        move |v| if v == OUT || v == IN { v } else { map[&v] }
    }

    pub(crate) fn finish(self) -> Network {
        Network::assemble(self.deco, self.edges)
    }
}
