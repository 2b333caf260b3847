//! Locating a pattern network inside a subject network.
//!
//! An [`Embedding`] maps pattern vertices injectively onto equally
//! decorated subject vertices and pattern edges onto subject edges. Several
//! pattern legs may land on one subject edge; a [`StrongEmbedding`] also
//! fixes their order along it, which is what determines the context
//! network returned by [`complement`].

use std::collections::{BTreeMap, BTreeSet};

use crate::core::{BoolMat, CoreError};
use crate::freeprop::NetClass;
use crate::network::{Edge, Network, IN, OUT};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Embedding {
    /// Pattern inner vertex to subject inner vertex.
    pub vertex_map: BTreeMap<usize, usize>,
    /// Pattern edge to subject edge.
    pub edge_map: BTreeMap<usize, usize>,
}

/// An embedding with every pattern edge given a distinct segment label
/// `subject edge + modulus · rank`, the rank growing from tail to head.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrongEmbedding {
    pub base: Embedding,
    pub modulus: usize,
    pub segments: BTreeMap<usize, usize>,
}

fn is_output_leg(e: &Edge) -> bool {
    e.head == OUT
}

fn is_input_leg(e: &Edge) -> bool {
    e.tail == IN
}

/// How a non-anchor pattern vertex is reached from an earlier one.
#[derive(Clone, Copy)]
enum Link {
    Anchor,
    /// Along out-port `port` of the earlier vertex.
    Down { from: usize, port: usize },
    /// Along in-port `port` of the earlier vertex.
    Up { from: usize, port: usize },
}

/// Visit order: each component from its least vertex, breadth first.
fn search_plan(h: &Network) -> Vec<(usize, Link)> {
    let mut plan = Vec::new();
    let mut seen = BTreeSet::new();
    for start in h.inner_vertices() {
        if !seen.insert(start) {
            continue;
        }
        plan.push((start, Link::Anchor));
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for (p, &e) in h.out_edges(v).iter().enumerate() {
                let w = h.edge(e).head;
                if w != OUT && seen.insert(w) {
                    plan.push((w, Link::Down { from: v, port: p }));
                    queue.push_back(w);
                }
            }
            for (p, &e) in h.in_edges(v).iter().enumerate() {
                let w = h.edge(e).tail;
                if w != IN && seen.insert(w) {
                    plan.push((w, Link::Up { from: v, port: p }));
                    queue.push_back(w);
                }
            }
        }
    }
    plan
}

struct Search<'a> {
    h: &'a Network,
    g: &'a Network,
    plan: Vec<(usize, Link)>,
    chi: BTreeMap<usize, usize>,
    used: BTreeSet<usize>,
    found: Vec<BTreeMap<usize, usize>>,
}

impl Search<'_> {
    fn consistent(&self, v: usize, w: usize) -> bool {
        if self.used.contains(&w) || self.g.symbol(w) != self.h.symbol(v) {
            return false;
        }
        // every edge to an already placed vertex must land on the matching subject edge
        for (p, &e) in self.h.out_edges(v).iter().enumerate() {
            let he = self.h.edge(e);
            let target = if he.head == v { Some(w) } else { self.chi.get(&he.head).copied() };
            if let Some(t) = target {
                let ge = self.g.edge(self.g.out_edges(w)[p]);
                if ge.head != t || ge.head_index != he.head_index {
                    return false;
                }
            }
        }
        for (p, &e) in self.h.in_edges(v).iter().enumerate() {
            let he = self.h.edge(e);
            if let Some(&t) = self.chi.get(&he.tail) {
                let ge = self.g.edge(self.g.in_edges(w)[p]);
                if ge.tail != t || ge.tail_index != he.tail_index {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, at: usize) {
        if at == self.plan.len() {
            self.found.push(self.chi.clone());
            return;
        }
        let (v, link) = self.plan[at];
        let candidates: Vec<usize> = match link {
            Link::Anchor => self
                .g
                .deco()
                .iter()
                .filter(|(_, s)| *s == self.h.symbol(v))
                .map(|(&w, _)| w)
                .collect(),
            Link::Down { from, port } => {
                let ge = self.g.edge(self.g.out_edges(self.chi[&from])[port]);
                vec![ge.head]
            }
            Link::Up { from, port } => {
                let ge = self.g.edge(self.g.in_edges(self.chi[&from])[port]);
                vec![ge.tail]
            }
        };
        for w in candidates {
            if w == OUT || w == IN || !self.consistent(v, w) {
                continue;
            }
            self.chi.insert(v, w);
            self.used.insert(w);
            self.run(at + 1);
            self.chi.remove(&v);
            self.used.remove(&w);
        }
    }
}

/// Subject edge forced for a non-stray pattern edge under `chi`.
fn forced_edge(g: &Network, chi: &BTreeMap<usize, usize>, e: &Edge) -> usize {
    if e.tail != IN {
        g.out_edges(chi[&e.tail])[e.tail_index - 1]
    } else {
        g.in_edges(chi[&e.head])[e.head_index - 1]
    }
}

/// All embeddings of `h` into `g`, sorted.
pub fn find_embeddings(h: &Network, g: &Network) -> Vec<Embedding> {
    let mut search = Search {
        h,
        g,
        plan: search_plan(h),
        chi: BTreeMap::new(),
        used: BTreeSet::new(),
        found: Vec::new(),
    };
    search.run(0);
    let strays: Vec<usize> = h
        .edges()
        .iter()
        .filter(|(_, e)| e.is_stray())
        .map(|(&id, _)| id)
        .collect();
    let mut out = Vec::new();
    for chi in search.found {
        let mut psi = BTreeMap::new();
        let mut inner_images = BTreeSet::new();
        for (&id, e) in h.edges() {
            if e.is_stray() {
                continue;
            }
            let img = forced_edge(g, &chi, e);
            psi.insert(id, img);
            if !is_output_leg(e) && !is_input_leg(e) {
                inner_images.insert(img);
            }
        }
        // stray pattern edges may sit on any subject edge not covered by an inner edge
        let free: Vec<usize> = g
            .edges()
            .keys()
            .copied()
            .filter(|x| !inner_images.contains(x))
            .collect();
        if !strays.is_empty() && free.is_empty() {
            continue;
        }
        let mut idx = vec![0usize; strays.len()];
        loop {
            let mut edge_map = psi.clone();
            for (k, &s) in strays.iter().enumerate() {
                edge_map.insert(s, free[idx[k]]);
            }
            out.push(Embedding {
                vertex_map: chi.clone(),
                edge_map,
            });
            // odometer over stray placements
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < free.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    out.sort();
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Every ordering of the pattern segments along shared subject edges,
/// one per distinct complement.
pub fn strong_embeddings(h: &Network, e: &Embedding, g: &Network) -> Vec<StrongEmbedding> {
    let modulus = g.max_edge().map_or(1, |x| x + 1);
    let mut on_edge: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (&he, &ge) in &e.edge_map {
        on_edge.entry(ge).or_default().push(he);
    }
    // per subject edge: the tail-anchored segment first, the head-anchored last
    type Choice = (Option<usize>, Vec<Vec<usize>>, Option<usize>);
    let mut choices: Vec<Choice> = Vec::new();
    let mut keys = Vec::new();
    for (&ge, segs) in &on_edge {
        let first = segs.iter().copied().find(|&s| h.edge(s).tail != IN);
        let last = segs.iter().copied().find(|&s| h.edge(s).head != OUT);
        let strays: Vec<usize> = segs.iter().copied().filter(|&s| h.edge(s).is_stray()).collect();
        choices.push((first, permutations(&strays), last));
        keys.push(ge);
    }
    let mut idx = vec![0usize; choices.len()];
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    loop {
        let mut segments = BTreeMap::new();
        for (k, (first, perms, last)) in choices.iter().enumerate() {
            let order = first.iter().chain(&perms[idx[k]]).chain(last.iter());
            for (rank, &s) in order.enumerate() {
                segments.insert(s, keys[k] + modulus * rank);
            }
        }
        let se = StrongEmbedding {
            base: e.clone(),
            modulus,
            segments,
        };
        if seen.insert(complement(g, h, &se)) {
            out.push(se);
        }
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < choices[k].1.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            break;
        }
    }
    out
}

/// The context network `K` with `K ⋊ h` isomorphic to `g`.
pub fn complement_network(g: &Network, h: &Network, se: &StrongEmbedding) -> Network {
    let m = se.modulus;
    let image: BTreeSet<usize> = se.base.vertex_map.values().copied().collect();
    let outside = |v: usize| !image.contains(&v);
    let owner: BTreeMap<usize, usize> = se.segments.iter().map(|(&he, &lab)| (lab, he)).collect();
    // segment labels of pattern legs, grouped by subject edge
    let mut legs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (&he, &lab) in &se.segments {
        let e = h.edge(he);
        if is_output_leg(e) || is_input_leg(e) {
            legs.entry(lab % m).or_default().push(lab);
        }
    }
    for v in legs.values_mut() {
        v.sort_unstable();
    }
    let (wg, ag) = g.shape();
    // where a context segment starts when it follows pattern segment `lab`
    let after = |lab: usize| (IN, ag + h.edge(owner[&lab]).head_index);
    // where a context segment ends when pattern segment `lab` follows it
    let before = |lab: usize| (OUT, wg + h.edge(owner[&lab]).tail_index);
    let mut edges = BTreeMap::new();
    for (&ge, e) in g.edges() {
        match legs.get(&ge) {
            None => {
                if outside(e.head) && outside(e.tail) {
                    edges.insert(ge, *e);
                }
            }
            Some(s) => {
                let (min, max) = (s[0], s[s.len() - 1]);
                if outside(e.head) {
                    let (t, ti) = after(max);
                    edges.insert(m + max, Edge::new(t, ti, e.head, e.head_index));
                }
                if outside(e.tail) {
                    let (hd, hi) = before(min);
                    edges.insert(min, Edge::new(e.tail, e.tail_index, hd, hi));
                }
                for w in s.windows(2) {
                    let (t, ti) = after(w[0]);
                    let (hd, hi) = before(w[1]);
                    edges.insert(w[1], Edge::new(t, ti, hd, hi));
                }
            }
        }
    }
    let deco = g
        .deco()
        .iter()
        .filter(|(v, _)| outside(**v))
        .map(|(&v, s)| (v, s.clone()))
        .collect();
    Network::validate(deco, edges).expect("complement of a strong embedding is a network")
}

/// Class of the context network; see [`complement_network`].
pub fn complement(g: &Network, h: &Network, se: &StrongEmbedding) -> NetClass {
    NetClass::of(&complement_network(g, h, se))
}

/// Distinct contexts `K` with `K ⋊ h ≅ g`, sorted by canonical code.
pub fn contexts(h: &Network, g: &Network) -> Vec<NetClass> {
    let mut out = BTreeSet::new();
    for e in find_embeddings(h, g) {
        for se in strong_embeddings(h, &e, g) {
            out.insert(complement(g, h, &se));
        }
    }
    out.into_iter().collect()
}

/// Whether a rule of type `q_rule` may act through the context `k` and
/// leave the result within `q_ambient`.
///
/// With `Tr(k)` split as `[[p11, p12], [p21, p22]]` this asks that
/// `p22·q_rule` be nilpotent and `p11 + p12·q_rule·(p22·q_rule)*·p21 ≤ q_ambient`.
pub fn context_type_ok(k: &BoolMat, q_rule: &BoolMat, q_ambient: &BoolMat) -> Result<bool, CoreError> {
    let (wh, ah) = q_rule.shape();
    let (rows, cols) = k.shape();
    if rows < ah || cols < wh || q_ambient.shape() != (rows - ah, cols - wh) {
        return Err(CoreError::ShapeMismatch(format!(
            "context transference {rows}x{cols}, rule type {wh}x{ah}, ambient type {}x{}",
            q_ambient.rows(),
            q_ambient.cols()
        )));
    }
    let (wg, ag) = (rows - ah, cols - wh);
    let p11 = k.block(0, wg, 0, ag);
    let p12 = k.block(0, wg, ag, cols);
    let p21 = k.block(wg, rows, 0, ag);
    let p22 = k.block(wg, rows, ag, cols);
    let loop_ = p22.mul(q_rule)?;
    if !loop_.is_nilpotent()? {
        return Ok(false);
    }
    let through = p12.mul(q_rule)?.mul(&loop_.star()?)?.mul(&p21)?;
    Ok(p11.add(&through)?.le(q_ambient))
}
