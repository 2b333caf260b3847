use std::collections::{BTreeMap, BTreeSet};

use super::{Edge, Network};
use crate::core::Symbol;

/// A subdivision map from `source` onto `target`.
///
/// `vertex_map` sends every target vertex to the source vertex it came from;
/// `edge_map` sends every source edge to the target edge it is a segment of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homeomorphism {
    pub vertex_map: BTreeMap<usize, usize>,
    pub edge_map: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SmoothError {
    #[error("neutral vertex {0} does not have exactly one input and one output")]
    BadNeutral(usize),
}

impl Homeomorphism {
    /// Checks the defining conditions against the two networks; returns a
    /// description of the first failure.
    pub fn check(&self, source: &Network, target: &Network) -> Result<(), String> {
        let mut image = BTreeSet::new();
        for v in [super::OUT, super::IN] {
            if self.vertex_map.get(&v) != Some(&v) {
                return Err(format!("boundary vertex {v} not fixed"));
            }
        }
        for (&t, &s) in &self.vertex_map {
            if !image.insert(s) {
                return Err(format!("vertex map not injective at {s}"));
            }
            if t > super::IN && source.deco.get(&s) != target.deco.get(&t) {
                return Err(format!("decoration differs at {t}"));
            }
        }
        for t in target.deco.keys() {
            if !self.vertex_map.contains_key(t) {
                return Err(format!("target vertex {t} unmapped"));
            }
        }
        let back: BTreeMap<usize, usize> = self.vertex_map.iter().map(|(&t, &s)| (s, t)).collect();
        let mut hit = BTreeSet::new();
        for (&e, edge) in &source.edges {
            let Some(&te) = self.edge_map.get(&e) else {
                return Err(format!("source edge {e} unmapped"));
            };
            let Some(tedge) = target.edges.get(&te) else {
                return Err(format!("edge {e} maps outside the target"));
            };
            hit.insert(te);
            if let Some(&v) = back.get(&edge.head) {
                if tedge.head != v || tedge.head_index != edge.head_index {
                    return Err(format!("head of edge {e} not preserved"));
                }
            }
            if let Some(&v) = back.get(&edge.tail) {
                if tedge.tail != v || tedge.tail_index != edge.tail_index {
                    return Err(format!("tail of edge {e} not preserved"));
                }
            }
        }
        if hit.len() != target.edges.len() {
            return Err("edge map not surjective".into());
        }
        for &v in source.deco.keys() {
            if back.contains_key(&v) {
                continue;
            }
            let (ins, outs) = (source.in_edges(v), source.out_edges(v));
            if ins.len() != 1 || outs.len() != 1 {
                return Err(format!("smoothed vertex {v} is not 1-in 1-out"));
            }
            if self.edge_map[&ins[0]] != self.edge_map[&outs[0]] {
                return Err(format!("segments through {v} map to different edges"));
            }
        }
        Ok(())
    }
}

impl Network {
    /// Removes every vertex whose decoration satisfies `neutral`, splicing
    /// its input and output edge into one. The spliced edge keeps the id
    /// of its headmost segment.
    pub fn smoothen_by(&self, neutral: impl Fn(&Symbol) -> bool) -> Result<(Network, Homeomorphism), SmoothError> {
        let gone: BTreeSet<usize> = self
            .deco
            .iter()
            .filter(|(_, s)| neutral(s))
            .map(|(&v, _)| v)
            .collect();
        for &v in &gone {
            if self.in_edges(v).len() != 1 || self.out_edges(v).len() != 1 {
                return Err(SmoothError::BadNeutral(v));
            }
        }
        let mut edges = BTreeMap::new();
        let mut edge_map = BTreeMap::new();
        for (&id, e) in &self.edges {
            if gone.contains(&e.head) {
                continue;
            }
            let mut seg = *e;
            edge_map.insert(id, id);
            while gone.contains(&seg.tail) {
                let below = self.in_edges(seg.tail)[0];
                edge_map.insert(below, id);
                seg = self.edges[&below];
            }
            edges.insert(id, Edge::new(seg.tail, seg.tail_index, e.head, e.head_index));
        }
        let deco: BTreeMap<usize, Symbol> = self
            .deco
            .iter()
            .filter(|(v, _)| !gone.contains(v))
            .map(|(&v, s)| (v, s.clone()))
            .collect();
        let mut vertex_map: BTreeMap<usize, usize> = deco.keys().map(|&v| (v, v)).collect();
        vertex_map.insert(super::OUT, super::OUT);
        vertex_map.insert(super::IN, super::IN);
        let net = Network::assemble(deco, edges);
        Ok((net, Homeomorphism { vertex_map, edge_map }))
    }

    /// Smoothens away the reserved neutral symbol and any symbols in `extra`.
    pub fn smoothen(&self, extra: &[Symbol]) -> Result<(Network, Homeomorphism), SmoothError> {
        self.smoothen_by(|s| s.is_neutral() || extra.contains(s))
    }
}
