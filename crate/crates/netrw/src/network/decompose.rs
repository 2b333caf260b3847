use std::collections::{BTreeMap, BTreeSet};

use super::{Edge, Network, IN, OUT};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DecomposeError {
    #[error("not a cut: edge {0} runs from the upper part into the lower part")]
    NotACut(usize),
    #[error("not a split: edge {0} violates the split conditions")]
    NotASplit(usize),
    #[error("vertex {0} is not covered exactly once by the partition")]
    BadPartition(usize),
    #[error("the ordering must list each cut edge exactly once")]
    BadOrdering,
}

impl Network {
    fn check_partition(&self, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> Result<(), DecomposeError> {
        for v in a.iter().chain(b) {
            if !self.deco.contains_key(v) {
                return Err(DecomposeError::BadPartition(*v));
            }
        }
        for v in self.deco.keys() {
            if a.contains(v) == b.contains(v) {
                return Err(DecomposeError::BadPartition(*v));
            }
        }
        Ok(())
    }

    /// Edges crossing from `lower` (or the input) into `upper` (or the output),
    /// given that `upper` holds the vertices above the cut.
    pub fn cut_edges(&self, upper: &BTreeSet<usize>) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|(_, e)| {
                (e.head == OUT || upper.contains(&e.head)) && (e.tail == IN || !upper.contains(&e.tail))
            })
            .map(|(&id, _)| id)
            .collect()
    }

    /// Decomposition `(G', G'')` with `G = G' ∘ G''` induced by the ordered cut
    /// with `upper` above and `lower` below; `order` lists the cut edges by
    /// their new boundary position.
    pub fn decompose_cut(
        &self,
        upper: &BTreeSet<usize>,
        lower: &BTreeSet<usize>,
        order: &[usize],
    ) -> Result<(Network, Network), DecomposeError> {
        self.check_partition(upper, lower)?;
        for (&id, e) in &self.edges {
            if lower.contains(&e.head) && upper.contains(&e.tail) {
                return Err(DecomposeError::NotACut(id));
            }
        }
        let cut: BTreeSet<usize> = self.cut_edges(upper).into_iter().collect();
        let pos: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &e)| (e, i + 1)).collect();
        if pos.len() != order.len() || pos.keys().copied().collect::<BTreeSet<_>>() != cut {
            return Err(DecomposeError::BadOrdering);
        }
        let mut top = BTreeMap::new();
        let mut bottom = BTreeMap::new();
        for (&id, e) in &self.edges {
            if e.head == OUT || upper.contains(&e.head) {
                let mut e2 = *e;
                if cut.contains(&id) {
                    e2.tail = IN;
                    e2.tail_index = pos[&id];
                }
                top.insert(id, e2);
            }
            if e.tail == IN || lower.contains(&e.tail) {
                let mut e2 = *e;
                if cut.contains(&id) {
                    e2.head = OUT;
                    e2.head_index = pos[&id];
                }
                bottom.insert(id, e2);
            }
        }
        let restrict = |part: &BTreeSet<usize>| {
            self.deco
                .iter()
                .filter(|(v, _)| part.contains(v))
                .map(|(&v, s)| (v, s.clone()))
                .collect()
        };
        Ok((
            Network::assemble(restrict(upper), top),
            Network::assemble(restrict(lower), bottom),
        ))
    }

    /// Decomposition `(G', G'')` with `G = G' ⊗ G''` induced by a split.
    pub fn decompose_split(
        &self,
        left_edges: &BTreeSet<usize>,
        right_edges: &BTreeSet<usize>,
        left: &BTreeSet<usize>,
        right: &BTreeSet<usize>,
    ) -> Result<(Network, Network), DecomposeError> {
        self.check_partition(left, right)?;
        for id in self.edges.keys() {
            if left_edges.contains(id) == right_edges.contains(id) {
                return Err(DecomposeError::NotASplit(*id));
            }
        }
        let side_ok = |e: &Edge, part: &BTreeSet<usize>| {
            (e.head == OUT || part.contains(&e.head)) && (e.tail == IN || part.contains(&e.tail))
        };
        let mut k = 0;
        let mut l = 0;
        let mut max_left_out = 0;
        let mut max_left_in = 0;
        for id in left_edges {
            let e = self.edges.get(id).ok_or(DecomposeError::NotASplit(*id))?;
            if !side_ok(e, left) {
                return Err(DecomposeError::NotASplit(*id));
            }
            if e.head == OUT {
                k += 1;
                max_left_out = max_left_out.max(e.head_index);
            }
            if e.tail == IN {
                l += 1;
                max_left_in = max_left_in.max(e.tail_index);
            }
        }
        for id in right_edges {
            let e = self.edges.get(id).ok_or(DecomposeError::NotASplit(*id))?;
            if !side_ok(e, right)
                || (e.head == OUT && e.head_index <= max_left_out)
                || (e.tail == IN && e.tail_index <= max_left_in)
            {
                return Err(DecomposeError::NotASplit(*id));
            }
        }
        let pick = |part: &BTreeSet<usize>| -> BTreeMap<usize, _> {
            self.deco
                .iter()
                .filter(|(v, _)| part.contains(v))
                .map(|(&v, s)| (v, s.clone()))
                .collect()
        };
        let lnet: BTreeMap<usize, Edge> = left_edges.iter().map(|id| (*id, self.edges[id])).collect();
        let rnet: BTreeMap<usize, Edge> = right_edges
            .iter()
            .map(|id| {
                let mut e = self.edges[id];
                if e.head == OUT {
                    e.head_index -= k;
                }
                if e.tail == IN {
                    e.tail_index -= l;
                }
                (*id, e)
            })
            .collect();
        Ok((Network::assemble(pick(left), lnet), Network::assemble(pick(right), rnet)))
    }
}
