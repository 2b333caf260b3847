use std::collections::BTreeMap;
use std::fmt;

use super::{FreeError, NetClass};
use crate::core::{Perm, Symbol};
use crate::network::{Edge, Network, IN, OUT};

/// One of the wires created by a symmetric join.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum JoinWire {
    /// The `i`th fed-forward wire: an output of the left operand into input `i` of the right.
    Forward(usize),
    /// The `j`th fed-back wire: output `j` of the right operand into an input of the left.
    Back(usize),
}

impl fmt::Display for JoinWire {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JoinWire::Forward(i) => write!(f, "forward {i}"),
            JoinWire::Back(j) => write!(f, "back {j}"),
        }
    }
}

/// The join network before smoothening, with `~` vertices on the joined
/// wires. Vertex `2+i` carries forward wire `i`, vertex `2+r+j` back wire `j`.
/// Left vertex `v` becomes `r+q+2v`, right vertex `v` becomes `r+q+2v+1`; left
/// edge `e` becomes `2e`, right edge `e` becomes `2e+1`.
pub(crate) fn raw_join(left: &Network, r: usize, q: usize, right: &Network) -> Result<Network, FreeError> {
    let (kr, lq) = left.shape();
    let (qm, rn) = right.shape();
    if kr < r || lq < q || qm < q || rn < r {
        return Err(FreeError::Shape(format!(
            "join with r={r}, q={q} of shapes {:?} and {:?}",
            left.shape(),
            right.shape()
        )));
    }
    let (k, l) = (kr - r, lq - q);
    let neutral = Symbol::neutral();
    let mut deco = BTreeMap::new();
    for i in 1..=r + q {
        deco.insert(2 + i, neutral.clone());
    }
    let base = r + q;
    for (&v, s) in left.deco() {
        deco.insert(base + 2 * v, s.clone());
    }
    for (&v, s) in right.deco() {
        deco.insert(base + 2 * v + 1, s.clone());
    }
    let mut edges = BTreeMap::new();
    for (&id, e) in left.edges() {
        let (head, hi) = if e.head == OUT {
            if e.head_index > k {
                (2 + e.head_index - k, 1)
            } else {
                (OUT, e.head_index)
            }
        } else {
            (base + 2 * e.head, e.head_index)
        };
        let (tail, ti) = if e.tail == IN {
            if e.tail_index > l {
                (2 + r + e.tail_index - l, 1)
            } else {
                (IN, e.tail_index)
            }
        } else {
            (base + 2 * e.tail, e.tail_index)
        };
        edges.insert(2 * id, Edge::new(tail, ti, head, hi));
    }
    for (&id, e) in right.edges() {
        let (head, hi) = if e.head == OUT {
            if e.head_index <= q {
                (2 + r + e.head_index, 1)
            } else {
                (OUT, k + e.head_index - q)
            }
        } else {
            (base + 2 * e.head + 1, e.head_index)
        };
        let (tail, ti) = if e.tail == IN {
            if e.tail_index <= r {
                (2 + e.tail_index, 1)
            } else {
                (IN, l + e.tail_index - r)
            }
        } else {
            (base + 2 * e.tail + 1, e.tail_index)
        };
        edges.insert(2 * id + 1, Edge::new(tail, ti, head, hi));
    }
    let raw = Network::unchecked(deco.clone(), edges.clone());
    if let Some(cycle) = raw.find_cycle() {
        let mut wires: Vec<JoinWire> = cycle
            .iter()
            .map(|e| raw.edge(*e).head)
            .filter(|&v| v >= 3 && v <= 2 + r + q)
            .map(|v| if v - 2 <= r { JoinWire::Forward(v - 2) } else { JoinWire::Back(v - 2 - r) })
            .collect();
        // start the witness at its least wire so it is reproducible
        if let Some(pos) = wires.iter().enumerate().min_by_key(|(_, w)| **w).map(|(i, _)| i) {
            wires.rotate_left(pos);
        }
        return Err(FreeError::JoinUndefined(wires));
    }
    Network::validate(deco, edges).map_err(|v| FreeError::Shape(format!("{v:?}")))
}

/// Symmetric join of networks, smoothened.
pub fn join_networks(left: &Network, r: usize, q: usize, right: &Network) -> Result<Network, FreeError> {
    let raw = raw_join(left, r, q, right)?;
    Ok(raw.smoothen(&[]).expect("join vertices are 1-in 1-out").0)
}

impl NetClass {
    /// `self ⋈^r_q other`: the last `r` outputs of `self` feed the first `r`
    /// inputs of `other`, and the first `q` outputs of `other` feed the last
    /// `q` inputs of `self`.
    pub fn sym_join(&self, r: usize, q: usize, other: &NetClass) -> Result<NetClass, FreeError> {
        Ok(NetClass::of(&join_networks(self.rep(), r, q, other.rep())?))
    }

    /// Annexation `self ⋊ other = self ⋈^{α(other)}_{ω(other)} other`.
    pub fn annex(&self, other: &NetClass) -> Result<NetClass, FreeError> {
        self.sym_join(other.arity(), other.coarity(), other)
    }

    /// Free feedback of the last `n` outputs into the last `n` inputs.
    pub fn feedback(&self, n: usize) -> Result<NetClass, FreeError> {
        self.sym_join(n, n, &NetClass::phi(&Perm::same(n)))
    }
}
