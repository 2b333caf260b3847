use std::fmt;

use super::{Network, OUT};
use crate::core::{Perm, Symbol};

/// A PROP that networks can be evaluated in.
pub trait TargetProp {
    type Elem: Clone + PartialEq + fmt::Debug;

    /// `(coarity, arity)` of an element.
    fn shape(&self, a: &Self::Elem) -> (usize, usize);
    /// `a ∘ b`; callers guarantee `arity(a) = coarity(b)`.
    fn compose(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn tensor(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn phi(&self, p: &Perm) -> Self::Elem;

    fn identity(&self, n: usize) -> Self::Elem {
        self.phi(&Perm::same(n))
    }

    fn try_compose(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, EvalError> {
        let (_, n) = self.shape(a);
        let (m, _) = self.shape(b);
        if n != m {
            return Err(EvalError::Shape(format!("compose arity {n} with coarity {m}")));
        }
        Ok(self.compose(a, b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("no value assigned to `{0}`")]
    Unassigned(String),
    #[error("value for `{name}` has shape {got:?}, symbol wants {want:?}")]
    ArityMismatch {
        name: String,
        got: (usize, usize),
        want: (usize, usize),
    },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("evaluation order is not topological")]
    BadOrder,
}

impl Network {
    /// Value of the network in `target`, generators interpreted by `assign`.
    ///
    /// Inner vertices are consumed one at a time in topological order; each
    /// step brings the vertex's inputs to the front of the current wire
    /// bundle and applies `generator ⊗ id`.
    pub fn evaluate<T, F>(&self, target: &T, assign: F) -> Result<T::Elem, EvalError>
    where
        T: TargetProp,
        F: Fn(&Symbol) -> Option<T::Elem>,
    {
        self.evaluate_in_order(target, assign, &self.topo_order())
    }

    /// As [`Network::evaluate`] with an explicit vertex order.
    pub fn evaluate_in_order<T, F>(&self, target: &T, assign: F, order: &[usize]) -> Result<T::Elem, EvalError>
    where
        T: TargetProp,
        F: Fn(&Symbol) -> Option<T::Elem>,
    {
        if order.len() != self.inner_count() {
            return Err(EvalError::BadOrder);
        }
        // wire bundle: edge ids from left to right
        let mut wires: Vec<usize> = self.input_legs().to_vec();
        let mut value = target.identity(wires.len());
        for &v in order {
            let sym = self.deco.get(&v).ok_or(EvalError::BadOrder)?;
            let gen = assign(sym).ok_or_else(|| EvalError::Unassigned(sym.name.to_string()))?;
            let got = target.shape(&gen);
            if got != (sym.coarity, sym.arity) {
                return Err(EvalError::ArityMismatch {
                    name: sym.name.to_string(),
                    got,
                    want: (sym.coarity, sym.arity),
                });
            }
            let ins = self.in_edges(v);
            let mut front = Vec::with_capacity(ins.len());
            for e in ins {
                let pos = wires.iter().position(|w| w == e).ok_or(EvalError::BadOrder)?;
                front.push(pos);
            }
            // π sends the wire at position front[i] to position i
            let rest: Vec<usize> = (0..wires.len()).filter(|p| !front.contains(p)).collect();
            let mut img = vec![0; wires.len()];
            for (i, &p) in front.iter().chain(&rest).enumerate() {
                img[p] = i;
            }
            let pi = Perm::from_zero_based(img);
            let slice = target.compose(
                &target.tensor(&gen, &target.identity(rest.len())),
                &target.phi(&pi),
            );
            value = target.compose(&slice, &value);
            let mut next: Vec<usize> = self.out_edges(v).to_vec();
            next.extend(rest.iter().map(|&p| wires[p]));
            wires = next;
        }
        // finally route the surviving wires to their output positions
        let mut img = vec![0; wires.len()];
        for (p, e) in wires.iter().enumerate() {
            let edge = self.edge(*e);
            debug_assert_eq!(edge.head, OUT);
            img[p] = edge.head_index - 1;
        }
        Ok(target.compose(&target.phi(&Perm::from_zero_based(img)), &value))
    }
}
