//! The free PROP on a signature and its linear extension.

mod class;
mod join;
mod lincomb;

pub use class::{FreeProp, NetClass};
pub use join::{join_networks, JoinWire};
pub use lincomb::LinComb;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FreeError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("symmetric join undefined: joined wires form a cycle through {}", fmt_wires(.0))]
    JoinUndefined(Vec<JoinWire>),
}

fn fmt_wires(w: &[JoinWire]) -> String {
    w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}
