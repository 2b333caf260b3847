//! Rewriting in free linear PROPs.
//!
//! Expressions are networks: finite acyclic port-graphs whose inner
//! vertices are decorated by generators. The crate evaluates them in
//! concrete PROPs, rewrites linear combinations of isomorphism classes,
//! and checks confluence by enumerating and resolving ambiguities.

pub mod core;

pub use crate::core::{BoolMat, CoreError, Perm, Signature, Symbol};
pub mod network;
pub mod props;
pub mod freeprop;

pub use crate::network::{Network, TargetProp};
pub mod matching;
pub mod order;
pub mod rewrite;
pub mod ainparse;
pub mod ambiguity;
pub mod cli;
