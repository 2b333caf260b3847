//! Rules, reductions and normal forms.

mod rule;

pub use rule::{make_rule, Rule, RuleError, TypeSpec};
mod reduce;

pub use reduce::{
    ambient, is_irreducible, joinable, normalize, reduce_once, Budget, Joinable, RewriteError, Rewriter, Step,
};
