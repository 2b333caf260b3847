//! A rule whose applicability depends on the ambient transference type.

use std::path::Path;

use netrw::ainparse::{format_term, parse_rules, parse_term};
use netrw::rewrite::{Budget, Joinable, Rewriter};
use netrw::{BoolMat, Signature};

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/zigzag.rules");
    let f = parse_rules(&std::fs::read_to_string(path).unwrap(), &Signature::new()).unwrap();
    let rw = Rewriter::new(&f.rules);
    let a = parse_term("[c| u_{ab} n^{bc} |a]", &f.signature).unwrap();
    let b = parse_term("[c| n^{cb} u_{ba} |a]", &f.signature).unwrap();
    for (name, q) in [("0", BoolMat::zeros(1, 1)), ("J", BoolMat::ones(1, 1))] {
        let nf = rw.normalize(&a, &q, Budget::MaxSteps(10)).unwrap();
        let joined = matches!(rw.joinable(&a, &b, &q, Budget::MaxSteps(10)).unwrap(), Joinable::Yes(_));
        println!("type {name}: normal form {}, snakes joinable: {joined}", format_term(&nf));
    }
}
