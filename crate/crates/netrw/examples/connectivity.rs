//! Connectivity evaluation: which legs are joined, and how many cycles.

use netrw::ainparse::parse_term;
use netrw::props::{evaluate, TargetKind};
use netrw::Signature;

fn main() {
    let sig = Signature::new().with("m", 1, 2).with("D", 2, 1).with("u", 0, 2).with("n", 2, 0);
    for t in ["[a b| D^{ab}_c m^c_{de} |d e]", "[a| m^a_{bc} D^{bc}_d |d]", "n^{ab} u_{ab}", "[a b| |b a]"] {
        let g = parse_term(t, &sig).unwrap();
        let v = evaluate(TargetKind::Connectivity, g.as_monomial().unwrap().rep(), None).unwrap();
        println!("{t}: {v}");
    }
}
