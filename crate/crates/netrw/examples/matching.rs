//! Embeddings of a pattern and the contexts they leave behind.

use netrw::ainparse::{format_class, parse_term};
use netrw::freeprop::NetClass;
use netrw::matching::{contexts, find_embeddings};
use netrw::Signature;

fn main() {
    let sig = Signature::new().with("m", 1, 2);
    let class = |t: &str| parse_term(t, &sig).unwrap().as_monomial().unwrap().clone();
    let g = class("m^a_{bc} m^c_{de} m^e_{fg}");
    let h = class("m^a_{bc} m^c_{de}");
    println!("{} embeddings", find_embeddings(h.rep(), g.rep()).len());
    for k in contexts(h.rep(), g.rep()) {
        let back: NetClass = k.annex(&h).unwrap();
        println!("context {}  (annexes back: {})", format_class(&k), back == g);
    }
}
