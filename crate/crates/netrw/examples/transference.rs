//! Transference matrices and the symmetric join.

use netrw::ainparse::{format_class, parse_term};
use netrw::Signature;

fn main() {
    let sig = Signature::new().with("m", 1, 2).with("D", 2, 1);
    let class = |t: &str| parse_term(t, &sig).unwrap().as_monomial().unwrap().clone();
    let k = class("[a b| D^{ab}_c |c]");
    let h = class("[a| m^a_{bc} |b c]");
    println!("Tr(K) = {}", k.tr().to_compact());
    println!("Tr(H) = {}", h.tr().to_compact());
    // the second output of K feeds the first input of H
    let j = k.sym_join(1, 0, &h).unwrap();
    println!("K join H = {}", format_class(&j));
    println!("Tr = {}", j.tr().to_compact());
    // feeding the output of H back into K as well closes a cycle
    let cyc = k.sym_join(1, 1, &h);
    println!("with a cycle: {}", cyc.map(|c| format_class(&c)).unwrap_or_else(|e| e.to_string()));
}
