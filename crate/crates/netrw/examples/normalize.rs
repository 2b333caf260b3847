//! Normal forms under associativity, certified terminating by a biaffine order.

use std::path::Path;

use netrw::ainparse::{format_term, parse_rules, parse_term};
use netrw::order::OrderSpec;
use netrw::rewrite::{ambient, Budget, Rewriter};
use netrw::Signature;

fn main() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let f = parse_rules(&std::fs::read_to_string(data.join("assoc.rules")).unwrap(), &Signature::new()).unwrap();
    let order = OrderSpec::parse(&std::fs::read_to_string(data.join("assoc.order")).unwrap(), &data).unwrap();
    for r in &f.rules {
        println!("{}: compatible = {}", r.id, order.rule_compatible(r).unwrap().ok);
    }
    let x = parse_term("m^a_{bc} m^c_{de} m^e_{fg} m^g_{hi}", &f.signature).unwrap();
    let rw = Rewriter::new(&f.rules);
    let (nf, trace) = rw.normalize_traced(&x, &ambient(&x), Budget::OrderBacked).unwrap();
    for step in &trace {
        println!("{step}");
    }
    println!("normal form: {}", format_term(&nf));
}
