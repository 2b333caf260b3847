//! Completes the noncommutative circle relation into a confluent system.

use std::path::Path;

use netrw::ainparse::{format_class, format_term, parse_rules};
use netrw::ambiguity::{complete, Limits};
use netrw::order::OrderSpec;
use netrw::Signature;

fn main() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let f = parse_rules(&std::fs::read_to_string(data.join("circle.rules")).unwrap(), &Signature::new()).unwrap();
    let order = OrderSpec::parse(&std::fs::read_to_string(data.join("circle.order")).unwrap(), &data).unwrap();
    let (rules, report) = complete(&f.rules, &order, Limits::default()).unwrap();
    for r in &rules {
        println!("{}: {} -> {}", r.id, format_class(&r.lhs), format_term(&r.rhs));
    }
    println!("{}", report.summary());
}
