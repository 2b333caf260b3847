//! Decisive ambiguities of the Hopf algebra rules, all resolved.

use std::path::Path;

use netrw::ainparse::parse_rules;
use netrw::ambiguity::confluence_report;
use netrw::Signature;

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/hopf.rules");
    let f = parse_rules(&std::fs::read_to_string(path).unwrap(), &Signature::new()).unwrap();
    let report = confluence_report(&f.rules, None, 25).unwrap();
    for (amb, status) in report.nontrivial() {
        println!("{amb}: {}", status.label());
    }
    println!("{}", report.summary());
    println!("verdict: {:?}", report.verdict);
}
