//! Comparing networks under a biaffine order and checking strictness.

use std::path::Path;

use netrw::ainparse::parse_term;
use netrw::order::OrderSpec;
use netrw::Signature;

fn main() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let order = OrderSpec::parse(&std::fs::read_to_string(data.join("circle.order")).unwrap(), &data).unwrap();
    let sig = Signature::new().with("x", 1, 1).with("y", 1, 1);
    let report = order.check_strictness(&sig);
    println!("strict: {}", report.ok);
    let class = |t: &str| parse_term(t, &sig).unwrap().as_monomial().unwrap().clone();
    for (a, b) in [("y^a_b y^b_c", "x^a_b x^b_c"), ("y^a_b x^b_c x^c_d", "x^a_b x^b_c y^c_d"), ("x^a_b", "y^a_b")] {
        println!("{a}  vs  {b}: {}", order.compare(&class(a), &class(b)).unwrap());
    }
}
