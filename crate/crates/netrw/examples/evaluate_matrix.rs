//! Evaluates a three-vertex network as a natural-number matrix.

use netrw::ainparse::parse_term;
use netrw::props::{evaluate, Assignment, TargetKind, Value};
use netrw::Signature;

fn main() {
    let sig = Signature::new().with("A", 2, 2).with("B", 2, 2).with("C", 2, 2);
    let x = parse_term("[g h i| A^{ed}_{ab} B^{gf}_{dc} C^{hi}_{ef} |a b c]", &sig).unwrap();
    let mut values = Assignment::new();
    values.insert_nat("A", &[&[1, 2], &[3, 4]], 2);
    values.insert_nat("B", &[&[5, 6], &[7, 8]], 2);
    values.insert_nat("C", &[&[9, 10], &[11, 12]], 2);
    let g = x.as_monomial().unwrap().rep();
    if let Value::Nat(m) = evaluate(TargetKind::NatMatrix, g, Some(&values)).unwrap() {
        for row in m.to_rows() {
            println!("{}", row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
        }
    }
}
