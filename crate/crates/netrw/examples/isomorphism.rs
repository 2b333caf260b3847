//! Equality of terms is isomorphism of the underlying networks.

use netrw::ainparse::parse_term;
use netrw::Signature;

fn main() {
    let sig = Signature::new().with("m", 1, 2);
    let pairs = [
        ("m^a_{bc} m^c_{de}", "[x| m^y_{de} m^x_{by} |b d e]"),
        ("m^a_{bc} m^c_{de}", "[a| m^a_{ce} m^c_{bd} |b d e]"),
    ];
    for (a, b) in pairs {
        let same = parse_term(a, &sig).unwrap() == parse_term(b, &sig).unwrap();
        println!("{a}  vs  {b}: {}", if same { "isomorphic" } else { "different" });
    }
}
