use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::freeprop::{LinComb, NetClass};
use crate::network::{IN, OUT};

/// `a`..`z`, then `a1`..`z1`, `a2`, ...
fn label_name(i: usize) -> String {
    let letter = (b'a' + (i % 26) as u8) as char;
    match i / 26 {
        0 => letter.to_string(),
        k => format!("{letter}{k}"),
    }
}

fn script(mark: char, labels: &[&str]) -> String {
    match labels {
        [] => String::new(),
        [one] => format!("{mark}{one}"),
        many => format!("{mark}{{{}}}", many.concat()),
    }
}

/// Closed-form body of one class: `[outputs|factors|inputs]`.
pub fn format_class(c: &NetClass) -> String {
    let net = c.rep();
    let mut names: BTreeMap<usize, String> = BTreeMap::new();
    let ordered = net
        .output_legs()
        .iter()
        .chain(net.input_legs())
        .chain(net.edges().keys());
    for &e in ordered {
        if !names.contains_key(&e) {
            names.insert(e, label_name(names.len()));
        }
    }
    let list = |edges: &[usize]| {
        edges
            .iter()
            .map(|e| names[e].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let factors: Vec<String> = net
        .inner_vertices()
        .map(|v| {
            let sup: Vec<&str> = net.out_edges(v).iter().map(|e| names[e].as_str()).collect();
            let sub: Vec<&str> = net.in_edges(v).iter().map(|e| names[e].as_str()).collect();
            format!("{}{}{}", net.symbol(v), script('^', &sup), script('_', &sub))
        })
        .collect();
    let body = if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join(" ")
    };
    debug_assert!(net.edges().values().all(|e| e.head != IN && e.tail != OUT));
    format!("[{}|{}|{}]", list(net.output_legs()), body, list(net.input_legs()))
}

fn fmt_coeff(k: &BigRational) -> String {
    if k.is_integer() {
        k.numer().to_string()
    } else {
        format!("{}/{}", k.numer(), k.denom())
    }
}

/// Deterministic closed-form text; terms appear in canonical order.
pub fn format_term(x: &LinComb) -> String {
    if x.is_zero() {
        let (m, n) = x.shape();
        if (m, n) == (0, 0) {
            return "0".to_string();
        }
        let outs: Vec<String> = (0..m).map(label_name).collect();
        let ins: Vec<String> = (m..m + n).map(label_name).collect();
        return format!("[{}|0|{}]", outs.join(" "), ins.join(" "));
    }
    let mut out = String::new();
    for (i, (c, k)) in x.terms().enumerate() {
        let mag = k.abs();
        if i == 0 {
            if k.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if k.is_negative() { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&fmt_coeff(&mag));
            out.push(' ');
        }
        out.push_str(&format_class(c));
    }
    out
}
