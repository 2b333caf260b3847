//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use netrw::network::{Edge, IN, OUT};
use netrw::props::Assignment;
use netrw::{BoolMat, Network, Signature, Symbol};
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub mod checks;
pub mod oracle;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Symbols used by most generated networks.
pub fn sig() -> Signature {
    Signature::new()
        .with("m", 1, 2)
        .with("D", 2, 1)
        .with("S", 1, 1)
        .with("e", 1, 0)
        .with("c", 0, 1)
        .with("X", 2, 2)
}

/// Just a product and a coproduct.
pub fn sig2() -> Signature {
    Signature::new().with("m", 1, 2).with("D", 2, 1)
}

pub fn symbols(sig: &Signature) -> Vec<Symbol> {
    sig.symbols().cloned().collect()
}

fn find(syms: &[Symbol], coarity: usize, arity: usize) -> Symbol {
    syms.iter()
        .find(|s| s.coarity == coarity && s.arity == arity)
        .cloned()
        .unwrap_or_else(|| Symbol::new(if arity == 0 { "e" } else { "c" }, coarity, arity))
}

/// A random acyclic network with `inner` ordinary vertices, built in
/// topological order. With `shape` given, extra `(1,0)`/`(0,1)` vertices
/// patch the boundary to exactly that shape.
pub fn network(rng: &mut impl Rng, syms: &[Symbol], inner: usize, shape: Option<(usize, usize)>) -> Network {
    let mut deco: BTreeMap<usize, Symbol> = BTreeMap::new();
    let mut edges: Vec<((usize, usize), (usize, usize))> = Vec::new();
    let mut pool: Vec<(usize, usize)> = Vec::new();
    let mut ins = 0;
    if let Some((_, n)) = shape {
        ins = n;
        pool.extend((1..=n).map(|j| (IN, j)));
    }
    let mut next = 2;
    let unit = find(syms, 1, 0);
    let counit = find(syms, 0, 1);
    for _ in 0..inner {
        let sym = syms.choose(rng).expect("nonempty signature").clone();
        let v = next;
        next += 1;
        for port in 1..=sym.arity {
            let fresh = match shape {
                Some(_) => pool.is_empty(),
                None => pool.is_empty() || rng.gen_bool(0.4),
            };
            let tail = if fresh {
                if shape.is_some() {
                    let u = next;
                    next += 1;
                    deco.insert(u, unit.clone());
                    (u, 1)
                } else {
                    ins += 1;
                    (IN, ins)
                }
            } else {
                pool.swap_remove(rng.gen_range(0..pool.len()))
            };
            edges.push((tail, (v, port)));
        }
        pool.extend((1..=sym.coarity).map(|p| (v, p)));
        deco.insert(v, sym);
    }
    match shape {
        Some((m, _)) => {
            while pool.len() > m {
                let t = pool.swap_remove(rng.gen_range(0..pool.len()));
                edges.push((t, (next, 1)));
                deco.insert(next, counit.clone());
                next += 1;
            }
            while pool.len() < m {
                pool.push((next, 1));
                deco.insert(next, unit.clone());
                next += 1;
            }
        }
        None => {
            while rng.gen_bool(0.15) {
                ins += 1;
                pool.push((IN, ins));
            }
        }
    }
    pool.shuffle(rng);
    for (i, t) in pool.iter().enumerate() {
        edges.push((*t, (OUT, i + 1)));
    }
    let mut in_perm: Vec<usize> = (1..=ins).collect();
    in_perm.shuffle(rng);
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.shuffle(rng);
    let edges = order
        .into_iter()
        .map(|k| {
            let ((t, ti), (h, hi)) = edges[k];
            let ti = if t == IN { in_perm[ti - 1] } else { ti };
            (k, Edge::new(t, ti, h, hi))
        })
        .collect();
    Network::validate(deco, edges).expect("generated network is valid")
}

/// A random network with a random inner count in `lo..=hi`.
pub fn network_in(rng: &mut impl Rng, syms: &[Symbol], lo: usize, hi: usize, shape: Option<(usize, usize)>) -> Network {
    let k = rng.gen_range(lo..=hi);
    network(rng, syms, k, shape)
}

/// Randomly renames vertices and edges.
pub fn relabel(rng: &mut impl Rng, g: &Network) -> Network {
    let mut vs: Vec<usize> = (2..2 + 3 * g.inner_count() + 3).collect();
    vs.shuffle(rng);
    let vmap: BTreeMap<usize, usize> = g.inner_vertices().zip(vs).collect();
    let mut es: Vec<usize> = (0..3 * g.edges().len() + 3).collect();
    es.shuffle(rng);
    let emap: BTreeMap<usize, usize> = g.edges().keys().copied().zip(es).collect();
    g.relabel(|v| vmap[&v], |e| emap[&e])
}

/// Natural values for every symbol of `sig`, entries in `0..=max`.
pub fn nat_assignment(rng: &mut impl Rng, sig: &Signature, max: u64) -> Assignment {
    let mut a = Assignment::new();
    for s in sig.symbols() {
        let rows: Vec<Vec<u64>> = (0..s.coarity)
            .map(|_| (0..s.arity).map(|_| rng.gen_range(0..=max)).collect())
            .collect();
        let refs: Vec<&[u64]> = rows.iter().map(|r| r.as_slice()).collect();
        a.insert_nat(&s.name, &refs, s.arity);
    }
    a
}

/// Biaffine values `[[1, d, c],[0, 1, 0],[0, b, A]]`; with `strict` every
/// row and column of the padded matrix gets a positive entry.
pub fn baff_assignment(rng: &mut impl Rng, sig: &Signature, max: u64, strict: bool) -> Assignment {
    let mut a = Assignment::new();
    for s in sig.symbols() {
        let (m, n) = (s.coarity, s.arity);
        let mut full = vec![vec![0u64; n + 2]; m + 2];
        full[0][0] = 1;
        full[1][1] = 1;
        for j in 0..n {
            full[0][2 + j] = rng.gen_range(0..=max);
        }
        full[0][1] = rng.gen_range(0..=max);
        for i in 0..m {
            full[2 + i][1] = rng.gen_range(0..=max);
            for j in 0..n {
                full[2 + i][2 + j] = rng.gen_range(0..=max);
            }
        }
        if strict {
            for i in 0..m {
                if full[2 + i].iter().all(|&x| x == 0) {
                    full[2 + i][1] = 1;
                }
            }
            for j in 0..n {
                if (0..m + 2).all(|i| full[i][2 + j] == 0) {
                    full[0][2 + j] = 1;
                }
            }
        }
        let refs: Vec<&[u64]> = full.iter().map(|r| r.as_slice()).collect();
        a.insert_nat(&s.name, &refs, n + 2);
    }
    a
}

pub fn boolmat(rng: &mut impl Rng, rows: usize, cols: usize, density: f64) -> BoolMat {
    let mut b = BoolMat::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            b.set(i, j, rng.gen_bool(density));
        }
    }
    b
}

/// A random strictly upper triangular boolean matrix conjugated by a
/// random permutation: always nilpotent.
pub fn nilpotent(rng: &mut impl Rng, n: usize, density: f64) -> BoolMat {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    let mut b = BoolMat::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                b.set(p[i], p[j], true);
            }
        }
    }
    b
}

/// Vertex bijections preserving decorations and edge endpoints: the
/// definition of network isomorphism, searched exhaustively.
pub fn isomorphic(a: &Network, b: &Network) -> bool {
    if a.shape() != b.shape() || a.inner_count() != b.inner_count() || a.edges().len() != b.edges().len() {
        return false;
    }
    let target: BTreeSet<Edge> = b.edges().values().copied().collect();
    let va: Vec<usize> = a.inner_vertices().collect();
    let vb: Vec<usize> = b.inner_vertices().collect();
    fn go(
        i: usize,
        va: &[usize],
        vb: &[usize],
        a: &Network,
        b: &Network,
        map: &mut BTreeMap<usize, usize>,
        used: &mut Vec<bool>,
        target: &BTreeSet<Edge>,
    ) -> bool {
        if i == va.len() {
            let f = |v: usize| if v == IN || v == OUT { v } else { map[&v] };
            let image: BTreeSet<Edge> = a
                .edges()
                .values()
                .map(|e| Edge::new(f(e.tail), e.tail_index, f(e.head), e.head_index))
                .collect();
            return &image == target;
        }
        for (k, &w) in vb.iter().enumerate() {
            if used[k] || a.symbol(va[i]) != b.symbol(w) {
                continue;
            }
            used[k] = true;
            map.insert(va[i], w);
            if go(i + 1, va, vb, a, b, map, used, target) {
                return true;
            }
            used[k] = false;
        }
        map.remove(&va[i]);
        false
    }
    go(0, &va, &vb, a, b, &mut BTreeMap::new(), &mut vec![false; vb.len()], &target)
}

pub fn fail(msg: impl Into<String>) -> TestCaseError {
    TestCaseError::fail(msg.into())
}

/// Runs `check` on `cases` random seeds; returns the number of cases run.
pub fn run_cases(
    cases: u32,
    check: impl Fn(u64) -> Result<(), TestCaseError>,
) -> Result<u32, String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&proptest::num::u64::ANY, check)
        .map(|_| cases)
        .map_err(|e| e.to_string())
}
