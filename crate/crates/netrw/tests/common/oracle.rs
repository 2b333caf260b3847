//! Reference computations written directly from the definitions, sharing
//! no code with the library beyond its plain data types.

use std::collections::{BTreeMap, BTreeSet};

use netrw::matching::Embedding;
use netrw::network::{Edge, IN, OUT};
use netrw::{BoolMat, Network};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng;

pub type B = Vec<Vec<bool>>;
pub type N = Vec<Vec<u128>>;

pub fn rows(b: &BoolMat) -> B {
    b.to_rows()
}

pub fn bzero(r: usize, c: usize) -> B {
    vec![vec![false; c]; r]
}

pub fn bid(n: usize) -> B {
    (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect()
}

fn cols_of(a: &B, fallback: usize) -> usize {
    a.first().map_or(fallback, |r| r.len())
}

pub fn bmul(a: &B, b: &B, inner: usize, cols: usize) -> B {
    let r = a.len();
    let mut out = bzero(r, cols);
    for i in 0..r {
        for k in 0..inner {
            if a[i][k] {
                for j in 0..cols {
                    out[i][j] |= b[k][j];
                }
            }
        }
    }
    out
}

pub fn badd(a: &B, b: &B) -> B {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| *p || *q).collect())
        .collect()
}

/// `I + A + A² + ...` summed until it stops growing.
pub fn bstar(a: &B) -> B {
    let n = a.len();
    let mut acc = bid(n);
    let mut power = bid(n);
    for _ in 0..=n {
        power = bmul(&power, a, n, n);
        let next = badd(&acc, &power);
        if next == acc {
            break;
        }
        acc = next;
    }
    acc
}

pub fn bnilpotent(a: &B) -> bool {
    let n = a.len();
    let mut p = bid(n);
    for _ in 0..n {
        p = bmul(&p, a, n, n);
    }
    p.iter().all(|r| r.iter().all(|x| !x))
}

pub fn bblock(a: &B, r0: usize, r1: usize, c0: usize, c1: usize) -> B {
    (r0..r1).map(|i| (c0..c1).map(|j| a[i][j]).collect()).collect()
}

/// `[[a11, a12], [a21, a22]]` with the given block row heights and widths.
pub fn bjoin(blocks: [[&B; 2]; 2], heights: [usize; 2], widths: [usize; 2]) -> B {
    let mut out = bzero(heights[0] + heights[1], widths[0] + widths[1]);
    for (bi, row) in blocks.iter().enumerate() {
        for (bj, blk) in row.iter().enumerate() {
            for i in 0..heights[bi] {
                for j in 0..widths[bj] {
                    out[bi * heights[0] + i][bj * widths[0] + j] = blk[i][j];
                }
            }
        }
    }
    out
}

/// Product helper that infers shapes from `a` (rows) and `b` (columns).
pub fn bm(a: &B, b: &B, inner: usize) -> B {
    let cols = cols_of(b, 0);
    bmul(a, b, inner, cols)
}

pub fn nat_rows(m: &netrw::props::Matrix<BigUint>) -> N {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.to_u128().expect("small entries")).collect())
        .collect()
}

pub fn nzero(r: usize, c: usize) -> N {
    vec![vec![0; c]; r]
}

pub fn nid(n: usize) -> N {
    (0..n).map(|i| (0..n).map(|j| u128::from(i == j)).collect()).collect()
}

/// Input `j` goes to output `p[j]` (zero-based images).
pub fn nperm(p: &[usize]) -> N {
    let mut m = nzero(p.len(), p.len());
    for (j, &i) in p.iter().enumerate() {
        m[i][j] = 1;
    }
    m
}

pub fn nmul(a: &N, b: &N, inner: usize, cols: usize) -> N {
    let mut out = nzero(a.len(), cols);
    for i in 0..a.len() {
        for k in 0..inner {
            if a[i][k] != 0 {
                for j in 0..cols {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

pub fn nadd(a: &N, b: &N) -> N {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect())
        .collect()
}

pub fn nsum(a: &N, b: &N, a_cols: usize, b_cols: usize) -> N {
    let mut out = nzero(a.len() + b.len(), a_cols + b_cols);
    for (i, r) in a.iter().enumerate() {
        out[i][..a_cols].copy_from_slice(r);
    }
    for (i, r) in b.iter().enumerate() {
        out[a.len() + i][a_cols..].copy_from_slice(r);
    }
    out
}

pub fn nblock(a: &N, r0: usize, r1: usize, c0: usize, c1: usize) -> N {
    (r0..r1).map(|i| (c0..c1).map(|j| a[i][j]).collect()).collect()
}

/// `A11 + A12 (Σ_{k<n} A22^k) A21` for the last `n` rows and columns.
pub fn nfeedback(a: &N, cols: usize, n: usize) -> N {
    let (k, l) = (a.len() - n, cols - n);
    let a11 = nblock(a, 0, k, 0, l);
    let a12 = nblock(a, 0, k, l, cols);
    let a21 = nblock(a, k, a.len(), 0, l);
    let a22 = nblock(a, k, a.len(), l, cols);
    let mut star = nid(n);
    let mut power = nid(n);
    for _ in 1..n.max(1) {
        power = nmul(&power, &a22, n, n);
        star = nadd(&star, &power);
    }
    nadd(&a11, &nmul(&nmul(&a12, &star, n, n), &a21, n, l))
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
}

/// Leg partition and cyclomatic number of the underlying undirected graph:
/// inner vertices plus one terminal per leg, one graph edge per network edge.
pub fn connectivity(g: &Network) -> (Vec<usize>, u64) {
    let (m, n) = g.shape();
    let inner: Vec<usize> = g.inner_vertices().collect();
    let idx: BTreeMap<usize, usize> = inner.iter().enumerate().map(|(i, &v)| (v, m + n + i)).collect();
    let total = m + n + inner.len();
    let end = |v: usize, port: usize, out: bool| -> usize {
        if v == OUT || v == IN {
            if out {
                port - 1
            } else {
                m + port - 1
            }
        } else {
            idx[&v]
        }
    };
    let mut dsu = Dsu((0..total).collect());
    for e in g.edges().values() {
        let a = end(e.head, e.head_index, e.head == OUT);
        let b = end(e.tail, e.tail_index, e.tail == OUT);
        let (ra, rb) = (dsu.find(a), dsu.find(b));
        if ra != rb {
            dsu.0[ra] = rb;
        }
    }
    let roots: BTreeSet<usize> = (0..total).map(|x| dsu.find(x)).collect();
    let cyc = g.edges().len() as u64 + roots.len() as u64 - total as u64;
    let mut names = BTreeMap::new();
    let blocks = (0..m + n)
        .map(|x| {
            let r = dsu.find(x);
            let k = names.len();
            *names.entry(r).or_insert(k)
        })
        .collect();
    (blocks, cyc)
}

/// The embedding axioms checked literally.
pub fn is_embedding(h: &Network, g: &Network, chi: &BTreeMap<usize, usize>, psi: &BTreeMap<usize, usize>) -> bool {
    let vals: BTreeSet<usize> = chi.values().copied().collect();
    if vals.len() != chi.len() || chi.len() != h.inner_count() {
        return false;
    }
    if chi.iter().any(|(&v, &w)| !g.deco().contains_key(&w) || g.symbol(w) != h.symbol(v)) {
        return false;
    }
    for (&e, he) in h.edges() {
        let Some(ge) = psi.get(&e).and_then(|x| g.edges().get(x)) else {
            return false;
        };
        if he.head != OUT && (ge.head != chi[&he.head] || ge.head_index != he.head_index) {
            return false;
        }
        if he.tail != IN && (ge.tail != chi[&he.tail] || ge.tail_index != he.tail_index) {
            return false;
        }
    }
    for (&e, he) in h.edges() {
        for (&f, hf) in h.edges() {
            if e != f && psi[&e] == psi[&f] {
                let joined = (he.head == OUT && hf.tail == IN) || (he.tail == IN && hf.head == OUT);
                if !joined {
                    return false;
                }
            }
        }
    }
    true
}

/// Every embedding of `h` into `g`, by trying every vertex map and every
/// edge map.
pub fn brute_embeddings(h: &Network, g: &Network) -> BTreeSet<Embedding> {
    let hv: Vec<usize> = h.inner_vertices().collect();
    let gv: Vec<usize> = g.inner_vertices().collect();
    let he: Vec<usize> = h.edges().keys().copied().collect();
    let ge: Vec<usize> = g.edges().keys().copied().collect();
    let mut out = BTreeSet::new();
    let mut chis = Vec::new();
    fn maps(i: usize, k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !cur.contains(&x) {
                cur.push(x);
                maps(i + 1, k, n, cur, out);
                cur.pop();
            }
        }
    }
    maps(0, hv.len(), gv.len(), &mut Vec::new(), &mut chis);
    for c in chis {
        let chi: BTreeMap<usize, usize> = hv.iter().zip(&c).map(|(&v, &i)| (v, gv[i])).collect();
        // per pattern edge, the subject edges satisfying the incidence axioms alone
        let cands: Vec<Vec<usize>> = he
            .iter()
            .map(|e| {
                let x = h.edge(*e);
                ge.iter()
                    .copied()
                    .filter(|f| {
                        let y = g.edge(*f);
                        (x.head == OUT || (chi.get(&x.head) == Some(&y.head) && x.head_index == y.head_index))
                            && (x.tail == IN || (chi.get(&x.tail) == Some(&y.tail) && x.tail_index == y.tail_index))
                    })
                    .collect()
            })
            .collect();
        let mut pick = vec![0usize; he.len()];
        if cands.iter().any(|c| c.is_empty()) {
            continue;
        }
        loop {
            let psi: BTreeMap<usize, usize> = he.iter().enumerate().map(|(i, &e)| (e, cands[i][pick[i]])).collect();
            if is_embedding(h, g, &chi, &psi) {
                out.insert(Embedding {
                    vertex_map: chi.clone(),
                    edge_map: psi,
                });
            }
            let mut i = 0;
            while i < pick.len() {
                pick[i] += 1;
                if pick[i] < cands[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
            if i == pick.len() {
                break;
            }
        }
    }
    out
}

/// The terseness conditions and the decisive disjunction for two
/// embeddings of patterns into a site.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Terse {
    pub covers_vertices: bool,
    pub covers_edges: bool,
    pub out1_in2_apart: bool,
    pub in1_out2_apart: bool,
    pub private1: bool,
    pub private2: bool,
    pub shared_vertex: bool,
    pub stray1_on_inner2: bool,
    pub inner1_on_stray2: bool,
    pub disjoint: bool,
}

pub fn terse(g: &Network, h1: &Network, a: &Embedding, h2: &Network, b: &Embedding) -> Terse {
    let im = |e: &Embedding| -> (BTreeSet<usize>, BTreeSet<usize>) {
        (e.vertex_map.values().copied().collect(), e.edge_map.values().copied().collect())
    };
    let (v1, e1) = im(a);
    let (v2, e2) = im(b);
    let legs = |h: &Network, m: &Embedding, output: bool| -> BTreeSet<usize> {
        h.edges()
            .iter()
            .filter(|(_, e)| if output { e.head == OUT } else { e.tail == IN })
            .map(|(i, _)| m.edge_map[i])
            .collect()
    };
    let private = |h: &Network, m: &Embedding, other: &BTreeSet<usize>| {
        h.edges().iter().all(|(&e, x)| {
            h.edges().iter().all(|(&f, y)| {
                let hit = m.edge_map[&e] == m.edge_map[&f] && !other.contains(&m.edge_map[&e]);
                !(hit && x.head == OUT && y.tail == IN) || e == f
            })
        })
    };
    let stray = |x: &Edge| x.head == OUT && x.tail == IN;
    let inner = |x: &Edge| x.head != OUT && x.tail != IN;
    let cross = |ha: &Network, ma: &Embedding, hb: &Network, mb: &Embedding| {
        ha.edges().iter().any(|(e, x)| {
            stray(x) && hb.edges().iter().any(|(f, y)| inner(y) && ma.edge_map[e] == mb.edge_map[f])
        })
    };
    Terse {
        covers_vertices: g.inner_vertices().all(|v| v1.contains(&v) || v2.contains(&v)),
        covers_edges: g.edges().keys().all(|e| e1.contains(e) || e2.contains(e)),
        out1_in2_apart: legs(h1, a, true).is_disjoint(&legs(h2, b, false)),
        in1_out2_apart: legs(h1, a, false).is_disjoint(&legs(h2, b, true)),
        private1: private(h1, a, &e2),
        private2: private(h2, b, &e1),
        shared_vertex: !v1.is_disjoint(&v2),
        stray1_on_inner2: cross(h1, a, h2, b),
        inner1_on_stray2: cross(h2, b, h1, a),
        disjoint: v1.is_disjoint(&v2) && e1.is_disjoint(&e2),
    }
}

impl Terse {
    pub fn is_terse(&self) -> bool {
        self.covers_vertices
            && self.covers_edges
            && self.out1_in2_apart
            && self.in1_out2_apart
            && self.private1
            && self.private2
    }

    pub fn decisive_witness(&self) -> bool {
        self.shared_vertex || self.stray1_on_inner2 || self.inner1_on_stray2
    }
}

/// Fresh distinct labels `x<k>` for every edge.
pub fn labels(rng: &mut impl Rng, g: &Network, pool: usize) -> BTreeMap<usize, String> {
    let mut ks: Vec<usize> = (0..pool.max(g.edges().len())).collect();
    ks.shuffle(rng);
    g.edges().keys().zip(ks).map(|(&e, k)| (e, format!("x{k}"))).collect()
}

fn script(mark: char, ls: &[String]) -> String {
    if ls.is_empty() {
        String::new()
    } else {
        format!("{mark}{{{}}}", ls.join(" "))
    }
}

/// Factors of `g`, one per inner vertex.
pub fn factors(g: &Network, lab: &BTreeMap<usize, String>) -> BTreeMap<usize, String> {
    g.inner_vertices()
        .map(|v| {
            let ups: Vec<String> = g.out_edges(v).iter().map(|e| lab[e].clone()).collect();
            let downs: Vec<String> = g.in_edges(v).iter().map(|e| lab[e].clone()).collect();
            (v, format!("{}{}{}", g.symbol(v).name, script('^', &ups), script('_', &downs)))
        })
        .collect()
}

pub fn leg_labels(g: &Network, lab: &BTreeMap<usize, String>) -> (Vec<String>, Vec<String>) {
    (
        g.output_legs().iter().map(|e| lab[e].clone()).collect(),
        g.input_legs().iter().map(|e| lab[e].clone()).collect(),
    )
}

pub fn bracket(outs: &[String], body: &[String], ins: &[String]) -> String {
    format!("[{}| {} |{}]", outs.join(" "), body.join(" "), ins.join(" "))
}

/// `g` in index notation with the factors in random order.
pub fn ain(rng: &mut impl Rng, g: &Network, lab: &BTreeMap<usize, String>) -> String {
    let mut body: Vec<String> = factors(g, lab).into_values().collect();
    body.shuffle(rng);
    let (o, i) = leg_labels(g, lab);
    bracket(&o, &body, &i)
}
