//! Seeded property checks shared by the module suites and the acceptance run.

use std::collections::{BTreeMap, BTreeSet};

use netrw::freeprop::{FreeError, FreeProp, NetClass};
use netrw::matching::{complement, find_embeddings, strong_embeddings};
use netrw::network::{Edge, TargetProp, IN, OUT};
use netrw::order::{CompareResult, OrderSpec, Stage};
use netrw::props::{
    baff_feedback, evaluate, matrix_feedback, Assignment, BaffElem, BaffNat, BoolMatrix, ConnElem, Connectivity,
    Matrix, NatMatrix, RatMatrix, TargetKind, Value,
};
use netrw::{BoolMat, Network, Perm, Signature, Symbol};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::test_runner::TestCaseError;
use rand::seq::SliceRandom;
use rand::Rng;

use super::oracle::{self, B, N};
use super::{fail, network_in, rng, sig, sig2, symbols};

type R = Result<(), TestCaseError>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(fail(format!($($msg)+)));
        }
    };
}

pub fn to_bm(b: &B, r: usize, c: usize) -> BoolMat {
    let mut m = BoolMat::zeros(r, c);
    for i in 0..r {
        for j in 0..c {
            m.set(i, j, b[i][j]);
        }
    }
    m
}

pub fn nat(n: &N, cols: usize) -> Matrix<BigUint> {
    Matrix::from_rows(n.iter().map(|r| r.iter().map(|&x| BigUint::from(x)).collect()).collect(), cols)
        .expect("rectangular")
}

fn rand_n(rng: &mut impl Rng, r: usize, c: usize, max: u128) -> N {
    (0..r).map(|_| (0..c).map(|_| rng.gen_range(0..=max)).collect()).collect()
}

fn shaped(rng: &mut impl Rng, shape: (usize, usize), hi: usize) -> Network {
    network_in(rng, &symbols(&sig()), 0, hi, Some(shape))
}

fn nat_eval(g: &Network, a: &Assignment) -> Matrix<BigUint> {
    match evaluate(TargetKind::NatMatrix, g, Some(a)) {
        Ok(Value::Nat(m)) => m,
        other => panic!("nat evaluation failed: {other:?}"),
    }
}

fn conn_eval(g: &Network) -> ConnElem {
    match evaluate(TargetKind::Connectivity, g, None) {
        Ok(Value::Conn(c)) => c,
        other => panic!("connectivity evaluation failed: {other:?}"),
    }
}

fn zb_cross(k: usize, m: usize) -> Vec<usize> {
    (0..k + m).map(|i| if i < k { i + m } else { i - k }).collect()
}

fn zb_star(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().chain(b.iter().map(|x| x + a.len())).collect()
}

/// Transference of a symmetric join against the block formula in the
/// operands' transferences.
pub fn tr_sym_join(seed: u64) -> R {
    let mut rng = rng(seed);
    let [k, l, m, n, q, r] = [0; 6].map(|_| rng.gen_range(0..=2usize));
    let kk = NetClass::of(&shaped(&mut rng, (k + r, l + q), 4));
    let hh = NetClass::of(&shaped(&mut rng, (q + m, r + n), 4));
    let a = oracle::rows(kk.tr());
    let b = oracle::rows(hh.tr());
    let a11 = oracle::bblock(&a, 0, k, 0, l);
    let a12 = oracle::bblock(&a, 0, k, l, l + q);
    let a21 = oracle::bblock(&a, k, k + r, 0, l);
    let a22 = oracle::bblock(&a, k, k + r, l, l + q);
    let b22 = oracle::bblock(&b, 0, q, 0, r);
    let b23 = oracle::bblock(&b, 0, q, r, r + n);
    let b32 = oracle::bblock(&b, q, q + m, 0, r);
    let b33 = oracle::bblock(&b, q, q + m, r, r + n);
    let ab = oracle::bmul(&a22, &b22, q, r);
    let ba = oracle::bmul(&b22, &a22, r, q);
    let joined = kk.sym_join(r, q, &hh);
    if !oracle::bnilpotent(&ab) {
        ensure!(matches!(joined, Err(FreeError::JoinUndefined(_))), "join defined despite a cycle");
        return Ok(());
    }
    let j = joined.map_err(|e| fail(format!("join undefined: {e}")))?;
    let abs = oracle::bstar(&ab);
    let bas = oracle::bstar(&ba);
    let mul = oracle::bmul;
    let tl = oracle::badd(&a11, &mul(&mul(&mul(&a12, &b22, q, r), &abs, r, r), &a21, r, l));
    let tr = mul(&mul(&a12, &bas, q, q), &b23, q, n);
    let bl = mul(&mul(&b32, &abs, r, r), &a21, r, l);
    let br = oracle::badd(&b33, &mul(&mul(&mul(&b32, &a22, r, q), &bas, q, q), &b23, q, n));
    let want = oracle::bjoin([[&tl, &tr], [&bl, &br]], [k, m], [l, n]);
    ensure!(j.shape() == (k + m, l + n), "join shape {:?}", j.shape());
    ensure!(*j.tr() == to_bm(&want, k + m, l + n), "Tr {:?} vs formula {:?}", j.tr(), want);
    Ok(())
}

/// Reachability from each input to each output, by depth first search.
fn reach(g: &Network) -> B {
    let (m, n) = g.shape();
    let mut out = oracle::bzero(m, n);
    for (j, &start) in g.input_legs().iter().enumerate() {
        let mut stack = vec![start];
        let mut seen = BTreeSet::new();
        while let Some(e) = stack.pop() {
            if !seen.insert(e) {
                continue;
            }
            let h = g.edge(e).head;
            if h == OUT {
                out[g.edge(e).head_index - 1][j] = true;
            } else {
                stack.extend(g.out_edges(h).iter().copied());
            }
        }
    }
    out
}

/// Transference equals boolean evaluation with all-ones generators, and
/// both equal plain reachability.
pub fn tr_is_bool_eval(seed: u64) -> R {
    let mut rng = rng(seed);
    let g = network_in(&mut rng, &symbols(&sig()), 0, 7, None);
    let (m, n) = g.shape();
    let tr = g.transference();
    let ev = evaluate(TargetKind::BoolMatrix, &g, None).map_err(|e| fail(e.to_string()))?;
    ensure!(ev == Value::Bool(tr.clone()), "eval {ev:?} vs Tr {tr:?}");
    ensure!(tr == to_bm(&reach(&g), m, n), "Tr {tr:?} vs reachability");
    Ok(())
}

/// Random order ideal of the vertex poset: a prefix of a random linear extension.
fn lower_set(rng: &mut impl Rng, g: &Network) -> BTreeSet<usize> {
    let mut placed = BTreeSet::new();
    let mut order = Vec::new();
    let all: Vec<usize> = g.inner_vertices().collect();
    while order.len() < all.len() {
        let ready: Vec<usize> = all
            .iter()
            .copied()
            .filter(|v| !placed.contains(v))
            .filter(|&v| g.in_edges(v).iter().all(|&e| g.edge(e).tail == IN || placed.contains(&g.edge(e).tail)))
            .collect();
        let v = *ready.choose(rng).expect("acyclic");
        placed.insert(v);
        order.push(v);
    }
    let t = rng.gen_range(0..=order.len());
    order[..t].iter().copied().collect()
}

/// Evaluation turns cuts into composition and splits into tensor products.
pub fn cut_split(seed: u64) -> R {
    let mut rng = rng(seed);
    let s = sig();
    let g = network_in(&mut rng, &symbols(&s), 0, 5, None);
    let asg = super::nat_assignment(&mut rng, &s, 3);
    // cut
    let lower = lower_set(&mut rng, &g);
    let upper: BTreeSet<usize> = g.inner_vertices().filter(|v| !lower.contains(v)).collect();
    let mut order = g.cut_edges(&upper);
    order.shuffle(&mut rng);
    let (top, bottom) = g.decompose_cut(&upper, &lower, &order).map_err(|e| fail(e.to_string()))?;
    let whole = nat_eval(&g, &asg);
    ensure!(whole == nat_eval(&top, &asg).mul(&nat_eval(&bottom, &asg)), "cut multiplicativity (nat)");
    let conn = Connectivity;
    ensure!(
        conn_eval(&g) == conn.compose(&conn_eval(&top), &conn_eval(&bottom)),
        "cut multiplicativity (connectivity)"
    );
    ensure!(
        NetClass::of(&g) == NetClass::of(&top).compose(&NetClass::of(&bottom)).expect("shapes"),
        "cut recomposes"
    );
    // split: components go left or right, legs reordered so the left ones come first
    let comps = edge_components(&g);
    let left_comps: BTreeSet<usize> = comps.values().copied().filter(|_| rng.gen_bool(0.5)).collect();
    let is_left = |e: usize| left_comps.contains(&comps[&e]);
    let reorder = |legs: &[usize]| -> Vec<usize> {
        let (mut l, mut r): (Vec<usize>, Vec<usize>) = (Vec::new(), Vec::new());
        for (pos, &e) in legs.iter().enumerate() {
            if is_left(e) {
                l.push(pos)
            } else {
                r.push(pos)
            }
        }
        let mut img = vec![0; legs.len()];
        for (new, old) in l.into_iter().chain(r).enumerate() {
            img[old] = new;
        }
        img
    };
    let sigma = Perm::from_zero_based(reorder(g.output_legs()));
    let tau = Perm::from_zero_based(reorder(g.input_legs())).inverse();
    let g2 = g.act(&sigma, &tau).map_err(|e| fail(e.to_string()))?;
    let le: BTreeSet<usize> = g2.edges().keys().copied().filter(|&e| is_left(e)).collect();
    let re: BTreeSet<usize> = g2.edges().keys().copied().filter(|&e| !is_left(e)).collect();
    let vertex_side = |v: usize| {
        g2.in_edges(v).iter().chain(g2.out_edges(v)).next().map(|&e| is_left(e)).unwrap_or(true)
    };
    let lv: BTreeSet<usize> = g2.inner_vertices().filter(|&v| vertex_side(v)).collect();
    let rv: BTreeSet<usize> = g2.inner_vertices().filter(|&v| !vertex_side(v)).collect();
    let (gl, gr) = g2.decompose_split(&le, &re, &lv, &rv).map_err(|e| fail(e.to_string()))?;
    ensure!(
        nat_eval(&g2, &asg) == nat_eval(&gl, &asg).direct_sum(&nat_eval(&gr, &asg)),
        "split multiplicativity (nat)"
    );
    ensure!(
        conn_eval(&g2) == conn.tensor(&conn_eval(&gl), &conn_eval(&gr)),
        "split multiplicativity (connectivity)"
    );
    ensure!(NetClass::of(&g2) == NetClass::of(&gl).tensor(&NetClass::of(&gr)), "split re-tensors");
    Ok(())
}

/// Undirected components, keyed by edge. Vertices without edges cannot occur
/// since no generated symbol has shape (0,0).
fn edge_components(g: &Network) -> BTreeMap<usize, usize> {
    let ids: Vec<usize> = g.edges().keys().copied().collect();
    let mut comp: BTreeMap<usize, usize> = ids.iter().map(|&e| (e, e)).collect();
    loop {
        let mut changed = false;
        for v in g.inner_vertices() {
            let es: Vec<usize> = g.in_edges(v).iter().chain(g.out_edges(v)).copied().collect();
            let lo = es.iter().map(|e| comp[e]).min();
            if let Some(lo) = lo {
                for e in es {
                    if comp[&e] != lo {
                        comp.insert(e, lo);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return comp;
        }
    }
}

/// Evaluating a symmetric join equals feedback of the juxtaposed evaluations.
pub fn feedback_join(seed: u64) -> R {
    let mut rng = rng(seed);
    let s = sig();
    let [k, l, m, n, q, r] = [0; 6].map(|_| rng.gen_range(0..=2usize));
    let kn = shaped(&mut rng, (k + r, l + q), 4);
    let hn = shaped(&mut rng, (q + m, r + n), 4);
    let asg = super::nat_assignment(&mut rng, &s, 3);
    let Ok(j) = NetClass::of(&kn).sym_join(r, q, &NetClass::of(&hn)) else {
        return Ok(());
    };
    let ek = oracle::nat_rows(&nat_eval(&kn, &asg));
    let eh = oracle::nat_rows(&nat_eval(&hn, &asg));
    let left = oracle::nsum(&ek, &oracle::nid(m), l + q, m);
    let right = oracle::nsum(&oracle::nid(l), &eh, l, r + n);
    let p1 = oracle::nperm(&zb_star(&(0..k).collect::<Vec<_>>(), &zb_cross(r, m)));
    let p2 = oracle::nperm(&zb_star(&(0..l).collect::<Vec<_>>(), &zb_cross(n, r)));
    let x = oracle::nmul(&p1, &left, k + r + m, l + q + m);
    let x = oracle::nmul(&x, &right, l + q + m, l + r + n);
    let x = oracle::nmul(&x, &p2, l + r + n, l + n + r);
    let want = oracle::nfeedback(&x, l + n + r, r);
    let got = oracle::nat_rows(&nat_eval(j.rep(), &asg));
    ensure!(got == want, "eval of join {got:?} vs feedback formula {want:?}");
    Ok(())
}

fn support(a: &N) -> B {
    a.iter().map(|r| r.iter().map(|&x| x != 0).collect()).collect()
}

fn fb(a: &Matrix<BigUint>, n: usize) -> Option<Matrix<BigUint>> {
    let (r, c) = a.shape();
    let rows = oracle::nat_rows(a);
    let blk = support(&oracle::nblock(&rows, r - n, r, c - n, c));
    if !oracle::bnilpotent(&blk) {
        return None;
    }
    Some(matrix_feedback(a, n, &to_bm(&blk, n, n)).expect("pattern covers the block"))
}

/// A random natural matrix whose last `n` rows and columns meet in a
/// nilpotent block.
fn fb_matrix(rng: &mut impl Rng, rows: usize, cols: usize, n: usize) -> N {
    let mut a = rand_n(rng, rows, cols, 3);
    let pat = super::nilpotent(rng, n, 0.5);
    for i in 0..n {
        for j in 0..n {
            if !pat.get(i, j) {
                a[rows - n + i][cols - n + j] = 0;
            }
        }
    }
    a
}

/// Tightening, superposing, sliding, vanishing and yanking for formal
/// matrix feedback.
pub fn matrix_feedback_axioms(seed: u64) -> R {
    let mut rng = rng(seed);
    let d = |rng: &mut rand::rngs::StdRng| rng.gen_range(0..=2usize);
    let n = rng.gen_range(0..=3usize);
    let (i, j, k, l) = (d(&mut rng), d(&mut rng), d(&mut rng), d(&mut rng));
    let id = |x: usize| Matrix::<BigUint>::identity(x);
    // tightening
    let a = nat(&rand_n(&mut rng, i, j, 3), j);
    let b = nat(&fb_matrix(&mut rng, j + n, k + n, n), k + n);
    let c = nat(&rand_n(&mut rng, k, l, 3), l);
    let lhs = fb(&a.direct_sum(&id(n)).mul(&b).mul(&c.direct_sum(&id(n))), n).expect("same block as b");
    let rhs = a.mul(&fb(&b, n).expect("nilpotent")).mul(&c);
    ensure!(lhs == rhs, "tightening");
    // superposing
    ensure!(
        a.direct_sum(&fb(&b, n).expect("nilpotent")) == fb(&a.direct_sum(&b), n).expect("same block"),
        "superposing"
    );
    // sliding: a' is m×n', b' is (k+n')×(l+m)
    let (mm, nn) = (d(&mut rng), d(&mut rng));
    let a2 = nat(&rand_n(&mut rng, mm, nn, 2), nn);
    let b2 = nat(&rand_n(&mut rng, k + nn, l + mm, 2), l + mm);
    let left = id(k).direct_sum(&a2).mul(&b2);
    let right = b2.mul(&id(l).direct_sum(&a2));
    match (fb(&left, mm), fb(&right, nn)) {
        (Some(x), Some(y)) => ensure!(x == y, "sliding"),
        (None, None) => {}
        _ => return Err(fail("sliding: one side defined, the other not")),
    }
    // vanishing
    let (p, q) = (d(&mut rng), d(&mut rng));
    let big = nat(&fb_matrix(&mut rng, i + p + q, j + p + q, p + q), j + p + q);
    let once = fb(&big, p + q).expect("nilpotent");
    let twice = fb(&fb(&big, q).expect("sub-block nilpotent"), p).expect("nilpotent");
    ensure!(once == twice, "vanishing");
    ensure!(fb(&big, 0).expect("empty") == big, "feedback of zero wires");
    // yanking
    let x = Matrix::<BigUint>::perm(&Perm::cross(n, n));
    ensure!(fb(&x, n).expect("zero block") == id(n), "yanking");
    // the biaffine version agrees with the padded matrix
    let e = BaffElem::linear(&b);
    let pat = to_bm(&support(&oracle::nblock(&oracle::nat_rows(&b), j, j + n, k, k + n)), n, n);
    ensure!(
        baff_feedback(&e, n, &pat).map_err(|e| fail(e.to_string()))?.matrix_part()
            == fb(&b, n).expect("nilpotent"),
        "biaffine feedback"
    );
    Ok(())
}

/// The eight PROP axioms for one target, with `gen` producing random elements.
pub fn prop_axioms<T: TargetProp>(
    t: &T,
    rng: &mut rand::rngs::StdRng,
    gen: &dyn Fn(&mut rand::rngs::StdRng, (usize, usize)) -> T::Elem,
) -> R {
    let mut d = || rng.gen_range(0..=2usize);
    let [k, l, m, n, r, s] = [0; 6].map(|_| d());
    let a = gen(rng, (k, l));
    let b = gen(rng, (l, m));
    let c = gen(rng, (m, n));
    ensure!(
        t.compose(&t.compose(&a, &b), &c) == t.compose(&a, &t.compose(&b, &c)),
        "composition associativity"
    );
    ensure!(t.compose(&t.identity(k), &a) == a && t.compose(&a, &t.identity(l)) == a, "composition identity");
    let x = gen(rng, (r, s));
    ensure!(t.tensor(&t.tensor(&a, &b), &x) == t.tensor(&a, &t.tensor(&b, &x)), "tensor associativity");
    let e = t.phi(&Perm::same(0));
    ensure!(t.tensor(&e, &a) == a && t.tensor(&a, &e) == a, "tensor identity");
    // (a∘b) ⊗ (c'∘d') = (a⊗c') ∘ (b⊗d')
    let c2 = gen(rng, (r, s));
    let d2 = gen(rng, (s, n));
    ensure!(
        t.tensor(&t.compose(&a, &b), &t.compose(&c2, &d2)) == t.compose(&t.tensor(&a, &c2), &t.tensor(&b, &d2)),
        "composition-tensor compatibility"
    );
    let p = rand_perm(rng, k + 1);
    let q = rand_perm(rng, k + 1);
    ensure!(
        t.compose(&t.phi(&p), &t.phi(&q)) == t.phi(&p.compose(&q).expect("same size")),
        "permutation composition"
    );
    let p2 = rand_perm(rng, m);
    ensure!(t.tensor(&t.phi(&p), &t.phi(&p2)) == t.phi(&p.star(&p2)), "permutation juxtaposition");
    // X(k,m) ∘ (a ⊗ b') = (b' ⊗ a) ∘ X(l,n) for a: (k,l), b': (m,n)
    let b3 = gen(rng, (m, n));
    ensure!(
        t.compose(&t.phi(&Perm::cross(k, m)), &t.tensor(&a, &b3))
            == t.compose(&t.tensor(&b3, &a), &t.phi(&Perm::cross(l, n))),
        "tensor permutation"
    );
    Ok(())
}

pub fn rand_perm(rng: &mut impl Rng, n: usize) -> Perm {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Perm::from_zero_based(v)
}

fn nat_elem(rng: &mut rand::rngs::StdRng, (r, c): (usize, usize)) -> Matrix<BigUint> {
    nat(&rand_n(rng, r, c, 3), c)
}

fn rat_elem(rng: &mut rand::rngs::StdRng, (r, c): (usize, usize)) -> Matrix<BigRational> {
    let rows = (0..r)
        .map(|_| {
            (0..c)
                .map(|_| BigRational::new(BigInt::from(rng.gen_range(-4..=4)), BigInt::from(rng.gen_range(1..=3))))
                .collect()
        })
        .collect();
    Matrix::from_rows(rows, c).expect("rectangular")
}

fn bool_elem(rng: &mut rand::rngs::StdRng, (r, c): (usize, usize)) -> BoolMat {
    super::boolmat(rng, r, c, 0.4)
}

fn baff_elem(rng: &mut rand::rngs::StdRng, (r, c): (usize, usize)) -> BaffElem {
    let a = nat_elem(rng, (r, c));
    let v = |rng: &mut rand::rngs::StdRng, n: usize| -> Vec<BigUint> {
        (0..n).map(|_| BigUint::from(rng.gen_range(0..=3u32))).collect()
    };
    let b = v(rng, r);
    let cc = v(rng, c);
    BaffElem::from_parts(&a, &b, &cc, BigUint::from(rng.gen_range(0..=3u32)))
}

fn conn_elem(rng: &mut rand::rngs::StdRng, shape: (usize, usize)) -> ConnElem {
    conn_eval(&shaped(rng, shape, 4))
}

fn class_elem(rng: &mut rand::rngs::StdRng, shape: (usize, usize)) -> NetClass {
    NetClass::of(&shaped(rng, shape, 3))
}

/// The PROP axioms in every built-in target.
pub fn target_axioms(seed: u64) -> R {
    let mut rng = rng(seed);
    prop_axioms(&NatMatrix::new(), &mut rng, &nat_elem).map_err(tag("nat-matrix"))?;
    prop_axioms(&RatMatrix::new(), &mut rng, &rat_elem).map_err(tag("rat-matrix"))?;
    prop_axioms(&BoolMatrix, &mut rng, &bool_elem).map_err(tag("bool-matrix"))?;
    prop_axioms(&BaffNat, &mut rng, &baff_elem).map_err(tag("baff-nat"))?;
    prop_axioms(&Connectivity, &mut rng, &conn_elem).map_err(tag("connectivity"))
}

/// The PROP axioms for network classes.
pub fn free_axioms(seed: u64) -> R {
    prop_axioms(&FreeProp, &mut rng(seed), &class_elem).map_err(tag("free"))
}

pub fn prop_axioms_all(seed: u64) -> R {
    target_axioms(seed)?;
    free_axioms(seed)
}

fn tag(name: &'static str) -> impl Fn(TestCaseError) -> TestCaseError {
    move |e| fail(format!("{name}: {e}"))
}

/// Connectivity evaluation against components and cyclomatic number of the
/// underlying graph.
pub fn connectivity_cyclomatic(seed: u64) -> R {
    let mut rng = rng(seed);
    let g = network_in(&mut rng, &symbols(&sig()), 0, 8, None);
    let (m, n) = g.shape();
    let (blocks, cyc) = oracle::connectivity(&g);
    let want = ConnElem::new(m, n, &blocks, cyc);
    let got = conn_eval(&g);
    ensure!(got == want, "connectivity {got} vs graph {want}");
    Ok(())
}

// ---- index notation ----

fn parse(text: &str, s: &Signature) -> Result<NetClass, TestCaseError> {
    let x = netrw::ainparse::parse_term(text, s).map_err(|e| fail(format!("{text}: {e}")))?;
    x.as_monomial().cloned().ok_or_else(|| fail("not a monomial"))
}

/// Shuffled factors and fresh labels give the same class as the network
/// they were printed from.
pub fn ain_reorder(seed: u64) -> R {
    let mut rng = rng(seed);
    let s = sig();
    let g = network_in(&mut rng, &symbols(&s), 0, 6, None);
    let want = NetClass::of(&g);
    for _ in 0..2 {
        let lab = oracle::labels(&mut rng, &g, 40);
        let text = oracle::ain(&mut rng, &g, &lab);
        ensure!(parse(&text, &s)? == want, "{text} parses to another class");
    }
    Ok(())
}

/// Concatenating bodies composes, juxtaposing them tensors.
pub fn ain_compose_tensor(seed: u64) -> R {
    let mut rng = rng(seed);
    let s = sig();
    let syms = symbols(&s);
    let (a, b, c) = (rng.gen_range(0..=2), rng.gen_range(0..=2), rng.gen_range(0..=2));
    let g = network_in(&mut rng, &syms, 0, 4, Some((a, b)));
    let h = network_in(&mut rng, &syms, 0, 4, Some((b, c)));
    let lg = oracle::labels(&mut rng, &g, 30);
    let mut lh: BTreeMap<usize, String> =
        oracle::labels(&mut rng, &h, 30).into_iter().map(|(e, x)| (e, format!("y{}", &x[1..]))).collect();
    // H's outputs take the labels of G's inputs
    let (_, g_in) = oracle::leg_labels(&g, &lg);
    for (pos, e) in h.output_legs().iter().enumerate() {
        let old = lh[e].clone();
        for v in lh.values_mut() {
            if *v == old {
                *v = g_in[pos].clone();
            }
        }
    }
    let (g_out, _) = oracle::leg_labels(&g, &lg);
    let (_, h_in) = oracle::leg_labels(&h, &lh);
    let mut body: Vec<String> = oracle::factors(&g, &lg).into_values().collect();
    body.extend(oracle::factors(&h, &lh).into_values());
    body.shuffle(&mut rng);
    let glued = parse(&oracle::bracket(&g_out, &body, &h_in), &s)?;
    let (cg, ch) = (parse(&oracle::ain(&mut rng, &g, &lg), &s)?, parse(&oracle::ain(&mut rng, &h, &lh), &s)?);
    ensure!(glued == cg.compose(&ch).expect("shapes"), "concatenation is not composition");
    // juxtaposition with disjoint labels
    let h2 = network_in(&mut rng, &syms, 0, 4, None);
    let l2: BTreeMap<usize, String> =
        oracle::labels(&mut rng, &h2, 30).into_iter().map(|(e, x)| (e, format!("z{}", &x[1..]))).collect();
    let (o1, i1) = oracle::leg_labels(&g, &lg);
    let (o2, i2) = oracle::leg_labels(&h2, &l2);
    let mut body: Vec<String> = oracle::factors(&g, &lg).into_values().collect();
    body.extend(oracle::factors(&h2, &l2).into_values());
    body.shuffle(&mut rng);
    let outs: Vec<String> = o1.into_iter().chain(o2).collect();
    let ins: Vec<String> = i1.into_iter().chain(i2).collect();
    let side = parse(&oracle::bracket(&outs, &body, &ins), &s)?;
    ensure!(side == cg.tensor(&NetClass::of(&h2)), "juxtaposition is not tensor");
    Ok(())
}

/// Splitting the factors of an expression into two groups and rejoining
/// the two sub-expressions reproduces the whole.
pub fn ain_split_join(seed: u64) -> R {
    let mut rng = rng(seed);
    let s = sig();
    let g = network_in(&mut rng, &symbols(&s), 1, 6, None);
    let lab = oracle::labels(&mut rng, &g, 40);
    let fac = oracle::factors(&g, &lab);
    let group_a: BTreeSet<usize> = g.inner_vertices().filter(|_| rng.gen_bool(0.5)).collect();
    let in_a = |v: usize| group_a.contains(&v);
    let e = |id: usize| *g.edge(id);
    // legs: an output belongs to A when its producer does; strays pick a side at random
    let stray_a: BTreeSet<usize> =
        g.edges().iter().filter(|(_, x)| x.is_stray()).map(|(&i, _)| i).filter(|_| rng.gen_bool(0.5)).collect();
    let out_a = |id: usize| {
        let x = e(id);
        if x.tail == IN {
            stray_a.contains(&id)
        } else {
            in_a(x.tail)
        }
    };
    let in_side_a = |id: usize| {
        let x = e(id);
        if x.head == OUT {
            stray_a.contains(&id)
        } else {
            in_a(x.head)
        }
    };
    let k0: Vec<usize> = g.output_legs().iter().copied().filter(|&x| out_a(x)).collect();
    let m0: Vec<usize> = g.output_legs().iter().copied().filter(|&x| !out_a(x)).collect();
    let l0: Vec<usize> = g.input_legs().iter().copied().filter(|&x| in_side_a(x)).collect();
    let n0: Vec<usize> = g.input_legs().iter().copied().filter(|&x| !in_side_a(x)).collect();
    let inner = |x: &Edge| x.tail != IN && x.head != OUT;
    let mut r: Vec<usize> =
        g.edges().iter().filter(|(_, x)| inner(x) && in_a(x.tail) && !in_a(x.head)).map(|(&i, _)| i).collect();
    let mut q: Vec<usize> =
        g.edges().iter().filter(|(_, x)| inner(x) && !in_a(x.tail) && in_a(x.head)).map(|(&i, _)| i).collect();
    r.shuffle(&mut rng);
    q.shuffle(&mut rng);
    let names = |ids: &[usize]| -> Vec<String> { ids.iter().map(|i| lab[i].clone()).collect() };
    let cat = |a: &[usize], b: &[usize]| -> Vec<String> { names(a).into_iter().chain(names(b)).collect() };
    let body = |pick: bool| -> Vec<String> {
        fac.iter().filter(|(v, _)| in_a(**v) == pick).map(|(_, f)| f.clone()).collect()
    };
    let mut all: Vec<String> = fac.values().cloned().collect();
    all.shuffle(&mut rng);
    let whole = parse(&oracle::bracket(&cat(&k0, &m0), &all, &cat(&l0, &n0)), &s)?;
    let kk = parse(&oracle::bracket(&cat(&k0, &r), &body(true), &cat(&l0, &q)), &s)?;
    let hh = parse(&oracle::bracket(&cat(&q, &m0), &body(false), &cat(&r, &n0)), &s)?;
    let joined = kk.sym_join(r.len(), q.len(), &hh).map_err(|e| fail(e.to_string()))?;
    ensure!(joined == whole, "split and rejoin changed the class");
    Ok(())
}

// ---- orders ----

/// `g` with a new `S` vertex subdividing edge `e`.
pub fn subdivide(g: &Network, e: usize, s: &Symbol) -> Network {
    let mut deco = g.deco().clone();
    let v = g.max_vertex() + 1;
    deco.insert(v, s.clone());
    let mut edges = g.edges().clone();
    let old = edges[&e];
    let fresh = g.max_edge().map_or(0, |x| x + 1);
    edges.insert(e, Edge::new(old.tail, old.tail_index, v, 1));
    edges.insert(fresh, Edge::new(v, 1, old.head, old.head_index));
    Network::validate(deco, edges).expect("subdivision stays a network")
}

/// A strict biaffine order and a pair `a < b`, found by subdividing an edge
/// of `a` with a vertex valued above the identity.
fn strict_pair(rng: &mut rand::rngs::StdRng, shape: (usize, usize)) -> Option<(OrderSpec, NetClass, NetClass)> {
    let s = sig();
    let mut asg = super::baff_assignment(rng, &s, 2, true);
    let y = rng.gen_range(0..=2u64);
    let z = rng.gen_range(1..=2u64) + 1;
    asg.insert_nat("S", &[&[1, rng.gen_range(0..=1), rng.gen_range(0..=1)], &[0, 1, 0], &[0, y, z]], 3);
    let spec = OrderSpec::new(vec![Stage::PullbackBaff(asg)]).expect("one stage");
    assert!(spec.check_strictness(&s).ok, "generated order must be strict");
    let sym = s.get("S").expect("declared").clone();
    for _ in 0..8 {
        let a = shaped(rng, shape, 3);
        let ids: Vec<usize> = a.edges().keys().copied().collect();
        let Some(&e) = ids.choose(rng) else { continue };
        let b = subdivide(&a, e, &sym);
        let (ca, cb) = (NetClass::of(&a), NetClass::of(&b));
        if spec.compare(&ca, &cb).ok() == Some(CompareResult::Less) {
            return Some((spec, ca, cb));
        }
    }
    None
}

/// `a < b` survives composition and tensoring with arbitrary contexts.
pub fn order_strict(seed: u64) -> R {
    let mut rng = rng(seed);
    let (m, n) = (rng.gen_range(1..=2), rng.gen_range(0..=2));
    let Some((spec, a, b)) = strict_pair(&mut rng, (m, n)) else {
        return Err(fail("no comparable pair found"));
    };
    let (x, y) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
    let c = class_elem(&mut rng, (x, m));
    let d = class_elem(&mut rng, (n, y));
    let wrap = |t: &NetClass| c.compose(t).and_then(|u| u.compose(&d)).expect("shapes");
    let got = spec.compare(&wrap(&a), &wrap(&b)).map_err(|e| fail(e.to_string()))?;
    ensure!(got == CompareResult::Less, "composition context gave {got}");
    let [p1, p2, p3, p4] = [0; 4].map(|_| rng.gen_range(0..=2usize));
    let c2 = class_elem(&mut rng, (p1, p2));
    let d2 = class_elem(&mut rng, (p3, p4));
    let side = |t: &NetClass| c2.tensor(t).tensor(&d2);
    let got = spec.compare(&side(&a), &side(&b)).map_err(|e| fail(e.to_string()))?;
    ensure!(got == CompareResult::Less, "tensor context gave {got}");
    Ok(())
}

/// `a < a'` gives `a ⋈ b < a' ⋈ b` and `b ⋈ a < b ⋈ a'` whenever both are defined.
pub fn order_join(seed: u64) -> R {
    let mut rng = rng(seed);
    let k = rng.gen_range(1..=2usize);
    let [l, m, n, q, r] = [0; 5].map(|_| rng.gen_range(0..=2usize));
    let Some((spec, a, a2)) = strict_pair(&mut rng, (k + r, l + q)) else {
        return Err(fail("no comparable pair found"));
    };
    let b = class_elem(&mut rng, (q + m, r + n));
    if let (Ok(x), Ok(y)) = (a.sym_join(r, q, &b), a2.sym_join(r, q, &b)) {
        let got = spec.compare(&x, &y).map_err(|e| fail(e.to_string()))?;
        ensure!(got == CompareResult::Less, "left join gave {got}");
    }
    // `a` on the right: it feeds q2 of its outputs back and takes r2 inputs
    let q2 = rng.gen_range(0..=k + r);
    let r2 = rng.gen_range(0..=l + q);
    let (x1, x2) = (rng.gen_range(0..=2usize), rng.gen_range(0..=2usize));
    let b2 = class_elem(&mut rng, (x1 + r2, x2 + q2));
    if let (Ok(x), Ok(y)) = (b2.sym_join(r2, q2, &a), b2.sym_join(r2, q2, &a2)) {
        let got = spec.compare(&x, &y).map_err(|e| fail(e.to_string()))?;
        ensure!(got == CompareResult::Less, "right join gave {got}");
    }
    Ok(())
}

// ---- matching ----

/// `find_embeddings` against exhaustive search on small subjects.
pub fn embeddings_complete(seed: u64) -> R {
    let mut rng = rng(seed);
    let syms = symbols(&sig2());
    let g = network_in(&mut rng, &syms, 0, 4, None);
    let h = network_in(&mut rng, &syms, 1, 2, None);
    let got: BTreeSet<_> = find_embeddings(&h, &g).into_iter().collect();
    let want = oracle::brute_embeddings(&h, &g);
    ensure!(got == want, "embeddings {got:?} vs brute force {want:?}");
    Ok(())
}

/// A subject and a pattern cut out of it, so embeddings exist. Pieces with
/// many legs embed in too many ways to enumerate, so they are redrawn.
pub fn subject_and_piece(rng: &mut rand::rngs::StdRng, syms: &[Symbol], hi: usize) -> (Network, Network) {
    loop {
        let g = network_in(rng, syms, 1, hi, None);
        let lower = lower_set(rng, &g);
        let upper: BTreeSet<usize> = g.inner_vertices().filter(|v| !lower.contains(v)).collect();
        let order = g.cut_edges(&upper);
        let (top, bottom) = g.decompose_cut(&upper, &lower, &order).expect("ideal gives a cut");
        let piece =
            if top.inner_count() > 0 && (bottom.inner_count() == 0 || rng.gen_bool(0.5)) { top } else { bottom };
        let strays = piece.edges().values().filter(|e| e.is_stray()).count();
        if piece.edges().len() <= 7 && strays <= 1 {
            return (g, piece);
        }
    }
}

/// Every strong embedding yields a context that annexes back to the subject.
pub fn complement_round_trip(seed: u64) -> R {
    let mut rng = rng(seed);
    let syms = symbols(&sig());
    let (g, h) = subject_and_piece(&mut rng, &syms, 5);
    let cg = NetClass::of(&g);
    let ch = NetClass::of(&h);
    let mut embs = find_embeddings(&h, &g);
    ensure!(!embs.is_empty(), "a cut piece must embed");
    embs.shuffle(&mut rng);
    for e in embs.iter().take(6) {
        for se in strong_embeddings(&h, e, &g) {
            let k = complement(&g, &h, &se);
            let back = k.annex(&ch).map_err(|x| fail(x.to_string()))?;
            ensure!(back == cg, "annex(complement, H) differs from G");
        }
    }
    Ok(())
}
