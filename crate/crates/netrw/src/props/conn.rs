use std::fmt;

use crate::core::Perm;
use crate::network::TargetProp;

/// Element of the connectivity PROP: a partition of the legs together with
/// a count of independent cycles.
///
/// Legs are numbered outputs first, then inputs. `block[x]` is the block of
/// leg `x`, with blocks numbered by first appearance so that equal
/// partitions have equal vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConnElem {
    outs: usize,
    ins: usize,
    block: Vec<usize>,
    cyc: u64,
}

fn normalise(raw: &[usize]) -> Vec<usize> {
    let mut names = std::collections::HashMap::new();
    raw.iter()
        .map(|r| {
            let n = names.len();
            *names.entry(*r).or_insert(n)
        })
        .collect()
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

impl ConnElem {
    /// `raw[x]` is any block name for leg `x` (outputs first).
    pub fn new(outs: usize, ins: usize, raw: &[usize], cyc: u64) -> ConnElem {
        assert_eq!(raw.len(), outs + ins);
        ConnElem {
            outs,
            ins,
            block: normalise(raw),
            cyc,
        }
    }

    /// All legs in one block, no cycles: the value of a single generator.
    pub fn connected(outs: usize, ins: usize) -> ConnElem {
        ConnElem::new(outs, ins, &vec![0; outs + ins], 0)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.outs, self.ins)
    }

    pub fn cyc(&self) -> u64 {
        self.cyc
    }

    pub fn block_count(&self) -> usize {
        self.block.iter().max().map_or(0, |m| m + 1)
    }

    /// Block index of output `i` (zero-based).
    pub fn out_block(&self, i: usize) -> usize {
        self.block[i]
    }

    /// Block index of input `j` (zero-based).
    pub fn in_block(&self, j: usize) -> usize {
        self.block[self.outs + j]
    }

    /// Blocks as lists of labels `(0, i)` / `(1, j)`, one-based.
    pub fn blocks(&self) -> Vec<Vec<(u8, usize)>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (x, &b) in self.block.iter().enumerate() {
            out[b].push(if x < self.outs { (0, x + 1) } else { (1, x - self.outs + 1) });
        }
        out
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &ConnElem) -> bool {
        let mut image = vec![usize::MAX; self.block_count()];
        for (x, &b) in self.block.iter().enumerate() {
            if image[b] == usize::MAX {
                image[b] = other.block[x];
            } else if image[b] != other.block[x] {
                return false;
            }
        }
        true
    }

    /// The partial order: fewer cycles and a finer partition is smaller.
    pub fn le(&self, other: &ConnElem) -> bool {
        self.shape() == other.shape() && self.cyc <= other.cyc && self.refines(other)
    }
}

impl fmt::Debug for ConnElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ConnElem {
    /// `{(0,1) (1,2)} {(1,1)} c=0`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                let inner: Vec<String> = b.iter().map(|(s, i)| format!("({s},{i})")).collect();
                format!("{{{}}}", inner.join(" "))
            })
            .collect();
        if blocks.is_empty() {
            write!(f, "{{}} c={}", self.cyc)
        } else {
            write!(f, "{} c={}", blocks.join(" "), self.cyc)
        }
    }
}

/// The connectivity PROP.
#[derive(Clone, Copy, Debug, Default)]
pub struct Connectivity;

impl TargetProp for Connectivity {
    type Elem = ConnElem;

    fn shape(&self, a: &ConnElem) -> (usize, usize) {
        a.shape()
    }

    fn compose(&self, a: &ConnElem, b: &ConnElem) -> ConnElem {
        let (l, m) = a.shape();
        let (_, n) = b.shape();
        // nodes: outer outputs 0..l, middle l..l+m, outer inputs l+m..l+m+n
        let size = l + m + n;
        let mut dsu = Dsu::new(size);
        let mut first = vec![usize::MAX; a.block_count()];
        for (x, &blk) in a.block.iter().enumerate() {
            let node = x;
            if first[blk] == usize::MAX {
                first[blk] = node;
            } else {
                dsu.union(first[blk], node);
            }
        }
        let mut first = vec![usize::MAX; b.block_count()];
        for (x, &blk) in b.block.iter().enumerate() {
            let node = l + x;
            if first[blk] == usize::MAX {
                first[blk] = node;
            } else {
                dsu.union(first[blk], node);
            }
        }
        let roots: Vec<usize> = (0..size).map(|x| dsu.find(x)).collect();
        let mut all = roots.clone();
        all.sort_unstable();
        all.dedup();
        let total_blocks = all.len() as u64;
        let raw: Vec<usize> = (0..l).chain(l + m..size).map(|x| roots[x]).collect();
        let cyc = a.cyc + m as u64 + total_blocks + b.cyc - a.block_count() as u64 - b.block_count() as u64;
        ConnElem::new(l, n, &raw, cyc)
    }

    fn tensor(&self, a: &ConnElem, b: &ConnElem) -> ConnElem {
        let shift = a.block_count();
        let mut raw: Vec<usize> = a.block[..a.outs].to_vec();
        raw.extend(b.block[..b.outs].iter().map(|x| x + shift));
        raw.extend(&a.block[a.outs..]);
        raw.extend(b.block[b.outs..].iter().map(|x| x + shift));
        ConnElem::new(a.outs + b.outs, a.ins + b.ins, &raw, a.cyc + b.cyc)
    }

    fn phi(&self, p: &Perm) -> ConnElem {
        let n = p.len();
        let mut raw = vec![0; 2 * n];
        for j in 0..n {
            raw[p.at(j)] = j;
            raw[n + j] = j;
        }
        ConnElem::new(n, n, &raw, 0)
    }
}
