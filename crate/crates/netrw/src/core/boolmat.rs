use std::fmt;

use super::{CoreError, Perm};

/// Dense boolean matrix, one bit row per matrix row.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolMat {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BoolMat {
    pub fn zeros(rows: usize, cols: usize) -> BoolMat {
        let words = cols.div_ceil(64);
        BoolMat {
            rows,
            cols,
            words,
            bits: vec![0; rows * words],
        }
    }

    /// The all-ones matrix `J`.
    pub fn ones(rows: usize, cols: usize) -> BoolMat {
        let mut m = BoolMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn identity(n: usize) -> BoolMat {
        let mut m = BoolMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Permutation matrix: entry `(i, j)` is set iff `i = σ(j)`.
    pub fn perm(p: &Perm) -> BoolMat {
        let mut m = BoolMat::zeros(p.len(), p.len());
        for j in 0..p.len() {
            m.set(p.at(j), j, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<BoolMat, CoreError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = BoolMat::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(CoreError::ShapeMismatch(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    r.len(),
                    cols
                )));
            }
            for (j, &b) in r.iter().enumerate() {
                m.set(i, j, b);
            }
        }
        Ok(m)
    }

    /// Parses rows of `0`/`1` digits separated by `;` or `/`, e.g. `10;01`.
    pub fn parse_rows(text: &str) -> Result<BoolMat, CoreError> {
        if let Some((r, c)) = text.trim().split_once('x') {
            if let (Ok(r), Ok(c)) = (r.parse(), c.parse()) {
                return Ok(BoolMat::zeros(r, c));
            }
        }
        let mut rows = Vec::new();
        for part in text.split([';', '/']) {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let mut row = Vec::new();
            for ch in part.chars().filter(|c| !c.is_whitespace() && *c != ',') {
                match ch {
                    '0' => row.push(false),
                    '1' => row.push(true),
                    _ => {
                        return Err(CoreError::ShapeMismatch(format!(
                            "bad boolean matrix entry {ch:?}"
                        )))
                    }
                }
            }
            rows.push(row);
        }
        BoolMat::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let w = &mut self.bits[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entrywise OR.
    pub fn add(&self, other: &BoolMat) -> Result<BoolMat, CoreError> {
        if self.shape() != other.shape() {
            return Err(CoreError::ShapeMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect();
        Ok(BoolMat { bits, ..*self })
    }

    /// Boolean matrix product.
    pub fn mul(&self, other: &BoolMat) -> Result<BoolMat, CoreError> {
        if self.cols != other.rows {
            return Err(CoreError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = BoolMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let src = other.row_words(k);
                    let dst = &mut out.bits[i * out.words..(i + 1) * out.words];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d |= s;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entrywise `self ≤ other`.
    pub fn le(&self, other: &BoolMat) -> bool {
        self.shape() == other.shape()
            && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn transpose(&self) -> BoolMat {
        let mut t = BoolMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// Block diagonal sum, the tensor product of transference matrices.
    pub fn direct_sum(&self, other: &BoolMat) -> BoolMat {
        let mut m = BoolMat::zeros(self.rows + other.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, other);
        m
    }

    /// Copies `block` into `self` with its top-left corner at `(r, c)`.
    pub fn paste(&mut self, r: usize, c: usize, block: &BoolMat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                if block.get(i, j) {
                    self.set(r + i, c + j, true);
                }
            }
        }
    }

    /// The submatrix on rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> BoolMat {
        let mut m = BoolMat::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                if self.get(i, j) {
                    m.set(i - r0, j - c0, true);
                }
            }
        }
        m
    }

    /// Assembles `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &BoolMat, b: &BoolMat, c: &BoolMat, d: &BoolMat) -> BoolMat {
        let mut m = BoolMat::zeros(a.rows + c.rows, a.cols + b.cols);
        m.paste(0, 0, a);
        m.paste(0, a.cols, b);
        m.paste(a.rows, 0, c);
        m.paste(a.rows, a.cols, d);
        m
    }

    fn require_square(&self) -> Result<(), CoreError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(CoreError::NotSquare(self.rows, self.cols))
        }
    }

    /// Reflexive-transitive closure `A* = I + A + A² + ...`, by squaring `I + A`.
    pub fn star(&self) -> Result<BoolMat, CoreError> {
        self.require_square()?;
        let mut s = self.add(&BoolMat::identity(self.rows))?;
        loop {
            let next = s.mul(&s)?;
            if next == s {
                return Ok(s);
            }
            s = next;
        }
    }

    /// Transitive closure `A+ = A·A*`.
    pub fn plus(&self) -> Result<BoolMat, CoreError> {
        self.mul(&self.star()?)
    }

    /// True iff some power of the matrix vanishes, i.e. the digraph is acyclic.
    pub fn is_nilpotent(&self) -> Result<bool, CoreError> {
        let p = self.plus()?;
        Ok((0..self.rows).all(|i| !p.get(i, i)))
    }

    pub fn pow(&self, k: usize) -> Result<BoolMat, CoreError> {
        self.require_square()?;
        let mut acc = BoolMat::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn to_rows(&self) -> Vec<Vec<bool>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Compact text form: rows of digits joined by `;`, or `RxC` for an empty shape.
    pub fn to_compact(&self) -> String {
        if self.rows == 0 || self.cols == 0 {
            return format!("{}x{}", self.rows, self.cols);
        }
        self.to_rows()
            .iter()
            .map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>())
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Debug for BoolMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolMat[{}]", self.to_compact())
    }
}

impl fmt::Display for BoolMat {
    /// One line per row, entries separated by spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "({}x{} empty)", self.rows, self.cols);
        }
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            let row: Vec<&str> = (0..self.cols)
                .map(|j| if self.get(i, j) { "1" } else { "0" })
                .collect();
            write!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
