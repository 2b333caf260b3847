use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::PropsError;

/// A rational matrix as written in an assignment file.
#[derive(Clone, PartialEq, Eq)]
pub struct RawMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigRational>,
}

impl RawMatrix {
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// Entries as naturals, if they all are.
    pub fn to_naturals(&self) -> Option<Vec<Vec<BigUint>>> {
        self.to_rows()
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| {
                        if x.is_integer() && !x.is_negative() {
                            x.to_integer().to_biguint()
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for RawMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}{:?}", self.rows, self.cols, self.data)
    }
}

/// Generator values read from a `map <symbol> = <rows>` file.
///
/// Rows are separated by `;`, entries by whitespace or `,`; entries are
/// integers or fractions `p/q`. A shape with no entries is written `RxC`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    entries: BTreeMap<String, RawMatrix>,
}

pub(crate) fn parse_rational(tok: &str) -> Option<BigRational> {
    let (num, den) = match tok.split_once('/') {
        Some((a, b)) => (a, b),
        None => (tok, "1"),
    };
    let num: BigInt = num.trim().parse().ok()?;
    let den: BigInt = den.trim().parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

fn parse_shape(text: &str) -> Option<(usize, usize)> {
    let (r, c) = text.split_once('x')?;
    Some((r.trim().parse().ok()?, c.trim().parse().ok()?))
}

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn parse(text: &str) -> Result<Assignment, PropsError> {
        let mut out = Assignment::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| PropsError::Parse {
                line: n + 1,
                msg: msg.to_string(),
            };
            let rest = line.strip_prefix("map").ok_or_else(|| err("expected `map`"))?;
            let (name, value) = rest.split_once('=').ok_or_else(|| err("expected `=`"))?;
            let name = name.trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(err("bad symbol name"));
            }
            let m = Assignment::parse_matrix(value).map_err(|m| err(&m))?;
            if out.entries.insert(name.to_string(), m).is_some() {
                return Err(err(&format!("`{name}` assigned twice")));
            }
        }
        Ok(out)
    }

    fn parse_matrix(value: &str) -> Result<RawMatrix, String> {
        let value = value.trim();
        if let Some((rows, cols)) = parse_shape(value) {
            return Ok(RawMatrix {
                rows,
                cols,
                data: vec![BigRational::zero(); rows * cols],
            });
        }
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for r in value.split(';') {
            let row: Option<Vec<BigRational>> = r
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(parse_rational)
                .collect();
            let row = row.ok_or_else(|| format!("bad entry in row `{}`", r.trim()))?;
            rows.push(row);
        }
        let cols = rows[0].len();
        if cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err("rows have different lengths".into());
        }
        Ok(RawMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn insert(&mut self, name: &str, m: RawMatrix) {
        self.entries.insert(name.to_string(), m);
    }

    /// Convenience insertion from natural rows.
    pub fn insert_nat(&mut self, name: &str, rows: &[&[u64]], cols: usize) {
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())))
            .collect();
        self.insert(
            name,
            RawMatrix {
                rows: rows.len(),
                cols,
                data,
            },
        );
    }

    pub fn get(&self, name: &str) -> Option<&RawMatrix> {
        self.entries.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(|s| s.as_str())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (name, m) in &self.entries {
            if m.rows == 0 || m.cols == 0 {
                s.push_str(&format!("map {name} = {}x{}\n", m.rows, m.cols));
                continue;
            }
            let rows: Vec<String> = m
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            s.push_str(&format!("map {name} = {}\n", rows.join("; ")));
        }
        s
    }
}
