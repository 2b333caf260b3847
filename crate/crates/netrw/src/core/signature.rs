use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::CoreError;

/// Name of the neutral one-in one-out generator used as a join point.
pub const NEUTRAL: &str = "~";
/// Spelling of the Kronecker delta in index notation; never a generator.
pub const DELTA: &str = "delta";

/// A generator with `coarity` outputs and `arity` inputs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub name: Arc<str>,
    pub coarity: usize,
    pub arity: usize,
}

impl Symbol {
    pub fn new(name: &str, coarity: usize, arity: usize) -> Symbol {
        Symbol {
            name: Arc::from(name),
            coarity,
            arity,
        }
    }

    pub fn neutral() -> Symbol {
        Symbol::new(NEUTRAL, 1, 1)
    }

    pub fn is_neutral(&self) -> bool {
        &*self.name == NEUTRAL
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}<-{}", self.name, self.coarity, self.arity)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// The generating set: declared symbols by name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    symbols: BTreeMap<String, Symbol>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn declare(&mut self, name: &str, coarity: usize, arity: usize) -> Result<&Symbol, CoreError> {
        if name == NEUTRAL || name == DELTA {
            return Err(CoreError::ReservedName(name.to_string()));
        }
        if !valid_name(name) {
            return Err(CoreError::BadName(name.to_string()));
        }
        if self.symbols.contains_key(name) {
            return Err(CoreError::DuplicateSymbol(name.to_string()));
        }
        self.symbols
            .insert(name.to_string(), Symbol::new(name, coarity, arity));
        Ok(&self.symbols[name])
    }

    /// Builder form of [`Signature::declare`] for literals known to be valid.
    pub fn with(mut self, name: &str, coarity: usize, arity: usize) -> Signature {
        self.declare(name, coarity, arity).expect("valid declaration");
        self
    }

    pub fn get(&self, name: &str) -> Result<&Symbol, CoreError> {
        self.symbols
            .get(name)
            .ok_or_else(|| CoreError::UnknownSymbol(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.symbols.contains_key(name)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols.values()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Parses the `.sig` format: `gen <name> <coarity> <arity>` per line.
    pub fn parse(text: &str) -> Result<Signature, CoreError> {
        let mut sig = Signature::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| CoreError::Parse {
                line: no + 1,
                msg,
            };
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "gen" {
                return Err(err(format!("expected `gen <name> <coarity> <arity>`, got `{line}`")));
            }
            let coarity: usize = parts[2]
                .parse()
                .map_err(|_| err(format!("bad coarity `{}`", parts[2])))?;
            let arity: usize = parts[3]
                .parse()
                .map_err(|_| err(format!("bad arity `{}`", parts[3])))?;
            sig.declare(parts[1], coarity, arity)
                .map_err(|e| err(e.to_string()))?;
        }
        Ok(sig)
    }

    pub fn to_text(&self) -> String {
        self.symbols
            .values()
            .map(|s| format!("gen {} {} {}\n", s.name, s.coarity, s.arity))
            .collect()
    }
}
