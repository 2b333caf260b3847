use super::AinError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Num(String),
    Punct(char),
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    /// Byte offset into the source.
    pub pos: usize,
}

const PUNCT: &str = "[]|^_{}+-*/,";

pub(crate) fn lex(src: &str) -> Result<Vec<Token>, AinError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek() {
                if c.is_ascii_alphanumeric() || c == '\'' {
                    s.push(c);
                    it.next();
                } else {
                    break;
                }
            }
            out.push(Token { tok: Tok::Ident(s), pos });
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek() {
                if c.is_ascii_digit() {
                    s.push(c);
                    it.next();
                } else {
                    break;
                }
            }
            out.push(Token { tok: Tok::Num(s), pos });
        } else if PUNCT.contains(c) {
            out.push(Token { tok: Tok::Punct(c), pos });
            it.next();
        } else {
            return Err(AinError::Syntax {
                pos,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

/// Splits an identifier into labels: a letter followed by digits or primes.
pub(crate) fn split_labels(ident: &str, pos: usize) -> Result<Vec<String>, AinError> {
    let mut out: Vec<String> = Vec::new();
    for c in ident.chars() {
        if c.is_ascii_alphabetic() {
            out.push(c.to_string());
        } else if let Some(last) = out.last_mut() {
            last.push(c);
        } else {
            return Err(AinError::Syntax {
                pos,
                msg: format!("bad label list `{ident}`"),
            });
        }
    }
    Ok(out)
}
