use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::Word;
use crate::error::{Error, Result};

/// Index of a symbol inside its alphabet.
pub type Symbol = u8;

/// Largest alphabet the crate handles.
pub const MAX_SYMBOLS: usize = Symbol::MAX as usize;

/// An ordered alphabet of distinct printable tokens.
///
/// Tokens are arbitrary strings, so a marked copy of a letter (`a'`) is just
/// another token.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    symbols: Vec<String>,
    #[serde(skip)]
    index: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        if symbols.len() > MAX_SYMBOLS {
            return Err(Error::InvalidAlphabet(format!(
                "{} symbols, at most {MAX_SYMBOLS} supported",
                symbols.len()
            )));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == '#') || s == "ε" {
                return Err(Error::InvalidAlphabet(format!("invalid token `{s}`")));
            }
            if index.insert(s.clone(), i as Symbol).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate token `{s}`")));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// The first `d` lowercase latin letters (`x26`, `x27`, ... past `z`).
    pub fn letters(d: usize) -> Result<Self> {
        Alphabet::new((0..d).map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("x{i}")
            }
        }))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, s: Symbol) -> &str {
        &self.symbols[s as usize]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn index_of(&self, token: &str) -> Option<Symbol> {
        self.index.get(token).copied()
    }

    pub fn contains_word(&self, w: &[Symbol]) -> bool {
        w.iter().all(|&s| (s as usize) < self.symbols.len())
    }

    /// Extends the alphabet with a primed copy of `base`, ordered last.
    pub fn with_marked(&self, base: Symbol) -> Result<(Alphabet, Symbol)> {
        let token = format!("{}'", self.symbol(base));
        if self.index.contains_key(&token) {
            return Err(Error::InvalidAlphabet(format!(
                "marked token `{token}` collides with an existing symbol"
            )));
        }
        let mut symbols = self.symbols.clone();
        symbols.push(token);
        let ext = Alphabet::new(symbols)?;
        let marked = (ext.len() - 1) as Symbol;
        Ok((ext, marked))
    }

    // Compact rendering stays parseable when every token is one character,
    // optionally followed by a prime.
    fn compact(&self) -> bool {
        self.symbols.iter().all(|s| {
            let mut cs = s.chars();
            match (cs.next(), cs.next(), cs.next()) {
                (Some(c), None, _) => c != '\'',
                (Some(c), Some('\''), None) => c != '\'',
                _ => false,
            }
        })
    }

    /// Reads a word written either as whitespace-separated tokens or as a
    /// run of tokens matched greedily (longest token first).
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        if text.contains(char::is_whitespace) {
            return text
                .split_whitespace()
                .map(|t| self.index_of(t).ok_or_else(|| Error::UnknownSymbol(t.to_string())))
                .collect();
        }
        let mut out = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let best = self
                .symbols
                .iter()
                .enumerate()
                .filter(|(_, s)| rest.starts_with(s.as_str()))
                .max_by_key(|(_, s)| s.len());
            match best {
                Some((i, s)) => {
                    out.push(i as Symbol);
                    rest = &rest[s.len()..];
                }
                None => {
                    let c = rest.chars().next().unwrap_or_default();
                    return Err(Error::UnknownSymbol(c.to_string()));
                }
            }
        }
        Ok(Word::new(out))
    }

    /// Renders a word; alphabets of one-character tokens (primes allowed)
    /// are written compactly, others space-separated. The empty word prints as `ε`.
    pub fn render(&self, w: &[Symbol]) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        let parts = w.iter().map(|&s| self.symbol(s));
        if self.compact() {
            parts.collect()
        } else {
            parts.collect::<Vec<_>>().join(" ")
        }
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = Error;

    fn try_from(v: Vec<String>) -> Result<Self> {
        Alphabet::new(v)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(a: Alphabet) -> Self {
        a.symbols
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::new(["a b"]).is_err());
    }

    #[test]
    fn marked_symbol_is_last() {
        let a = Alphabet::letters(2).unwrap();
        let (ext, m) = a.with_marked(0).unwrap();
        assert_eq!(ext.len(), 3);
        assert_eq!(m, 2);
        assert_eq!(ext.symbol(m), "a'");
        assert!(ext.with_marked(0).is_err());
    }

    #[test]
    fn greedy_tokenizing() {
        let (ext, _) = Alphabet::letters(2).unwrap().with_marked(0).unwrap();
        let w = ext.parse_word("baa'b").unwrap();
        assert_eq!(w.symbols(), &[1, 0, 2, 1]);
        assert_eq!(ext.render(&w), "baa'b");
        assert_eq!(ext.parse_word("b a a' b").unwrap(), w);
        assert!(ext.parse_word("bc").is_err());
    }
}
