use std::cmp::Ordering;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use super::Symbol;

/// A finite word, stored as a sequence of symbol indices into some
/// [`Alphabet`](super::Alphabet).
///
/// Words are ordered shortlex: by length first, then lexicographically by
/// alphabet order. Every ordered collection in the crate relies on this.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn concat(&self, other: &[Symbol]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Number of occurrences of `s`, written |w|_s.
    pub fn count(&self, s: Symbol) -> usize {
        self.0.iter().filter(|&&c| c == s).count()
    }

    pub fn is_prefix_of(&self, other: &[Symbol]) -> bool {
        other.starts_with(&self.0)
    }

    /// True when `factor` occurs contiguously inside this word.
    pub fn has_factor(&self, factor: &[Symbol]) -> bool {
        factor.is_empty() || self.0.windows(factor.len()).any(|w| w == factor)
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortlex_order() {
        let mut ws = vec![
            Word::new(vec![1]),
            Word::new(vec![0, 0]),
            Word::empty(),
            Word::new(vec![0]),
        ];
        ws.sort();
        assert_eq!(
            ws,
            vec![
                Word::empty(),
                Word::new(vec![0]),
                Word::new(vec![1]),
                Word::new(vec![0, 0])
            ]
        );
    }

    #[test]
    fn factors_and_counts() {
        let w = Word::new(vec![0, 1, 1, 0]);
        assert!(w.has_factor(&[1, 1]));
        assert!(!w.has_factor(&[0, 0]));
        assert!(w.has_factor(&[]));
        assert_eq!(w.count(1), 2);
        assert_eq!(w.reversed(), Word::new(vec![0, 1, 1, 0]));
    }
}
