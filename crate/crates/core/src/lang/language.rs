use serde::{Deserialize, Serialize};

use super::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

/// A finite set of words over an ordered alphabet.
///
/// Words are deduplicated and kept in shortlex order, which fixes the
/// iteration order (and hence tie-breaking) of every search downstream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLanguage {
    alphabet: Alphabet,
    words: Vec<Word>,
}

impl FiniteLanguage {
    pub fn new(alphabet: Alphabet, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut words: Vec<Word> = words.into_iter().collect();
        for w in &words {
            if !alphabet.contains_word(w) {
                return Err(Error::UnknownSymbol(format!("{:?}", w.symbols())));
            }
        }
        words.sort();
        words.dedup();
        Ok(FiniteLanguage { alphabet, words })
    }

    /// Builds a language from compact or space-separated word strings.
    pub fn from_strs(alphabet: Alphabet, words: &[&str]) -> Result<Self> {
        let ws = words
            .iter()
            .map(|w| alphabet.parse_word(w))
            .collect::<Result<Vec<_>>>()?;
        FiniteLanguage::new(alphabet, ws)
    }

    /// Shorthand for a language over the first `d` latin letters.
    pub fn over_letters(d: usize, words: &[&str]) -> Result<Self> {
        FiniteLanguage::from_strs(Alphabet::letters(d)?, words)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// ℓ(X): the length of the longest word, 0 for the empty language.
    pub fn size(&self) -> usize {
        self.words.last().map_or(0, |w| w.len())
    }

    pub fn contains(&self, w: &[Symbol]) -> bool {
        let probe = Word::from(w);
        self.words.binary_search(&probe).is_ok()
    }

    pub fn has_empty_word(&self) -> bool {
        self.words.first().is_some_and(|w| w.is_empty())
    }

    /// Codeword-length multiset, sorted ascending.
    pub fn lengths(&self) -> Vec<usize> {
        self.words.iter().map(|w| w.len()).collect()
    }

    /// Fails unless the language is nonempty and free of the empty word,
    /// the standing assumption of every code-theoretic operation.
    pub fn require_nonempty_epsilon_free(&self) -> Result<()> {
        if self.has_empty_word() {
            return Err(Error::EmptyWordInLanguage);
        }
        if self.words.is_empty() {
            return Err(Error::EmptyLanguage);
        }
        Ok(())
    }

    pub fn reversed(&self) -> FiniteLanguage {
        FiniteLanguage {
            alphabet: self.alphabet.clone(),
            words: {
                let mut ws: Vec<Word> = self.words.iter().map(Word::reversed).collect();
                ws.sort();
                ws
            },
        }
    }

    pub fn render(&self, w: &[Symbol]) -> String {
        self.alphabet.render(w)
    }

    /// Text form: an alphabet header followed by one word per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("alphabet: {}\n", self.alphabet.symbols().join(" "));
        for w in &self.words {
            out.push_str(&self.alphabet.render(w));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(LanguageJson {
            alphabet: self.alphabet.symbols().to_vec(),
            words: self
                .words
                .iter()
                .map(|w| JsonWord::Indices(w.iter().map(|&s| s as usize).collect()))
                .collect(),
        })
        .expect("language serializes")
    }
}

#[derive(Serialize, Deserialize)]
pub(super) struct LanguageJson {
    #[serde(default)]
    pub alphabet: Vec<String>,
    pub words: Vec<JsonWord>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub(super) enum JsonWord {
    Indices(Vec<usize>),
    Text(String),
}

impl std::fmt::Display for FiniteLanguage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ws: Vec<String> = self.words.iter().map(|w| self.alphabet.render(w)).collect();
        write!(f, "{{{}}}", ws.join(", "))
    }
}
