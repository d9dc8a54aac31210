use super::language::{JsonWord, LanguageJson};
use super::{Alphabet, FiniteLanguage, Symbol, Word};
use crate::error::{Error, Result};

/// Parses a language file.
///
/// Two formats are accepted. The text format has an optional
/// `alphabet: a b c` header, one word per line, `#` comments and blank
/// lines. Input whose first non-blank character is `{` is read as JSON:
/// `{"alphabet": [...], "words": [[indices] | "string", ...]}`.
///
/// Without a declared alphabet, symbols are inferred in order of first
/// appearance (characters, or whitespace-separated tokens).
pub fn parse_language(text: &str) -> Result<FiniteLanguage> {
    if text.trim_start().starts_with('{') {
        return parse_json(text);
    }
    let mut declared: Option<Alphabet> = None;
    let mut raw: Vec<(usize, String)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("alphabet:") {
            if declared.is_some() || !raw.is_empty() {
                return Err(Error::Parse {
                    line: lineno,
                    message: "alphabet header must come first and only once".into(),
                });
            }
            let alpha = Alphabet::new(rest.split_whitespace()).map_err(|e| Error::Parse {
                line: lineno,
                message: e.to_string(),
            })?;
            declared = Some(alpha);
            continue;
        }
        raw.push((lineno, content.to_string()));
    }
    if raw.is_empty() {
        return Err(Error::EmptyInput);
    }
    let alphabet = match declared {
        Some(a) => a,
        None => infer_alphabet(raw.iter().map(|(_, s)| s.as_str()))?,
    };
    let mut words = Vec::with_capacity(raw.len());
    for (lineno, s) in &raw {
        let w = alphabet.parse_word(s).map_err(|e| match e {
            Error::UnknownSymbol(sym) => Error::UnknownSymbol(sym),
            other => Error::Parse {
                line: *lineno,
                message: other.to_string(),
            },
        })?;
        words.push(w);
    }
    FiniteLanguage::new(alphabet, words)
}

fn infer_alphabet<'a>(lines: impl Iterator<Item = &'a str>) -> Result<Alphabet> {
    let mut seen: Vec<String> = Vec::new();
    let mut add = |t: String| {
        if !seen.contains(&t) {
            seen.push(t);
        }
    };
    for line in lines {
        if line == "ε" {
            continue;
        }
        if line.contains(char::is_whitespace) {
            line.split_whitespace().for_each(|t| add(t.to_string()));
        } else {
            line.chars().for_each(|c| add(c.to_string()));
        }
    }
    if seen.is_empty() {
        // Only the empty word was given.
        seen.push("a".into());
    }
    Alphabet::new(seen)
}

fn parse_json(text: &str) -> Result<FiniteLanguage> {
    let doc: LanguageJson = serde_json::from_str(text)?;
    if doc.words.is_empty() {
        return Err(Error::EmptyInput);
    }
    let alphabet = if doc.alphabet.is_empty() {
        let texts: Vec<&str> = doc
            .words
            .iter()
            .filter_map(|w| match w {
                JsonWord::Text(s) => Some(s.as_str()),
                JsonWord::Indices(_) => None,
            })
            .collect();
        if texts.len() != doc.words.len() {
            return Err(Error::Json("index words require an explicit alphabet".into()));
        }
        infer_alphabet(texts.into_iter())?
    } else {
        Alphabet::new(doc.alphabet)?
    };
    let words = doc
        .words
        .iter()
        .map(|w| match w {
            JsonWord::Text(s) => alphabet.parse_word(s),
            JsonWord::Indices(ix) => ix
                .iter()
                .map(|&i| {
                    if i < alphabet.len() {
                        Ok(i as Symbol)
                    } else {
                        Err(Error::UnknownSymbol(format!("#{i}")))
                    }
                })
                .collect::<Result<Word>>(),
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteLanguage::new(alphabet, words)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_words_infer_alphabet() {
        let x = parse_language("ab\nba\n").unwrap();
        assert_eq!(x.alphabet().symbols(), &["a", "b"]);
        assert_eq!(x.len(), 2);
        assert_eq!(x.size(), 2);
    }

    #[test]
    fn example_set_with_comments() {
        let x = parse_language("# example\naa\nab\n\nba\nbaa # trailing\nbbb\n").unwrap();
        assert_eq!(x.size(), 3);
        assert_eq!(x.len(), 5);
    }

    #[test]
    fn empty_input_is_rejected() {
        assert_eq!(parse_language(""), Err(Error::EmptyInput));
        assert_eq!(parse_language("# nothing\n\n"), Err(Error::EmptyInput));
        assert_eq!(parse_language("alphabet: a b\n"), Err(Error::EmptyInput));
    }

    #[test]
    fn declared_alphabet_order_and_foreign_symbol() {
        let x = parse_language("alphabet: b a\nab\n").unwrap();
        assert_eq!(x.words()[0].symbols(), &[1, 0]);
        assert_eq!(
            parse_language("alphabet: a b\nac\n"),
            Err(Error::UnknownSymbol("c".into()))
        );
        assert!(matches!(
            parse_language("ab\nalphabet: a b\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn multi_char_tokens() {
        let x = parse_language("alphabet: x0 x1\nx0 x1\nx1\n").unwrap();
        assert_eq!(x.words()[0].symbols(), &[1]);
        assert_eq!(x.words()[1].symbols(), &[0, 1]);
    }

    #[test]
    fn json_forms() {
        let x = parse_language(r#"{"alphabet":["a","b"],"words":[[0,1],"ba"]}"#).unwrap();
        assert_eq!(x.len(), 2);
        let back = parse_language(&x.to_json().to_string()).unwrap();
        assert_eq!(back, x);
        assert!(parse_language(r#"{"alphabet":["a"],"words":[[3]]}"#).is_err());
        assert_eq!(parse_language(r#"{"words":[]}"#), Err(Error::EmptyInput));
    }

    #[test]
    fn text_round_trip() {
        let x = parse_language("alphabet: a b c\ncab\nε\nb\n").unwrap();
        assert!(x.has_empty_word());
        assert_eq!(parse_language(&x.to_text()).unwrap(), x);
    }
}
