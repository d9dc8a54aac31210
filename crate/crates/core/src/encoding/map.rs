use serde::Serialize;

use crate::completeness::is_complete_language;
use crate::error::{Error, Result};
use crate::lang::{is_code, is_prefix, Alphabet, FiniteLanguage, Symbol, Word};
use crate::synchrony::{shortest_sync_pair, PairSearch};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EncodingFlags {
    pub code: bool,
    pub prefix: bool,
    pub complete: bool,
    /// `None` when the pair search ran out of budget.
    pub synchronizing: Option<bool>,
}

/// A letter-to-word map h: A → B⁺ whose image is a code, so that h
/// extends to an injective monoid morphism A* → B*.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoding {
    source: Alphabet,
    target: Alphabet,
    images: Vec<Word>,
    flags: EncodingFlags,
}

impl Encoding {
    pub fn new(source: Alphabet, target: Alphabet, images: Vec<Word>, limits: Limits) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::Precondition(format!(
                "{} images for {} source letters",
                images.len(),
                source.len()
            )));
        }
        if images.iter().any(|w| !target.contains_word(w)) {
            return Err(Error::UnknownSymbol("image outside the target alphabet".into()));
        }
        let image = FiniteLanguage::new(target.clone(), images.clone())?;
        if image.len() != images.len() {
            return Err(Error::Precondition("images are not pairwise distinct".into()));
        }
        image.require_nonempty_epsilon_free()?;
        if !is_code(&image)? {
            return Err(Error::Precondition("image is not a code".into()));
        }
        let complete = is_complete_language(&image, limits.subset_cap)?;
        let synchronizing = sync_status(&image, limits)?;
        let flags = EncodingFlags {
            code: true,
            prefix: is_prefix(&image),
            complete,
            synchronizing,
        };
        Ok(Encoding {
            source,
            target,
            images,
            flags,
        })
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn image_of(&self, a: Symbol) -> &Word {
        &self.images[a as usize]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image_language(&self) -> FiniteLanguage {
        FiniteLanguage::new(self.target.clone(), self.images.clone()).expect("validated")
    }

    pub fn flags(&self) -> EncodingFlags {
        self.flags
    }

    pub fn encode(&self, w: &[Symbol]) -> Word {
        w.iter()
            .flat_map(|&a| self.images[a as usize].iter().copied())
            .collect()
    }

    /// Splits `w` into images, for prefix images only. Returns the decoded
    /// word and the unparsed tail, which is a proper prefix of some image
    /// when the image is complete.
    pub fn decode_prefix(&self, w: &[Symbol]) -> Result<(Word, Word)> {
        if !self.flags.prefix {
            return Err(Error::Precondition("prefix decoding needs a prefix image".into()));
        }
        let mut out = Word::empty();
        let mut rest = w;
        'outer: while !rest.is_empty() {
            for (a, img) in self.images.iter().enumerate() {
                if img.is_prefix_of(rest) {
                    out.push(a as Symbol);
                    rest = &rest[img.len()..];
                    continue 'outer;
                }
            }
            break;
        }
        Ok((out, Word::from(rest)))
    }

    /// Inverse of [`encode`](Self::encode) on h(A*).
    pub fn decode(&self, w: &[Symbol]) -> Result<Word> {
        let (u, rest) = self.decode_prefix(w)?;
        if !rest.is_empty() {
            return Err(Error::Precondition("word is not in h(A*)".into()));
        }
        Ok(u)
    }

    pub fn render(&self) -> Vec<(String, String)> {
        (0..self.source.len())
            .map(|a| {
                (
                    self.source.symbol(a as Symbol).to_string(),
                    self.target.render(&self.images[a]),
                )
            })
            .collect()
    }
}

/// {h(x) : x ∈ X}.
pub fn apply_encoding(h: &Encoding, x: &FiniteLanguage) -> Result<FiniteLanguage> {
    if x.alphabet().symbols() != h.source.symbols() {
        return Err(Error::Precondition(
            "language is not over the encoding's source alphabet".into(),
        ));
    }
    FiniteLanguage::new(h.target.clone(), x.words().iter().map(|w| h.encode(w)))
}

/// Whether X is synchronizing, or `None` if the search hit a resource cap.
pub fn sync_status(x: &FiniteLanguage, limits: Limits) -> Result<Option<bool>> {
    match shortest_sync_pair(x, limits) {
        Ok(PairSearch::Found(_)) => Ok(Some(true)),
        Ok(PairSearch::NotSynchronizing) => Ok(Some(false)),
        Err(Error::BudgetExhausted { .. } | Error::SubsetCapExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Completeness and synchronization of X, h(A) and h(X) side by side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub x_complete: bool,
    pub image_complete: bool,
    pub encoded_complete: bool,
    pub x_sync: Option<bool>,
    pub image_sync: Option<bool>,
    pub encoded_sync: Option<bool>,
}

impl Transfer {
    /// h(X) complete ⟺ X and h(A) complete; meaningful for prefix h.
    pub fn completeness_transfers(&self) -> bool {
        self.encoded_complete == (self.x_complete && self.image_complete)
    }

    /// For complete X: h(X) synchronizing ⟺ X and h(A) synchronizing.
    /// `None` when some status is unknown or X is incomplete.
    pub fn synchrony_transfers(&self) -> Option<bool> {
        if !self.x_complete {
            return None;
        }
        let (x, y, hx) = (self.x_sync?, self.image_sync?, self.encoded_sync?);
        Some(hx == (x && y))
    }
}

pub fn transfer(h: &Encoding, x: &FiniteLanguage, limits: Limits) -> Result<Transfer> {
    let hx = apply_encoding(h, x)?;
    let cap = limits.subset_cap;
    let x_complete = is_complete_language(x, cap)?;
    let encoded_complete = is_complete_language(&hx, cap)?;
    let (x_sync, encoded_sync) = if x_complete {
        (sync_status(x, limits)?, sync_status(&hx, limits)?)
    } else {
        (None, None)
    };
    Ok(Transfer {
        x_complete,
        image_complete: h.flags.complete,
        encoded_complete,
        x_sync,
        image_sync: h.flags.synchronizing,
        encoded_sync,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enc(images: &[&str]) -> Encoding {
        let b = Alphabet::letters(2).unwrap();
        let images: Vec<Word> = images.iter().map(|s| b.parse_word(s).unwrap()).collect();
        Encoding::new(Alphabet::letters(images.len()).unwrap(), b, images, Limits::default()).unwrap()
    }

    #[test]
    fn concatenation() {
        let h = enc(&["ba", "aab"]);
        let x = FiniteLanguage::over_letters(2, &["ab"]).unwrap();
        let hx = apply_encoding(&h, &x).unwrap();
        assert_eq!(hx.words().len(), 1);
        assert_eq!(hx.render(&hx.words()[0]), "baaab");
        assert!(h.flags().prefix && !h.flags().complete);
    }

    #[test]
    fn identity_map() {
        let h = enc(&["a", "b"]);
        let x = FiniteLanguage::over_letters(2, &["ab", "b", "aab"]).unwrap();
        assert_eq!(apply_encoding(&h, &x).unwrap(), x);
        assert_eq!(h.flags().synchronizing, Some(true));
    }

    #[test]
    fn decoding() {
        let h = enc(&["a", "ba", "bb"]);
        let w = h.encode(&[2, 0, 1]);
        assert_eq!(h.decode(&w).unwrap().symbols(), &[2, 0, 1]);
        let (u, rest) = h.decode_prefix(&[1, 1, 0, 1]).unwrap();
        assert_eq!(u.symbols(), &[2, 0]);
        assert_eq!(rest.symbols(), &[1]);
    }

    #[test]
    fn rejects_non_codes() {
        let b = Alphabet::letters(2).unwrap();
        let images = ["a", "ab", "ba"].iter().map(|s| b.parse_word(s).unwrap()).collect();
        assert!(Encoding::new(Alphabet::letters(3).unwrap(), b.clone(), images, Limits::default()).is_err());
        let images = ["a", "a"].iter().map(|s| b.parse_word(s).unwrap()).collect();
        assert!(Encoding::new(Alphabet::letters(2).unwrap(), b, images, Limits::default()).is_err());
    }

    #[test]
    fn transfers_on_small_case() {
        let h = enc(&["a", "ba", "bb"]);
        let x = FiniteLanguage::over_letters(3, &["a", "b", "ca", "cb", "cc"]).unwrap();
        let t = transfer(&h, &x, Limits::default()).unwrap();
        assert!(t.completeness_transfers());
        assert_eq!(t.synchrony_transfers(), Some(true));
        assert_eq!(t.encoded_sync, Some(true));
    }
}
