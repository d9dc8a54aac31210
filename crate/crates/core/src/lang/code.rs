use std::collections::BTreeSet;

use super::{FiniteLanguage, Symbol, Word};
use crate::error::{Error, Result};

/// Decides unique decipherability with the Sardinas–Patterson residual
/// iteration.
///
/// The empty language is a code. A language containing ε is rejected with
/// [`Error::EmptyWordInLanguage`].
pub fn is_code(x: &FiniteLanguage) -> Result<bool> {
    if x.has_empty_word() {
        return Err(Error::EmptyWordInLanguage);
    }
    let words: Vec<&[Symbol]> = x.words().iter().map(|w| w.symbols()).collect();

    // U1 = X⁻¹X \ {ε}
    let mut current: BTreeSet<Word> = quotient(&words, &words);
    current.remove(&Word::empty());
    let mut seen: BTreeSet<BTreeSet<Word>> = BTreeSet::new();
    while !current.is_empty() {
        if current.contains(&Word::empty()) {
            return Ok(false);
        }
        if !seen.insert(current.clone()) {
            return Ok(true);
        }
        let cur: Vec<&[Symbol]> = current.iter().map(|w| w.symbols()).collect();
        // U_{i+1} = X⁻¹U_i ∪ U_i⁻¹X
        let mut next = quotient(&words, &cur);
        next.extend(quotient(&cur, &words));
        current = next;
    }
    Ok(true)
}

/// Left quotient `left⁻¹ right = { w : l·w = r }`.
fn quotient(left: &[&[Symbol]], right: &[&[Symbol]]) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for l in left {
        for r in right {
            if r.starts_with(l) {
                out.insert(Word::from(&r[l.len()..]));
            }
        }
    }
    out
}

/// True when no word of `x` is a proper prefix of another.
///
/// `{ε}` is vacuously prefix; ε alongside any other word is not.
pub fn is_prefix(x: &FiniteLanguage) -> bool {
    let ws = x.words();
    for (i, u) in ws.iter().enumerate() {
        for v in &ws[i + 1..] {
            if u.is_prefix_of(v) {
                return false;
            }
        }
    }
    true
}

/// Decides `w ∈ X*` by dynamic programming over factorization boundaries.
pub fn kleene_membership(x: &FiniteLanguage, w: &[Symbol]) -> bool {
    let n = w.len();
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for i in 0..n {
        if !reach[i] {
            continue;
        }
        for c in x.words() {
            if !c.is_empty() && w[i..].starts_with(c) {
                reach[i + c.len()] = true;
            }
        }
    }
    reach[n]
}
