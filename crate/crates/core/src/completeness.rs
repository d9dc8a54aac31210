//! Completeness, shortest incompletable words and completion witnesses.
//!
//! All decisions run on the flower automaton of X with Q its full state
//! set: a word w has an X-completion exactly when Qw ≠ ∅.

use std::collections::HashMap;

use serde::Serialize;

use crate::automata::{flower_automaton, Automaton, StateSet, BASE};
use crate::error::{Error, Result};
use crate::lang::{kleene_membership, FiniteLanguage, Symbol, Word};

/// A pair (r, s) with r·w·s ∈ X*.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletionWitness {
    pub r: Word,
    pub s: Word,
    pub w: Word,
    /// Whether r itself lies in X*.
    pub left_in_star: bool,
}

impl CompletionWitness {
    pub fn verify(&self, x: &FiniteLanguage) -> bool {
        let full = self.r.concat(&self.w).concat(&self.s);
        kleene_membership(x, &full) && (!self.left_in_star || kleene_membership(x, &self.r))
    }
}

/// The shortlex-least shortest word w with Qw = ∅ in `a`, if any.
pub fn shortest_incompletable_in(a: &Automaton, cap: usize) -> Result<Option<Word>> {
    a.shortest_word_to(a.full_set(), StateSet::is_empty, cap)
}

/// Shortest incompletable word of X, lexicographically least among the
/// shortest; `None` when X is complete.
pub fn shortest_incompletable(x: &FiniteLanguage, cap: usize) -> Result<Option<Word>> {
    shortest_incompletable_in(&flower_automaton(x)?, cap)
}

pub fn is_complete_language(x: &FiniteLanguage, cap: usize) -> Result<bool> {
    Ok(shortest_incompletable(x, cap)?.is_none())
}

/// True when w is a factor of some word of X*.
pub fn is_completable(x: &FiniteLanguage, w: &[Symbol]) -> Result<bool> {
    let a = flower_automaton(x)?;
    Ok(!a.step_forward(&a.full_set(), w)?.is_empty())
}

/// Shortest labels of paths from each state back to the base.
pub(crate) fn words_to_base(a: &Automaton) -> Vec<Option<Word>> {
    (0..a.states()).map(|q| a.shortest_path_word(q, BASE)).collect()
}

/// Finds an X-completion (r, s) of `w`.
///
/// With `trim`, the witness minimizes |r| + |s| (then |r|, then shortlex
/// r and s); since flower states are proper prefixes of codewords this
/// gives |r|, |s| ≤ ℓ(X) − 1, which is checked. Without `trim` the first
/// witness in state order is returned.
pub fn find_completion(x: &FiniteLanguage, w: &[Symbol], trim: bool) -> Result<Option<CompletionWitness>> {
    let a = flower_automaton(x)?;
    a.step_forward(&a.full_set(), w)?;
    let to_base = words_to_base(&a);
    let mut best: Option<(Word, Word)> = None;
    for p in 0..a.states() {
        let img = a.image(&StateSet::singleton(a.states(), p), w);
        if img.is_empty() {
            continue;
        }
        let Some(r) = a.shortest_path_word(BASE, p) else {
            continue;
        };
        for q in img.iter() {
            let Some(s) = to_base[q].clone() else { continue };
            let better = match &best {
                None => true,
                Some((br, bs)) => (r.len() + s.len(), r.len(), &r, &s) < (br.len() + bs.len(), br.len(), br, bs),
            };
            if better {
                best = Some((r.clone(), s));
            }
            if !trim {
                break;
            }
        }
        if !trim && best.is_some() {
            break;
        }
    }
    let Some((r, s)) = best else { return Ok(None) };
    if trim {
        let bound = x.size().saturating_sub(1);
        if r.len() > bound || s.len() > bound {
            return Err(Error::Internal(format!(
                "trimmed completion exceeds ℓ(X) − 1 = {bound}: |r| = {}, |s| = {}",
                r.len(),
                s.len()
            )));
        }
    }
    let left_in_star = kleene_membership(x, &r);
    Ok(Some(CompletionWitness {
        r,
        s,
        w: Word::from(w),
        left_in_star,
    }))
}

/// Finds an X-completion (y, s) of `w` with y ∈ X*.
///
/// Breadth-first search over the subsets δ(1, y), one codeword per step.
/// The witness minimizes the number of codewords in y, then |s|. Returns
/// `None` when the reachable subsets are exhausted without success, which
/// happens only when X is incomplete.
pub fn left_star_completion(x: &FiniteLanguage, w: &[Symbol], cap: usize) -> Result<Option<CompletionWitness>> {
    let a = flower_automaton(x)?;
    a.step_forward(&a.full_set(), w)?;
    let to_base = words_to_base(&a);

    // shortest closing word s from some q ∈ δ(S, w)
    let close = |set: &StateSet| -> Option<Word> { a.image(set, w).iter().filter_map(|q| to_base[q].clone()).min() };

    let mut index: HashMap<StateSet, usize> = HashMap::new();
    let mut nodes: Vec<(StateSet, Word)> = vec![(a.base_set(), Word::empty())];
    index.insert(a.base_set(), 0);
    let mut level = vec![0usize];
    while !level.is_empty() {
        let hit = level
            .iter()
            .filter_map(|&i| close(&nodes[i].0).map(|s| (s.len(), i, s)))
            .min_by_key(|(len, i, _)| (*len, *i));
        if let Some((_, i, s)) = hit {
            let y = nodes[i].1.clone();
            return Ok(Some(CompletionWitness {
                r: y,
                s,
                w: Word::from(w),
                left_in_star: true,
            }));
        }
        let mut next_level = Vec::new();
        for &i in &level {
            for c in x.words() {
                let img = a.image(&nodes[i].0, c);
                if img.is_empty() || index.contains_key(&img) {
                    continue;
                }
                let y = nodes[i].1.concat(c);
                index.insert(img.clone(), nodes.len());
                next_level.push(nodes.len());
                nodes.push((img, y));
                if nodes.len() > cap {
                    return Err(Error::SubsetCapExceeded { cap });
                }
            }
        }
        level = next_level;
    }
    Ok(None)
}

/// Independent oracle: tests every word up to `max_len` in shortlex order
/// for a completion r·w·s ∈ X* with |r|, |s| ≤ ℓ(X) − 1, using only
/// [`kleene_membership`]. Meant for small inputs.
pub fn brute_force_incompletable(x: &FiniteLanguage, max_len: usize) -> Result<Option<Word>> {
    x.require_nonempty_epsilon_free()?;
    let contexts = short_contexts(x);
    for len in 1..=max_len {
        for w in all_words(x.alphabet().len(), len) {
            if !completable_within(x, &contexts, &w) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// The same oracle for a single word.
pub fn brute_force_completable(x: &FiniteLanguage, w: &[Symbol]) -> Result<bool> {
    x.require_nonempty_epsilon_free()?;
    Ok(completable_within(x, &short_contexts(x), w))
}

fn short_contexts(x: &FiniteLanguage) -> Vec<Word> {
    (0..x.size())
        .flat_map(|len| all_words(x.alphabet().len(), len))
        .collect()
}

fn completable_within(x: &FiniteLanguage, contexts: &[Word], w: &[Symbol]) -> bool {
    contexts.iter().any(|r| {
        let rw = r.concat(w);
        contexts.iter().any(|s| kleene_membership(x, &rw.concat(s)))
    })
}

/// All words of length `len` over `d` letters, in lexicographic order.
pub fn all_words(d: usize, len: usize) -> impl Iterator<Item = Word> {
    let total = d.checked_pow(len as u32).expect("word count overflow");
    (0..total).map(move |mut i| {
        let mut w = vec![0 as Symbol; len];
        for slot in w.iter_mut().rev() {
            *slot = (i % d) as Symbol;
            i /= d;
        }
        Word::new(w)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: usize = 1 << 20;

    fn lang(ws: &[&str]) -> FiniteLanguage {
        FiniteLanguage::over_letters(2, ws).unwrap()
    }

    fn word(x: &FiniteLanguage, s: &str) -> Word {
        x.alphabet().parse_word(s).unwrap()
    }

    #[test]
    fn example_set_has_length_seven_witness() {
        let x = lang(&["aa", "ab", "ba", "baa", "bbb"]);
        let w = shortest_incompletable(&x, CAP).unwrap().unwrap();
        assert_eq!(w.len(), 7);
        assert!(!is_completable(&x, &word(&x, "abbabba")).unwrap());
        assert!(!is_complete_language(&x, CAP).unwrap());
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(shortest_incompletable(&lang(&["a", "b"]), CAP).unwrap(), None);
        let x = lang(&["aa"]);
        assert_eq!(shortest_incompletable(&x, CAP).unwrap(), Some(word(&x, "b")));
        assert_eq!(brute_force_incompletable(&x, 1).unwrap(), Some(word(&x, "b")));
        assert_eq!(brute_force_incompletable(&lang(&["a", "b"]), 4).unwrap(), None);
        assert!(is_complete_language(&FiniteLanguage::over_letters(1, &["a"]).unwrap(), CAP).unwrap());
        assert!(is_complete_language(&lang(&["a", "baaa", "baab", "bab", "bb"]), CAP).unwrap());
        assert_eq!(
            shortest_incompletable(&lang(&["ε", "a"]), CAP),
            Err(Error::EmptyWordInLanguage)
        );
    }

    #[test]
    fn completion_of_bbabb_is_trimmed() {
        let x = lang(&["aa", "ab", "ba", "baa", "bbb"]);
        let w = word(&x, "bbabb");
        let c = find_completion(&x, &w, true).unwrap().unwrap();
        assert!(c.verify(&x));
        assert!(c.r.len() <= 2 && c.s.len() <= 2);
        // the witness b·bbabb·aa is valid too
        assert!(kleene_membership(&x, &word(&x, "bbbabbaa")));
        let loose = find_completion(&x, &w, false).unwrap().unwrap();
        assert!(loose.verify(&x));
    }

    #[test]
    fn completion_edge_cases() {
        let x = lang(&["aa", "ab", "ba", "baa", "bbb"]);
        let c = find_completion(&x, &word(&x, "abba"), true).unwrap().unwrap();
        assert_eq!((c.r.len(), c.s.len()), (0, 0));
        assert!(c.left_in_star);
        let y = lang(&["aa"]);
        assert_eq!(find_completion(&y, &word(&y, "b"), true).unwrap(), None);
    }

    #[test]
    fn left_star_completions() {
        let x = lang(&["a", "ba", "bb"]);
        let c = left_star_completion(&x, &word(&x, "b"), CAP).unwrap().unwrap();
        assert_eq!((c.r.clone(), c.s.clone()), (Word::empty(), word(&x, "a")));
        let c = left_star_completion(&x, &word(&x, "a"), CAP).unwrap().unwrap();
        assert_eq!((c.r.len(), c.s.len()), (0, 0));
        let inc = lang(&["aa", "ab", "ba", "baa", "bbb"]);
        assert_eq!(left_star_completion(&inc, &word(&inc, "abbabba"), CAP).unwrap(), None);
    }

    #[test]
    fn brute_force_matches_on_example() {
        let x = lang(&["aa", "ab", "ba", "baa", "bbb"]);
        let fast = shortest_incompletable(&x, CAP).unwrap().unwrap();
        let slow = brute_force_incompletable(&x, 7).unwrap().unwrap();
        assert_eq!(fast, slow);
        assert_eq!(brute_force_incompletable(&x, 6).unwrap(), None);
    }
}
