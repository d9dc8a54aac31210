//! Oracles and instance generators shared by the integration suites.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use codesync::completeness::all_words;
use codesync::lang::{kleene_membership, Alphabet, FiniteLanguage, Word};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn lang(d: usize, words: &[&str]) -> FiniteLanguage {
    FiniteLanguage::over_letters(d, words).unwrap()
}

pub fn word(x: &FiniteLanguage, s: &str) -> Word {
    x.alphabet().parse_word(s).unwrap()
}

/// Nonempty words of length ≤ `max` over `d` letters, shortlex.
pub fn words_up_to(d: usize, max: usize) -> Vec<Word> {
    (1..=max).flat_map(|len| all_words(d, len)).collect()
}

/// Every binary language with 1 to 3 words of length 1 to 3.
pub fn exhaustive_corpus() -> Vec<FiniteLanguage> {
    let universe = words_up_to(2, 3);
    let alphabet = Alphabet::letters(2).unwrap();
    let n = universe.len();
    let mut out = Vec::new();
    for i in 0..n {
        out.push(FiniteLanguage::new(alphabet.clone(), [universe[i].clone()]).unwrap());
        for j in i + 1..n {
            out.push(FiniteLanguage::new(alphabet.clone(), [universe[i].clone(), universe[j].clone()]).unwrap());
            for k in j + 1..n {
                let ws = [universe[i].clone(), universe[j].clone(), universe[k].clone()];
                out.push(FiniteLanguage::new(alphabet.clone(), ws).unwrap());
            }
        }
    }
    out
}

/// Seeded random languages. Each draw picks a shape (letters, word count,
/// max length) from a fixed menu sized so that 2·ℓ·|X| ≤ 18, then draws
/// words uniformly from A^{1..ℓ}.
pub fn random_corpus(seed: u64, count: usize) -> Vec<FiniteLanguage> {
    const SHAPES: [(usize, usize, usize); 4] = [(2, 4, 2), (2, 3, 3), (2, 2, 4), (3, 3, 3)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (d, max_words, max_len) = *SHAPES.choose(&mut rng).unwrap();
            let universe = words_up_to(d, max_len);
            let k = rng.gen_range(2..=max_words);
            let ws: Vec<Word> = (0..k).map(|_| universe.choose(&mut rng).unwrap().clone()).collect();
            FiniteLanguage::new(Alphabet::letters(d).unwrap(), ws).unwrap()
        })
        .collect()
}

/// Brute-force code test: enumerates codeword sequences with total length
/// ≤ 2·ℓ(X)·|X| and returns a word produced by two of them.
pub fn ambiguous_word(x: &FiniteLanguage) -> Option<Word> {
    let limit = 2 * x.size() * x.len();
    let mut seen = HashSet::new();
    let mut stack = vec![Word::empty()];
    while let Some(w) = stack.pop() {
        for c in x.words() {
            let next = w.concat(c);
            if next.len() > limit {
                continue;
            }
            if !seen.insert(next.clone()) {
                return Some(next);
            }
            stack.push(next);
        }
    }
    None
}

/// Number of factorizations of `w` over X.
pub fn factorizations(x: &FiniteLanguage, w: &[u8]) -> u64 {
    let mut ways = vec![0u64; w.len() + 1];
    ways[0] = 1;
    for end in 1..=w.len() {
        for c in x.words() {
            let k = c.len();
            if k <= end && &w[end - k..end] == c.symbols() {
                ways[end] += ways[end - k];
            }
        }
    }
    ways[w.len()]
}

/// Distinct words of X* of length ≤ `max`, ε included, shortlex.
pub fn star_words(x: &FiniteLanguage, max: usize) -> Vec<Word> {
    let mut seen = BTreeSet::new();
    let mut frontier = vec![Word::empty()];
    seen.insert(Word::empty());
    while let Some(w) = frontier.pop() {
        for c in x.words() {
            let next = w.concat(c);
            if next.len() <= max && seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

/// All words of length ≤ `max` over `d` letters, ε included.
pub fn contexts(d: usize, max: usize) -> Vec<Word> {
    (0..=max).flat_map(|len| all_words(d, len)).collect()
}

/// Searches contexts r, s of length ≤ `max` with r·uv·s ∈ X* but
/// r·u ∉ X* or v·s ∉ X*.
pub fn sync_pair_violation(x: &FiniteLanguage, u: &Word, v: &Word, max: usize) -> Option<(Word, Word)> {
    let ctx = contexts(x.alphabet().len(), max);
    let uv = u.concat(v);
    for r in &ctx {
        let ruv = r.concat(&uv);
        for s in &ctx {
            if kleene_membership(x, &ruv.concat(s))
                && !(kleene_membership(x, &r.concat(u)) && kleene_membership(x, &v.concat(s)))
            {
                return Some((r.clone(), s.clone()));
            }
        }
    }
    None
}

/// Searches contexts of length ≤ `max` breaking the constant property of c.
pub fn constant_violation(x: &FiniteLanguage, c: &Word, max: usize) -> bool {
    let ctx = contexts(x.alphabet().len(), max);
    let mut lefts = Vec::new();
    let mut rights = Vec::new();
    for r in &ctx {
        let rc = r.concat(c);
        for s in &ctx {
            if kleene_membership(x, &rc.concat(s)) {
                lefts.push(r.clone());
                rights.push(s.clone());
            }
        }
    }
    lefts.iter().any(|r| {
        let rc = r.concat(c);
        rights.iter().any(|s| !kleene_membership(x, &rc.concat(s)))
    })
}

/// X ∩ X²X* = ∅.
pub fn is_minimal_generating(x: &FiniteLanguage) -> bool {
    x.words().iter().all(|w| {
        let rest: Vec<Word> = x.words().iter().filter(|c| *c != w).cloned().collect();
        let others = FiniteLanguage::new(x.alphabet().clone(), rest).unwrap();
        !kleene_membership(&others, w)
    })
}

/// Leaves of a random complete `d`-ary tree with `leaves` leaves and
/// depth ≤ `max_depth`, built by splitting random shallow leaves. Falls
/// short of `leaves` when the depth bound blocks further splits.
pub fn random_tree_code<R: Rng>(rng: &mut R, d: usize, leaves: usize, max_depth: usize) -> Vec<Word> {
    let mut out: Vec<Word> = all_words(d, 1).collect();
    while out.len() + d - 1 <= leaves {
        let open: Vec<usize> = (0..out.len()).filter(|&i| out[i].len() < max_depth).collect();
        let Some(&i) = open.choose(rng) else { break };
        let w = out.swap_remove(i);
        out.extend((0..d).map(|a| w.concat(&[a as u8])));
    }
    out
}
