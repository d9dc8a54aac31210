use std::collections::VecDeque;

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::lang::{Symbol, Word};

/// Shortest reset word of a complete deterministic automaton: breadth-first
/// search in the power automaton from Q to any singleton, shortlex-least
/// among the shortest.
pub fn sync_word_shortest(d: &Dfa, cap: usize) -> Result<Option<Word>> {
    if !d.is_complete() {
        return Err(Error::NotCompleteDfa);
    }
    let a = d.to_automaton();
    a.shortest_word_to(a.full_set(), |s| s.len() == 1, cap)
}

/// Pairwise merge test: a complete DFA is synchronizing iff every pair of
/// states can be sent to a single state by some word.
pub fn is_synchronizing_dfa(d: &Dfa) -> Result<bool> {
    if !d.is_complete() {
        return Err(Error::NotCompleteDfa);
    }
    let n = d.states();
    let k = d.alphabet().len() as Symbol;
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n * k as usize];
    for p in 0..n {
        for a in 0..k {
            let q = d.step(p, a).expect("complete");
            preds[q * k as usize + a as usize].push(p);
        }
    }
    let idx = |p: usize, q: usize| if p <= q { p * n + q } else { q * n + p };
    let mut merged = vec![false; n * n];
    let mut queue = VecDeque::new();
    for p in 0..n {
        merged[idx(p, p)] = true;
        queue.push_back((p, p));
    }
    while let Some((p, q)) = queue.pop_front() {
        for a in 0..k as usize {
            for &pp in &preds[p * k as usize + a] {
                for &qq in &preds[q * k as usize + a] {
                    let i = idx(pp, qq);
                    if !merged[i] {
                        merged[i] = true;
                        queue.push_back((pp, qq));
                    }
                }
            }
        }
    }
    Ok((0..n).all(|p| (p..n).all(|q| merged[idx(p, q)])))
}
