use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{kraft_canonical, LengthProfile};
use crate::automata::{flower_automaton, Dfa};
use crate::error::{Error, Result};
use crate::lang::{is_prefix, FiniteLanguage, Symbol};
use crate::synchrony::is_synchronizing_dfa;

/// Knobs for the coloring search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColoringSearch {
    pub seed: u64,
    /// Colorings tried before giving up.
    pub max_attempts: u64,
    /// Graphs with at most this many vertices are searched exhaustively.
    pub exhaustive_states: usize,
}

impl Default for ColoringSearch {
    fn default() -> Self {
        ColoringSearch {
            seed: 0xC0DE,
            max_attempts: 1_000_000,
            exhaustive_states: 12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringReport {
    pub states: usize,
    pub attempts: u64,
    pub exhaustive: bool,
}

/// All distinct orderings of `items`, in lexicographic order.
fn distinct_permutations(items: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = items.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len())
            .rev()
            .find(|&j| cur[j] > cur[i - 1])
            .expect("pivot exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// A synchronizing complete prefix code with exactly the lengths of
/// `profile`, obtained by recoloring the edges of the canonical code's
/// tree automaton until it becomes synchronizing.
///
/// Each vertex keeps its multiset of out-neighbours; only the letters on
/// the edges are permuted. Small graphs are enumerated in mixed-radix
/// order with the last vertex varying fastest (the canonical coloring
/// first), larger ones are sampled from a seeded generator.
pub fn road_colored_sync_code(
    profile: &LengthProfile,
    search: ColoringSearch,
) -> Result<(FiniteLanguage, ColoringReport)> {
    if !profile.is_complete() {
        return Err(Error::Precondition(format!(
            "Kraft sum is {}, not 1",
            profile.kraft_sum()
        )));
    }
    if profile.gcd() != 1 {
        return Err(Error::Precondition(format!(
            "gcd of lengths is {}, not 1",
            profile.gcd()
        )));
    }
    let canonical = kraft_canonical(profile)?;
    let tree = Dfa::from_automaton(&flower_automaton(&canonical)?)?;
    let n = tree.states();
    let r = profile.radix;
    let choices: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|p| {
            let targets: Vec<usize> = (0..r as Symbol)
                .map(|a| tree.step(p, a).expect("complete prefix code gives a complete tree"))
                .collect();
            distinct_permutations(&targets)
        })
        .collect();
    let build = |pick: &[usize]| -> Dfa {
        let next = (0..n)
            .flat_map(|p| choices[p][pick[p]].iter().map(|&q| Some(q)))
            .collect();
        let mut accepting = vec![false; n];
        accepting[0] = true;
        Dfa::new(tree.alphabet().clone(), next, accepting).expect("same shape as the tree")
    };

    let exhaustive = n <= search.exhaustive_states;
    let mut pick = vec![0usize; n];
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    let mut attempts = 0;
    let found = loop {
        if attempts == search.max_attempts {
            break None;
        }
        attempts += 1;
        let dfa = build(&pick);
        if is_synchronizing_dfa(&dfa)? {
            break Some(dfa);
        }
        if exhaustive {
            let mut i = n;
            loop {
                if i == 0 {
                    return Err(Error::Internal(
                        "no synchronizing coloring of an aperiodic graph".into(),
                    ));
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
            }
        } else {
            for (p, c) in pick.iter_mut().zip(&choices) {
                *p = rng.gen_range(0..c.len());
            }
        }
    };
    let dfa = found.ok_or(Error::BudgetExhausted {
        budget: search.max_attempts,
    })?;

    let code = dfa.to_automaton().first_return_language(usize::MAX)?;
    let mut got = code.lengths();
    let mut want = profile.lengths.clone();
    got.sort_unstable();
    want.sort_unstable();
    if got != want || !is_prefix(&code) {
        return Err(Error::Internal("recolored code lost its length profile".into()));
    }
    Ok((
        code,
        ColoringReport {
            states: n,
            attempts,
            exhaustive,
        },
    ))
}
