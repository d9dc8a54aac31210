use std::collections::HashMap;
use std::hash::Hash;

use super::{Certification, Relation, SyncChecker, SyncPair};
use crate::automata::StateSet;
use crate::error::{Error, Result};
use crate::lang::{FiniteLanguage, Word};
use crate::Limits;

/// Outcome of an exact synchronizing-pair search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairSearch {
    Found(SyncPair),
    /// No pair exists at all: every reachable pair of word classes fails.
    NotSynchronizing,
}

impl PairSearch {
    pub fn found(self) -> Option<SyncPair> {
        match self {
            PairSearch::Found(p) => Some(p),
            PairSearch::NotSynchronizing => None,
        }
    }
}

/// Finds a synchronizing pair (u, v) ∈ X* × X* of minimal |uv|, ties broken
/// by |u|, then u and v in lexicographic order.
///
/// Candidates are codeword concatenations, grouped into classes that
/// determine the check: the images Qu and preimages Qv⁻¹ when X is a code,
/// full transition relations otherwise. All reachable classes are first
/// closed under codeword steps, which decides existence outright; then
/// shortest representatives are grown length by length until a good class
/// pair appears. `limits.pair_budget` bounds the number of class pairs
/// tested and `limits.subset_cap` the number of classes per side.
pub fn shortest_sync_pair(x: &FiniteLanguage, limits: Limits) -> Result<PairSearch> {
    let checker = SyncChecker::new(x, limits)?;
    search_with(&checker, false, &|_, _| true)
}

/// Like [`shortest_sync_pair`], restricted to pairs accepted by `accept`.
///
/// Only the shortlex-least word of each class at each length is offered to
/// the filter, so the result is the first accepted representative rather
/// than the shortest accepted pair overall. Existence is still decided
/// over all pairs, so `NotSynchronizing` keeps its meaning; when pairs exist but none passes the filter the search
/// runs until the pair budget is spent.
pub fn shortest_sync_pair_where(
    x: &FiniteLanguage,
    limits: Limits,
    accept: &dyn Fn(&Word, &Word) -> bool,
) -> Result<PairSearch> {
    let checker = SyncChecker::new(x, limits)?;
    search_with(&checker, false, accept)
}

/// The shortest u ∈ X* for which (u, ε) is a synchronizing pair, if any.
pub fn shortest_left_sync_word(x: &FiniteLanguage, limits: Limits) -> Result<Option<Word>> {
    let checker = SyncChecker::new(x, limits)?;
    Ok(search_with(&checker, true, &|_, _| true)?.found().map(|p| p.u))
}

pub(crate) fn search_with(
    checker: &SyncChecker,
    right_empty: bool,
    accept: &dyn Fn(&Word, &Word) -> bool,
) -> Result<PairSearch> {
    let a = checker.flower();
    if checker.is_code() {
        let full = a.full_set();
        run(
            checker,
            right_empty,
            accept,
            Certification::CodePath,
            full.clone(),
            |s: &StateSet, c: &Word| a.image(s, c),
            full,
            |s: &StateSet, c: &Word| a.preimage(s, c),
            |img: &StateSet, pre: &StateSet| Ok(img.intersection(pre).is_singleton_of(crate::automata::BASE)),
        )
    } else {
        let id = Relation::identity(a.states());
        run(
            checker,
            right_empty,
            accept,
            Certification::General,
            id.clone(),
            |r: &Relation, c: &Word| r.then_word(a, c),
            id,
            |r: &Relation, c: &Word| r.after_word(a, c),
            |ru: &Relation, rv: &Relation| checker.general_check_relations(ru, rv),
        )
    }
}

/// Interned classes reachable from `init` by codeword steps.
struct Closure<K> {
    classes: Vec<K>,
    ids: HashMap<K, usize>,
}

fn close<K: Clone + Eq + Hash>(
    init: K,
    codewords: &[Word],
    step: &impl Fn(&K, &Word) -> K,
    cap: usize,
    only_init: bool,
) -> Result<Closure<K>> {
    let mut ids = HashMap::new();
    ids.insert(init.clone(), 0);
    let mut classes = vec![init];
    let mut head = 0;
    while head < classes.len() && !only_init {
        for c in codewords {
            let next = step(&classes[head], c);
            if !ids.contains_key(&next) {
                ids.insert(next.clone(), classes.len());
                classes.push(next);
                if classes.len() > cap {
                    return Err(Error::SubsetCapExceeded { cap });
                }
            }
        }
        head += 1;
    }
    Ok(Closure { classes, ids })
}

/// Shortlex-least representative of each class among words of X* of one
/// exact length, sorted by representative.
type Layer = Vec<(usize, Word)>;

fn grow_layer<K: Clone + Eq + Hash>(
    layers: &[Layer],
    closure: &Closure<K>,
    codewords: &[Word],
    step: &impl Fn(&K, &Word) -> K,
    prepend: bool,
) -> Layer {
    let len = layers.len();
    let mut best: HashMap<usize, Word> = HashMap::new();
    for c in codewords.iter().filter(|c| c.len() <= len) {
        for (id, w) in &layers[len - c.len()] {
            let next = step(&closure.classes[*id], c);
            let nid = closure.ids[&next];
            let cand = if prepend { c.concat(w) } else { w.concat(c) };
            match best.get(&nid) {
                Some(cur) if cur <= &cand => {}
                _ => {
                    best.insert(nid, cand);
                }
            }
        }
    }
    let mut layer: Layer = best.into_iter().collect();
    layer.sort_by(|a, b| a.1.cmp(&b.1));
    layer
}

#[allow(clippy::too_many_arguments)]
fn run<K: Clone + Eq + Hash>(
    checker: &SyncChecker,
    right_empty: bool,
    accept: &dyn Fn(&Word, &Word) -> bool,
    certified_by: Certification,
    init_u: K,
    step_u: impl Fn(&K, &Word) -> K,
    init_v: K,
    step_v: impl Fn(&K, &Word) -> K,
    good: impl Fn(&K, &K) -> Result<bool>,
) -> Result<PairSearch> {
    let limits = checker.limits();
    let codewords = checker.language().words();
    let us = close(init_u, codewords, &step_u, limits.subset_cap, false)?;
    let vs = close(init_v, codewords, &step_v, limits.subset_cap, right_empty)?;

    let mut tested: u64 = 0;
    let mut spend = |n: u64| {
        tested += n;
        if tested > limits.pair_budget {
            Err(Error::BudgetExhausted {
                budget: limits.pair_budget,
            })
        } else {
            Ok(())
        }
    };
    let mut table = vec![false; us.classes.len() * vs.classes.len()];
    let mut any = false;
    for (i, ku) in us.classes.iter().enumerate() {
        for (j, kv) in vs.classes.iter().enumerate() {
            spend(1)?;
            if good(ku, kv)? {
                table[i * vs.classes.len() + j] = true;
                any = true;
            }
        }
    }
    if !any {
        return Ok(PairSearch::NotSynchronizing);
    }

    let mut fwd: Vec<Layer> = vec![vec![(0, Word::empty())]];
    let mut bwd: Vec<Layer> = vec![vec![(0, Word::empty())]];
    for total in 0.. {
        spend(1)?;
        while fwd.len() <= total {
            let l = grow_layer(&fwd, &us, codewords, &step_u, false);
            fwd.push(l);
        }
        while bwd.len() <= total {
            let l = if right_empty {
                Vec::new()
            } else {
                grow_layer(&bwd, &vs, codewords, &step_v, true)
            };
            bwd.push(l);
        }
        for ulen in 0..=total {
            for (iu, u) in &fwd[ulen] {
                for (iv, v) in &bwd[total - ulen] {
                    if table[iu * vs.classes.len() + iv] {
                        spend(1)?;
                        if !accept(u, v) {
                            continue;
                        }
                        return Ok(PairSearch::Found(SyncPair {
                            u: u.clone(),
                            v: v.clone(),
                            certified_by,
                        }));
                    }
                }
            }
        }
    }
    unreachable!("the budget bounds the number of lengths tried")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lang(ws: &[&str]) -> FiniteLanguage {
        FiniteLanguage::over_letters(2, ws).unwrap()
    }

    #[test]
    fn example_set_minimum_is_four() {
        let x = lang(&["aa", "ab", "ba", "baa", "bbb"]);
        let p = shortest_sync_pair(&x, Limits::default()).unwrap().found().unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.certified_by, Certification::General);
        let c = SyncChecker::new(&x, Limits::default()).unwrap();
        assert!(c.general_check(&p.u, &p.v).unwrap());
    }

    #[test]
    fn full_alphabet_gives_empty_pair() {
        let p = shortest_sync_pair(&lang(&["a", "b"]), Limits::default())
            .unwrap()
            .found()
            .unwrap();
        assert!(p.is_empty());
    }

    #[test]
    fn group_code_is_not_synchronizing() {
        assert_eq!(
            shortest_sync_pair(&lang(&["aa", "ab", "ba", "bb"]), Limits::default()).unwrap(),
            PairSearch::NotSynchronizing
        );
        assert_eq!(
            shortest_sync_pair(&lang(&["a"]), Limits::default()).unwrap(),
            PairSearch::Found(SyncPair {
                u: Word::empty(),
                v: Word::empty(),
                certified_by: Certification::CodePath
            })
        );
    }

    #[test]
    fn left_word_for_prefix_code() {
        let x = lang(&["a", "baaa", "baab", "bab", "bb"]);
        let u = shortest_left_sync_word(&x, Limits::default()).unwrap().unwrap();
        let c = SyncChecker::new(&x, Limits::default()).unwrap();
        assert!(c.is_sync_pair(&u, &[]).unwrap());
        assert!(u.len() <= 3);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let limits = Limits {
            pair_budget: 1,
            ..Limits::default()
        };
        let x = lang(&["aa", "ab", "ba", "baa", "bbb"]);
        assert!(matches!(
            shortest_sync_pair(&x, limits),
            Err(Error::BudgetExhausted { .. })
        ));
    }
}
