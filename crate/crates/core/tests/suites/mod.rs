//! Property suites over instance corpora. Each returns an [`Outcome`]
//! instead of panicking so that callers can report counts.
#![allow(dead_code)]

use std::time::{Duration, Instant};

use codesync::automata::flower_automaton;
use codesync::completeness::{brute_force_incompletable, is_complete_language, shortest_incompletable};
use codesync::encoding::{road_colored_sync_code, sync_status, transfer, ColoringSearch, Encoding, LengthProfile};
use codesync::lang::{is_code, is_prefix, Alphabet, FiniteLanguage, Word};
use codesync::reduction::{synchronizing_pair_via_reduction, ReductionTrace, Side, SideRecord};
use codesync::synchrony::{cerny_family, is_constant, SyncChecker};
use codesync::Limits;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::common::*;

const CAP: usize = 1 << 20;

#[derive(Debug, Default)]
pub struct Outcome {
    pub checked: usize,
    pub violations: Vec<String>,
    pub inconclusive: usize,
}

impl Outcome {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, holds: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !holds {
            self.violations.push(what());
        }
    }

    fn merge(&mut self, other: Outcome) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self.inconclusive += other.inconclusive;
    }
}

fn show(x: &FiniteLanguage) -> String {
    x.words().iter().map(|w| x.render(w)).collect::<Vec<_>>().join(",")
}

pub const CORPUS_SEED: u64 = 0x5EED_0001;

/// The exhaustive binary corpus followed by 500 seeded random languages.
pub fn oracle_corpus() -> Vec<FiniteLanguage> {
    let mut all = exhaustive_corpus();
    all.extend(random_corpus(CORPUS_SEED, 500));
    all
}

pub fn is_code_vs_factorizations(corpus: &[FiniteLanguage]) -> Outcome {
    let mut out = Outcome::default();
    for x in corpus {
        let witness = ambiguous_word(x);
        let brute = match &witness {
            Some(w) => factorizations(x, w) < 2,
            None => true,
        };
        out.check(is_code(x).unwrap() == brute, || show(x));
    }
    out
}

pub fn incompletable_vs_brute_force(corpus: &[FiniteLanguage]) -> Outcome {
    let mut out = Outcome::default();
    for x in corpus {
        let agrees = match shortest_incompletable(x, CAP).unwrap() {
            // the oracle scans shortlex up to |w|, so equality fixes both
            // existence and the minimal length
            Some(w) => brute_force_incompletable(x, w.len()).unwrap() == Some(w),
            None => brute_force_incompletable(x, 8).unwrap().is_none(),
        };
        out.check(agrees, || show(x));
    }
    out
}

pub fn code_path_vs_general(corpus: &[FiniteLanguage]) -> Outcome {
    let mut out = Outcome::default();
    for x in corpus.iter().filter(|x| is_code(x).unwrap()) {
        let checker = SyncChecker::new(x, Limits::default()).unwrap();
        let star = star_words(x, 6);
        for u in &star {
            for v in star.iter().filter(|v| u.len() + v.len() <= 6) {
                let general = checker.general_check(u, v).unwrap();
                out.check(checker.code_check(u, v) == general, || {
                    format!("{} ({}, {})", show(x), x.render(u), x.render(v))
                });
            }
        }
    }
    out
}

/// Synchronizing pairs are constants and constants in X* give pairs
/// (c, c), over all pairs and words of X* up to length `max`. Each side
/// is also checked against bounded definitional searches.
pub fn constants_and_pairs(corpus: &[FiniteLanguage], max: usize) -> (Outcome, usize, usize) {
    let mut out = Outcome::default();
    let (mut pairs, mut constants) = (0, 0);
    for x in corpus {
        if sync_status(x, Limits::default()).unwrap() != Some(true) {
            continue;
        }
        let checker = SyncChecker::new(x, Limits::default()).unwrap();
        let star = star_words(x, max);
        for u in &star {
            for v in star.iter().filter(|v| u.len() + v.len() <= max) {
                if !checker.is_sync_pair(u, v).unwrap() {
                    continue;
                }
                pairs += 1;
                let c = u.concat(v);
                out.check(is_constant(&checker, &c).unwrap().holds, || {
                    format!(
                        "{}: ({}, {}) is a pair but uv is not a constant",
                        show(x),
                        x.render(u),
                        x.render(v)
                    )
                });
                out.check(sync_pair_violation(x, u, v, 2).is_none(), || {
                    format!(
                        "{}: ({}, {}) has a bounded counterexample",
                        show(x),
                        x.render(u),
                        x.render(v)
                    )
                });
            }
        }
        for c in &star {
            if !is_constant(&checker, c).unwrap().holds {
                continue;
            }
            constants += 1;
            out.check(checker.is_sync_pair(c, c).unwrap(), || {
                format!("{}: constant {} but ({0}, {0}) is not a pair", show(x), x.render(c))
            });
            out.check(!constant_violation(x, c, 2), || {
                format!("{}: constant {} has a bounded counterexample", show(x), x.render(c))
            });
        }
    }
    (out, pairs, constants)
}

pub fn flower_determinism(corpus: &[FiniteLanguage]) -> Outcome {
    let mut out = Outcome::default();
    for x in corpus.iter().filter(|x| is_minimal_generating(x)) {
        let deterministic = flower_automaton(x).unwrap().is_deterministic();
        out.check(deterministic == is_prefix(x), || show(x));
    }
    out
}

/// Complete synchronizing codes for the reduction suites: those of the
/// oracle corpus, seeded random ones with ℓ ≤ 5, the example code and
/// two members of the Černý family.
pub fn reduction_instances(seed: u64, random: usize) -> Vec<FiniteLanguage> {
    let limits = Limits::default();
    let mut all: Vec<FiniteLanguage> = oracle_corpus()
        .into_iter()
        .filter(|x| {
            is_code(x).unwrap()
                && is_complete_language(x, CAP).unwrap()
                && sync_status(x, limits).unwrap() == Some(true)
        })
        .collect();
    all.sort_by_key(show);
    all.dedup();
    all.extend(codesync::experiment::random_complete_sync_codes(random, 5, seed, limits).unwrap());
    all.push(lang(2, &["a", "baaa", "baab", "bab", "bb"]));
    all.push(cerny_family(3).unwrap());
    all.push(cerny_family(4).unwrap());
    all
}

fn check_side(out: &mut Outcome, x: &FiniteLanguage, n: usize, side: &SideRecord) {
    let Some(y) = &side.y else {
        return;
    };
    let inc = side
        .incompletable
        .as_ref()
        .expect("an A′ side records its incompletable word");
    let name = || format!("{} {:?} v={}", show(x), side.side, x.render(&side.v_side));
    out.check(y.size() <= n, || format!("ℓ(Y) > ℓ(X): {}", name()));
    let y_inc = shortest_incompletable(y, CAP).unwrap();
    out.check(y_inc.as_ref().map(|w| w.len()) == Some(inc.len()), || {
        format!("Y complete or length differs: {}", name())
    });
    if inc.len() <= 4 {
        let brute = brute_force_incompletable(y, inc.len()).unwrap();
        out.check(brute.map(|w| w.len()) == Some(inc.len()), || {
            format!("oracle length differs: {}", name())
        });
    }
    out.check(side.w.len() <= inc.len(), || format!("|w| > |v|: {}", name()));
    let a = flower_automaton(x).unwrap();
    let q = a.full_set();
    let included = match side.side {
        Side::Left => a.image(&q, &side.w).is_subset(&a.image(&q, &side.v_side)),
        Side::Right => a.preimage(&q, &side.w).is_subset(&a.preimage(&q, &side.v_side)),
    };
    out.check(included, || format!("inclusion fails: {}", name()));
}

fn check_trace(out: &mut Outcome, x: &FiniteLanguage, trace: &ReductionTrace) {
    check_side(out, x, trace.n, &trace.left);
    check_side(out, x, trace.n, &trace.right);
    out.check(trace.ledger.holds && trace.ledger.prefix_holds != Some(false), || {
        format!("{} ledger {:?}", show(x), trace.ledger)
    });
}

/// Runs the pipeline on each instance with the searched pair, and on the
/// first `given` instances with every synchronizing pair up to length 5.
/// Checks ℓ(Y) ≤ ℓ(X), incompleteness of Y, the word bound and inclusion
/// of each extracted word, and the length ledger; any pipeline error is a
/// violation.
pub fn reduction_runs(instances: &[FiniteLanguage], given: usize) -> Outcome {
    let limits = Limits::default();
    let mut out = Outcome::default();
    for (i, x) in instances.iter().enumerate() {
        let mut inputs = vec![None];
        if i < given {
            let checker = SyncChecker::new(x, limits).unwrap();
            let star = star_words(x, 5);
            for u in &star {
                for v in star.iter().filter(|v| u.len() + v.len() <= 5) {
                    if checker.is_sync_pair(u, v).unwrap() {
                        inputs.push(Some((u.clone(), v.clone())));
                    }
                }
            }
        }
        for pair in inputs {
            match synchronizing_pair_via_reduction(x, pair.clone(), limits) {
                Ok((_, trace)) => check_trace(&mut out, x, &trace),
                Err(e) => out.check(false, || format!("{} {:?}: {e}", show(x), pair)),
            }
        }
    }
    out
}

/// A random binary prefix encoding of `d` letters: leaves of a random tree,
/// one dropped when `complete` is false, shuffled onto the letters.
fn random_prefix_images<R: Rng>(rng: &mut R, d: usize, complete: bool) -> Vec<Word> {
    let leaves = if complete { d } else { d + 1 };
    let mut images = random_tree_code(rng, 2, leaves, 3);
    images.shuffle(rng);
    images.truncate(d);
    images
}

fn random_source_language<R: Rng>(rng: &mut R, d: usize) -> FiniteLanguage {
    let alphabet = Alphabet::letters(d).unwrap();
    let words = match rng.gen_range(0..4) {
        0 => {
            let universe = words_up_to(d, 3);
            let k = rng.gen_range(2..=4);
            (0..k).map(|_| universe.choose(rng).unwrap().clone()).collect()
        }
        1 => {
            let k = rng.gen_range(d..=5);
            random_tree_code(rng, d, k, 3).iter().map(Word::reversed).collect()
        }
        _ => {
            let k = rng.gen_range(d..=5);
            random_tree_code(rng, d, k, 3)
        }
    };
    FiniteLanguage::new(alphabet, words).unwrap()
}

pub struct TransferOutcome {
    pub completeness: Outcome,
    pub synchrony: Outcome,
}

/// Seeded (h, X) instances. h(A) is a random binary prefix code, complete
/// or not, reversed into a suffix code one time in five; X is a random set
/// or a random prefix or suffix code over d ∈ {2, 3} letters. Completeness
/// transfer is checked for prefix h, synchrony transfer for complete X.
pub fn encoding_transfers(seed: u64, count: usize) -> TransferOutcome {
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut completeness = Outcome::default();
    let mut synchrony = Outcome::default();
    for _ in 0..count {
        let d = rng.gen_range(2..=3);
        let complete = rng.gen_bool(0.7);
        let mut images = random_prefix_images(&mut rng, d, complete);
        let reversed = rng.gen_bool(0.2);
        if reversed {
            images = images.iter().map(Word::reversed).collect();
        }
        let h = Encoding::new(
            Alphabet::letters(d).unwrap(),
            Alphabet::letters(2).unwrap(),
            images,
            limits,
        )
        .unwrap();
        let x = random_source_language(&mut rng, d);
        let t = transfer(&h, &x, limits).unwrap();
        let name = || format!("h = {:?}, X = {}", h.render(), show(&x));
        if !reversed {
            completeness.check(t.completeness_transfers(), || format!("{} {t:?}", name()));
        }
        if t.x_complete {
            match t.synchrony_transfers() {
                Some(ok) => synchrony.check(ok, || format!("{} {t:?}", name())),
                None => synchrony.inconclusive += 1,
            }
        }
    }
    TransferOutcome {
        completeness,
        synchrony,
    }
}

/// Every multiset of lengths with at most `max_words` entries whose Kraft
/// sum over `radix` letters is exactly 1, nondecreasing.
pub fn complete_profiles(radix: usize, max_words: usize) -> Vec<Vec<usize>> {
    let max_len = max_words - 1;
    let unit = radix.pow(max_len as u32);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn walk(
        radix: usize,
        max_len: usize,
        max_words: usize,
        unit: usize,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == max_words {
            return;
        }
        let from = cur.last().copied().unwrap_or(1);
        for k in from..=max_len {
            let w = unit / radix.pow(k as u32);
            if w <= left {
                cur.push(k);
                walk(radix, max_len, max_words, unit, left - w, cur, out);
                cur.pop();
            }
        }
    }
    walk(radix, max_len, max_words, unit, unit, &mut cur, &mut out);
    out
}

/// Runs the coloring search on every complete aperiodic profile with at
/// most eight codewords over two and three letters, checking the result
/// independently: exact lengths, prefix, complete, synchronizing by pair
/// search. Returns the outcome and the slowest single run.
pub fn constructor_profiles() -> (Outcome, Duration) {
    let limits = Limits::default();
    let mut out = Outcome::default();
    let mut slowest = Duration::ZERO;
    for radix in [2, 3] {
        for lengths in complete_profiles(radix, 8) {
            let profile = LengthProfile::new(radix, lengths.clone()).unwrap();
            if profile.gcd() != 1 {
                continue;
            }
            let start = Instant::now();
            let result = road_colored_sync_code(&profile, ColoringSearch::default());
            slowest = slowest.max(start.elapsed());
            let Ok((y, _)) = result else {
                out.check(false, || format!("radix {radix} {lengths:?}: {:?}", result.err()));
                continue;
            };
            let mut got = y.lengths();
            got.sort_unstable();
            let verified = got == lengths
                && is_prefix(&y)
                && is_complete_language(&y, CAP).unwrap()
                && sync_status(&y, limits).unwrap() == Some(true);
            out.check(verified, || format!("radix {radix} {lengths:?} gave {}", show(&y)));
        }
    }
    (out, slowest)
}

pub fn merge(parts: impl IntoIterator<Item = Outcome>) -> Outcome {
    let mut all = Outcome::default();
    for p in parts {
        all.merge(p);
    }
    all
}
