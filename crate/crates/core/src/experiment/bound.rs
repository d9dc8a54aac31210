use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::encoding::sync_status;
use crate::error::Result;
use crate::lang::{Alphabet, FiniteLanguage, Symbol, Word};
use crate::reduction::synchronizing_pair_via_reduction;
use crate::Limits;

#[derive(Clone, Debug, Serialize)]
pub struct BoundRun {
    pub language: Vec<String>,
    pub passed: bool,
    /// Prefix-path ledger, for prefix inputs whose pair has v = ε.
    pub prefix_passed: Option<bool>,
    pub final_len: Option<usize>,
    pub bound: Option<usize>,
    pub error: Option<String>,
    /// Full trace, kept for failures only.
    pub trace: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MainBoundReport {
    pub runs: Vec<BoundRun>,
    pub passed: usize,
    pub failed: usize,
}

/// Runs the reduction pipeline on each complete synchronizing code and
/// checks the length ledger. Errors are recorded per instance rather than
/// aborting the batch.
pub fn verify_main_bound(instances: &[FiniteLanguage], limits: Limits) -> MainBoundReport {
    let runs: Vec<BoundRun> = instances
        .par_iter()
        .map(|x| {
            let language = x.words().iter().map(|w| x.render(w)).collect();
            match synchronizing_pair_via_reduction(x, None, limits) {
                Ok((_, trace)) => {
                    let l = &trace.ledger;
                    let passed = l.holds && l.prefix_holds != Some(false);
                    BoundRun {
                        language,
                        passed,
                        prefix_passed: l.prefix_holds,
                        final_len: Some(l.final_len),
                        bound: Some(l.bound),
                        error: None,
                        trace: (!passed).then(|| trace.to_json()),
                    }
                }
                Err(e) => BoundRun {
                    language,
                    passed: false,
                    prefix_passed: None,
                    final_len: None,
                    bound: None,
                    error: Some(e.to_string()),
                    trace: None,
                },
            }
        })
        .collect();
    let passed = runs.iter().filter(|r| r.passed).count();
    MainBoundReport {
        failed: runs.len() - passed,
        passed,
        runs,
    }
}

/// Leaves of a random binary tree of depth ≤ `depth`: every internal
/// node has both children, and a node below the root becomes a leaf with
/// probability 2/5 (always at the maximum depth).
fn random_tree(rng: &mut ChaCha8Rng, depth: usize) -> Vec<Word> {
    let mut leaves = Vec::new();
    let mut stack = vec![Word::empty()];
    while let Some(w) = stack.pop() {
        if !w.is_empty() && (w.len() == depth || rng.gen_bool(0.4)) {
            leaves.push(w);
            continue;
        }
        for a in [1 as Symbol, 0] {
            let mut c = w.clone();
            c.push(a);
            stack.push(c);
        }
    }
    leaves
}

/// `count` binary complete synchronizing codes of size ≤ `max_size`: leaf
/// sets of random complete binary trees (complete prefix codes), each
/// reversed into a suffix code with probability 1/2, kept when the
/// lengths have gcd 1 and the code is synchronizing.
pub fn random_complete_sync_codes(
    count: usize,
    max_size: usize,
    seed: u64,
    limits: Limits,
) -> Result<Vec<FiniteLanguage>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphabet = Alphabet::letters(2)?;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut words = random_tree(&mut rng, max_size);
        if rng.gen_bool(0.5) {
            words = words.iter().map(Word::reversed).collect();
        }
        let x = FiniteLanguage::new(alphabet.clone(), words)?;
        let g = x.lengths().into_iter().fold(0, num_integer::gcd);
        if g == 1 && sync_status(&x, limits)? == Some(true) {
            out.push(x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completeness::is_complete_language;
    use crate::lang::is_code;

    #[test]
    fn random_codes_are_in_class() {
        let codes = random_complete_sync_codes(10, 4, 1, Limits::default()).unwrap();
        assert_eq!(codes.len(), 10);
        for x in &codes {
            assert!(x.size() <= 4);
            assert!(is_code(x).unwrap());
            assert!(is_complete_language(x, 1 << 20).unwrap());
        }
        assert_eq!(codes, random_complete_sync_codes(10, 4, 1, Limits::default()).unwrap());
    }

    #[test]
    fn bound_on_small_instances() {
        let example = FiniteLanguage::over_letters(2, &["a", "baaa", "baab", "bab", "bb"]).unwrap();
        let trivial = FiniteLanguage::over_letters(2, &["a", "b"]).unwrap();
        let report = verify_main_bound(&[example, trivial], Limits::default());
        assert_eq!(report.failed, 0, "{:?}", report.runs);
        assert_eq!(report.runs[0].prefix_passed, Some(true));
    }
}
