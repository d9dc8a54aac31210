//! Estimates of the worst-case shortest incompletable word (R) and the
//! worst-case shortest synchronizing pair (C) over small classes of
//! languages, and per-instance checks of the reduction bound.

mod bound;

pub use bound::{random_complete_sync_codes, verify_main_bound, BoundRun, MainBoundReport};

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::completeness::{all_words, brute_force_completable, is_complete_language, shortest_incompletable};
use crate::error::{Error, Result};
use crate::lang::{is_code, is_prefix, Alphabet, FiniteLanguage, Word};
use crate::synchrony::{shortest_sync_pair, PairSearch, SyncChecker};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Class {
    All,
    Codes,
    Prefix,
    CompleteCodes,
    CompletePrefix,
}

impl Class {
    pub const ALL: [Class; 5] = [
        Class::All,
        Class::Codes,
        Class::Prefix,
        Class::CompleteCodes,
        Class::CompletePrefix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Class::All => "all",
            Class::Codes => "codes",
            Class::Prefix => "prefix",
            Class::CompleteCodes => "complete-codes",
            Class::CompletePrefix => "complete-prefix",
        }
    }

    fn needs_complete(self) -> bool {
        matches!(self, Class::CompleteCodes | Class::CompletePrefix)
    }

    pub fn contains(self, x: &FiniteLanguage, cap: usize) -> Result<bool> {
        let shape = match self {
            Class::All => true,
            Class::Codes | Class::CompleteCodes => is_code(x)?,
            Class::Prefix | Class::CompletePrefix => is_prefix(x),
        };
        Ok(shape && (!self.needs_complete() || is_complete_language(x, cap)?))
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Class::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown class `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quantity {
    /// Shortest incompletable word, over incomplete instances.
    R,
    /// Shortest synchronizing pair, over synchronizing instances.
    C,
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" | "r" => Ok(Quantity::R),
            "C" | "c" => Ok(Quantity::C),
            _ => Err(Error::Precondition(format!("unknown quantity `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Every nonempty set of nonempty words of length ≤ n.
    Exhaustive,
    /// `samples` sets, each of 2..=2n words drawn uniformly (with
    /// repetition) from the nonempty words of length ≤ n.
    Random { samples: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug)]
pub struct ExperimentConfig {
    pub quantity: Quantity,
    pub class: Class,
    pub n: usize,
    pub d: usize,
    pub mode: Mode,
    /// Keep only instances with ℓ(X) = n rather than ℓ(X) ≤ n.
    pub exact_size: bool,
    /// Skip sets that are not the least among their images under letter
    /// permutations (exhaustive mode only).
    pub canonicalize: bool,
    pub instance_cap: u128,
    pub limits: Limits,
}

impl ExperimentConfig {
    pub const DEFAULT_INSTANCE_CAP: u128 = 1 << 24;

    pub fn new(quantity: Quantity, class: Class, n: usize, d: usize, mode: Mode) -> Self {
        ExperimentConfig {
            quantity,
            class,
            n,
            d,
            mode,
            exact_size: false,
            canonicalize: true,
            instance_cap: Self::DEFAULT_INSTANCE_CAP,
            limits: Limits::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeReport {
    pub kind: String,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    pub canonicalized: bool,
    pub exact_size: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub language: Vec<String>,
    /// Incompletable word (R).
    pub word: Option<String>,
    /// Synchronizing pair (C).
    pub u: Option<String>,
    pub v: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub quantity: Quantity,
    pub class: Class,
    pub n: usize,
    pub d: usize,
    pub mode: ModeReport,
    /// Max over counted instances of the per-instance minimum.
    pub value: Option<usize>,
    pub witness: Option<WitnessReport>,
    /// Sets generated before any filtering.
    pub candidates: u64,
    /// Sets that passed the class (and canonical-form) filter.
    pub in_class: u64,
    /// Instances that contributed a value.
    pub counted: u64,
    /// Instances whose search ran out of budget; excluded from `value`.
    pub inconclusive: u64,
    pub wall_ms: u64,
}

impl ExperimentReport {
    pub const CSV_HEADER: &'static str =
        "quantity,class,n,d,mode,seed,samples,value,witness_language,witness,candidates,in_class,counted,inconclusive,wall_ms";

    /// One CSV row matching [`CSV_HEADER`](Self::CSV_HEADER).
    pub fn to_csv_row(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_default();
        let witness = self.witness.as_ref();
        let shown = witness.map(|w| match (&w.word, &w.u, &w.v) {
            (Some(word), _, _) => word.clone(),
            (None, Some(u), Some(v)) => format!("({u} {v})"),
            _ => String::new(),
        });
        [
            format!("{:?}", self.quantity),
            self.class.to_string(),
            self.n.to_string(),
            self.d.to_string(),
            self.mode.kind.clone(),
            opt(self.mode.seed.map(|s| s.to_string())),
            opt(self.mode.samples.map(|s| s.to_string())),
            opt(self.value.map(|v| v.to_string())),
            opt(witness.map(|w| w.language.join(" "))),
            opt(shown),
            self.candidates.to_string(),
            self.in_class.to_string(),
            self.counted.to_string(),
            self.inconclusive.to_string(),
            self.wall_ms.to_string(),
        ]
        .join(",")
    }

    pub fn to_csv(&self) -> String {
        format!("{}\n{}\n", Self::CSV_HEADER, self.to_csv_row())
    }

    /// Re-checks the serialized witness from scratch: the word against
    /// the brute-force completion oracle, the pair against the general
    /// synchronizing-pair check.
    pub fn verify_witness(&self, limits: Limits) -> Result<bool> {
        let Some(w) = &self.witness else {
            return Ok(self.value.is_none());
        };
        let alphabet = Alphabet::letters(self.d)?;
        let words: Vec<&str> = w.language.iter().map(String::as_str).collect();
        let x = FiniteLanguage::from_strs(alphabet.clone(), &words)?;
        match self.quantity {
            Quantity::R => {
                let word = alphabet.parse_word(w.word.as_deref().unwrap_or_default())?;
                Ok(Some(word.len()) == self.value && !brute_force_completable(&x, &word)?)
            }
            Quantity::C => {
                let u = alphabet.parse_word(w.u.as_deref().unwrap_or_default())?;
                let v = alphabet.parse_word(w.v.as_deref().unwrap_or_default())?;
                let checker = SyncChecker::new(&x, limits)?;
                checker.require_in_star(&u)?;
                checker.require_in_star(&v)?;
                Ok(Some(u.len() + v.len()) == self.value && checker.general_check(&u, &v)?)
            }
        }
    }
}

enum Outcome {
    Skip,
    Value(usize, Witness),
    Inconclusive,
}

#[derive(Clone)]
enum Witness {
    Word(Word),
    Pair(Word, Word),
}

#[derive(Default)]
struct Summary {
    best: Option<(usize, u64, FiniteLanguage, Witness)>,
    in_class: u64,
    counted: u64,
    inconclusive: u64,
}

impl Summary {
    /// Max value, ties to the lower instance index; associative and
    /// commutative, so parallel reduction order does not matter.
    fn merge(mut self, other: Summary) -> Summary {
        self.best = match (self.best, other.best) {
            (Some(a), Some(b)) => Some(if (b.0, std::cmp::Reverse(b.1)) > (a.0, std::cmp::Reverse(a.1)) {
                b
            } else {
                a
            }),
            (a, b) => a.or(b),
        };
        self.in_class += other.in_class;
        self.counted += other.counted;
        self.inconclusive += other.inconclusive;
        self
    }
}

fn evaluate(cfg: &ExperimentConfig, x: &FiniteLanguage) -> Result<(bool, Outcome)> {
    if x.is_empty() || (cfg.exact_size && x.size() != cfg.n) || !cfg.class.contains(x, cfg.limits.subset_cap)? {
        return Ok((false, Outcome::Skip));
    }
    let out = match cfg.quantity {
        Quantity::R => match shortest_incompletable(x, cfg.limits.subset_cap) {
            Ok(Some(w)) => Outcome::Value(w.len(), Witness::Word(w)),
            Ok(None) => Outcome::Skip,
            Err(Error::SubsetCapExceeded { .. }) => Outcome::Inconclusive,
            Err(e) => return Err(e),
        },
        Quantity::C => match shortest_sync_pair(x, cfg.limits) {
            Ok(PairSearch::Found(p)) => Outcome::Value(p.len(), Witness::Pair(p.u, p.v)),
            Ok(PairSearch::NotSynchronizing) => Outcome::Skip,
            Err(Error::BudgetExhausted { .. } | Error::SubsetCapExceeded { .. }) => Outcome::Inconclusive,
            Err(e) => return Err(e),
        },
    };
    Ok((true, out))
}

fn summarize(idx: u64, x: FiniteLanguage, r: Result<(bool, Outcome)>) -> Result<Summary> {
    let (in_class, out) = r?;
    let mut s = Summary {
        in_class: u64::from(in_class),
        ..Summary::default()
    };
    match out {
        Outcome::Skip => {}
        Outcome::Inconclusive => s.inconclusive = 1,
        Outcome::Value(v, w) => {
            s.counted = 1;
            s.best = Some((v, idx, x, w));
        }
    }
    Ok(s)
}

/// Letter permutations of `d` letters, as images of each letter.
fn permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(d - 1) {
        for i in 0..d {
            let mut q = p.clone();
            q.insert(i, d - 1);
            out.push(q);
        }
    }
    out
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    if cfg.quantity == Quantity::R && cfg.class.needs_complete() {
        return Err(Error::Precondition(format!(
            "class {} has no incomplete members",
            cfg.class
        )));
    }
    if cfg.n == 0 || cfg.d == 0 {
        return Err(Error::Precondition("n and d must be positive".into()));
    }
    let start = Instant::now();
    let alphabet = Alphabet::letters(cfg.d)?;
    let universe: Vec<Word> = (1..=cfg.n).flat_map(|len| all_words(cfg.d, len)).collect();
    let build = |words: Vec<Word>| FiniteLanguage::new(alphabet.clone(), words);

    let (summary, candidates, mode) = match cfg.mode {
        Mode::Exhaustive => {
            let total = 1u128.checked_shl(universe.len() as u32).unwrap_or(u128::MAX) - 1;
            if universe.len() >= 64 || total > cfg.instance_cap {
                return Err(Error::InstanceCapExceeded {
                    count: total,
                    cap: cfg.instance_cap,
                });
            }
            let index_of = |w: &Word| universe.iter().position(|u| u == w).expect("closed under permutation");
            let perms: Vec<Vec<usize>> = permutations(cfg.d)
                .into_iter()
                .filter(|p| p.iter().enumerate().any(|(i, &j)| i != j))
                .map(|p| {
                    universe
                        .iter()
                        .map(|w| index_of(&w.iter().map(|&a| p[a as usize] as u8).collect()))
                        .collect()
                })
                .collect();
            let canonical = |mask: u64| {
                perms.iter().all(|p| {
                    let mut image = 0u64;
                    for (i, &j) in p.iter().enumerate() {
                        image |= (mask >> i & 1) << j;
                    }
                    image >= mask
                })
            };
            let summary = (1..=total as u64)
                .into_par_iter()
                .map(|mask| {
                    if cfg.canonicalize && !canonical(mask) {
                        return Ok(Summary::default());
                    }
                    let words = (0..universe.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| universe[i].clone())
                        .collect();
                    let x = build(words)?;
                    let r = evaluate(cfg, &x);
                    summarize(mask, x, r)
                })
                .try_reduce(Summary::default, |a, b| Ok(a.merge(b)))?;
            let mode = ModeReport {
                kind: "exhaustive".into(),
                seed: None,
                samples: None,
                canonicalized: cfg.canonicalize,
                exact_size: cfg.exact_size,
            };
            (summary, total as u64, mode)
        }
        Mode::Random { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sets: Vec<Vec<Word>> = (0..samples)
                .map(|_| {
                    let count = rng.gen_range(2..=2 * cfg.n);
                    (0..count)
                        .map(|_| universe[rng.gen_range(0..universe.len())].clone())
                        .collect()
                })
                .collect();
            let summary = sets
                .into_par_iter()
                .enumerate()
                .map(|(i, words)| {
                    let x = build(words)?;
                    let r = evaluate(cfg, &x);
                    summarize(i as u64, x, r)
                })
                .try_reduce(Summary::default, |a, b| Ok(a.merge(b)))?;
            let mode = ModeReport {
                kind: "random".into(),
                seed: Some(seed),
                samples: Some(samples),
                canonicalized: false,
                exact_size: cfg.exact_size,
            };
            (summary, samples, mode)
        }
    };

    let (value, witness) = match summary.best {
        None => (None, None),
        Some((v, _, x, w)) => {
            let render = |w: &Word| alphabet.render(w);
            let language = x.words().iter().map(render).collect();
            let witness = match w {
                Witness::Word(w) => WitnessReport {
                    language,
                    word: Some(render(&w)),
                    u: None,
                    v: None,
                },
                Witness::Pair(u, v) => WitnessReport {
                    language,
                    word: None,
                    u: Some(render(&u)),
                    v: Some(render(&v)),
                },
            };
            (Some(v), Some(witness))
        }
    };
    Ok(ExperimentReport {
        quantity: cfg.quantity,
        class: cfg.class,
        n: cfg.n,
        d: cfg.d,
        mode,
        value,
        witness,
        candidates,
        in_class: summary.in_class,
        counted: summary.counted,
        inconclusive: summary.inconclusive,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// Exhaustive or sampled estimate of R over `class`.
pub fn estimate_r(class: Class, n: usize, d: usize, mode: Mode) -> Result<ExperimentReport> {
    run_experiment(&ExperimentConfig::new(Quantity::R, class, n, d, mode))
}

/// Exhaustive or sampled estimate of C over `class`.
pub fn estimate_c(class: Class, n: usize, d: usize, mode: Mode, limits: Limits) -> Result<ExperimentReport> {
    let mut cfg = ExperimentConfig::new(Quantity::C, class, n, d, mode);
    cfg.limits = limits;
    run_experiment(&cfg)
}
