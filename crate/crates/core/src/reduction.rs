//! From a synchronizing pair to a short one through incompletable words.
//!
//! For a pair (v₁, v₂) of a complete code X, each side is replaced by a
//! word w with Qw ⊆ Qv₁ (resp. Qw⁻¹ ⊆ Qv₂⁻¹) read off a minimal
//! incompletable word of an auxiliary automaton A′ over A ∪ {a′}. A short
//! completion (r, s) of w₁w₂ then yields the synchronizing pair
//! (r·w₁, w₂·s).

use std::collections::HashMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::automata::{flower_automaton, Automaton, StateSet, BASE};
use crate::completeness::{find_completion, shortest_incompletable_in};
use crate::error::{Error, Result};
use crate::lang::{is_code, is_prefix, Alphabet, FiniteLanguage, Symbol, Word};
use crate::synchrony::{shortest_left_sync_word, shortest_sync_pair, Certification, PairSearch, SyncChecker, SyncPair};
use crate::Limits;

/// Builds A′ from the automaton `a` and v₁ = u·a.
///
/// The new letter a′ acts like a except on the base state: it adds 1 to
/// δ(q, a) for q ∉ δ(Q, u) and removes it for q ∈ δ(Q, u). Returns the
/// automaton and the index of a′, which is ordered last.
pub fn build_aprime(a: &Automaton, v1: &[Symbol]) -> Result<(Automaton, Symbol)> {
    let (&last, u) = v1
        .split_last()
        .ok_or_else(|| Error::Precondition("A′ needs a nonempty word v₁".into()))?;
    let pu = a.step_forward(&a.full_set(), u)?;
    a.step_forward(&a.full_set(), &[last])?;
    let (alphabet, marked) = a.alphabet().with_marked(last)?;
    let mut edges = a.edges();
    for q in 0..a.states() {
        let mut to = a.successors(q, last).clone();
        if pu.contains(q) {
            to.remove(BASE);
        } else {
            to.insert(BASE);
        }
        edges.extend(to.iter().map(|p| (q, marked, p)));
    }
    let mut out = Automaton::from_edges(alphabet, a.states(), edges)?;
    if let Some(labels) = a.labels() {
        out = out.with_labels(labels.to_vec());
    }
    if !out.is_transitive() {
        return Err(Error::Internal("A′ is not transitive".into()));
    }
    Ok((out, marked))
}

/// A shortest word v with δ′(Q, v) = ∅ using as few marked letters as
/// possible, lexicographically least among those.
///
/// Level-synchronized breadth-first search: each level keeps, per subset,
/// the best (marked count, word) pair reaching it.
pub fn shortest_incompletable_min_marked(aprime: &Automaton, marked: Symbol, cap: usize) -> Result<Word> {
    let len = shortest_incompletable_in(aprime, cap)?
        .ok_or_else(|| Error::Precondition("A′ is complete: the input pair is not synchronizing".into()))?
        .len();
    let k = aprime.alphabet().len() as Symbol;
    let mut level: HashMap<StateSet, (usize, Word)> = HashMap::new();
    level.insert(aprime.full_set(), (0, Word::empty()));
    for _ in 0..len {
        let mut next: HashMap<StateSet, (usize, Word)> = HashMap::new();
        for (set, (count, w)) in &level {
            for b in 0..k {
                let to = aprime.step_letter(set, b);
                let mut cand = w.clone();
                cand.push(b);
                let cand = (count + usize::from(b == marked), cand);
                match next.get(&to) {
                    Some(cur) if *cur <= cand => {}
                    _ => {
                        next.insert(to, cand);
                    }
                }
            }
        }
        if next.len() > cap {
            return Err(Error::SubsetCapExceeded { cap });
        }
        level = next;
    }
    level
        .remove(&aprime.empty_set())
        .map(|(_, w)| w)
        .ok_or_else(|| Error::Internal("level search missed the empty subset".into()))
}

/// Splits v = u₁·a′·u₂ at the first marked letter and returns w = u₁·a,
/// where v₁ = u·a, after checking δ(Q, u₁) ⊆ δ(Q, u).
pub fn extract_w(a: &Automaton, v1: &[Symbol], v: &[Symbol], marked: Symbol) -> Result<Word> {
    let (&last, u) = v1
        .split_last()
        .ok_or_else(|| Error::Precondition("v₁ is empty".into()))?;
    let cut = v
        .iter()
        .position(|&s| s == marked)
        .ok_or_else(|| Error::Precondition("incompletable word has no marked letter".into()))?;
    let u1 = &v[..cut];
    let q = a.full_set();
    if !a.step_forward(&q, u1)?.is_subset(&a.step_forward(&q, u)?) {
        return Err(Error::Internal(format!(
            "δ(Q, u₁) ⊄ δ(Q, u) for u₁ = {}, u = {}",
            a.alphabet().render(u1),
            a.alphabet().render(u)
        )));
    }
    let mut w = Word::from(u1);
    w.push(last);
    Ok(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Work done on one side of the pair. On the right side `u`, `aprime`,
/// `y` and `incompletable` refer to the reversed automaton and reversed
/// words; `w` is given in reading order.
#[derive(Clone, Debug)]
pub struct SideRecord {
    pub side: Side,
    pub v_side: Word,
    pub u: Word,
    pub a: Option<Symbol>,
    pub aprime: Option<Automaton>,
    pub y: Option<FiniteLanguage>,
    pub incompletable: Option<Word>,
    pub split: Option<(Word, Word)>,
    pub w: Word,
}

impl SideRecord {
    fn trivial(side: Side) -> Self {
        SideRecord {
            side,
            v_side: Word::empty(),
            u: Word::empty(),
            a: None,
            aprime: None,
            y: None,
            incompletable: None,
            split: None,
            w: Word::empty(),
        }
    }

    /// Length of the incompletable word found, 0 for an empty side.
    pub fn v_len(&self) -> usize {
        self.incompletable.as_ref().map_or(0, |w| w.len())
    }
}

/// Replaces one side of a synchronizing pair of the code whose flower
/// automaton is `flower` (with ℓ(X) = `n`).
///
/// The right side runs the left construction on the reversed automaton
/// with v₂ reversed, then reverses the result.
pub fn half_reduction(flower: &Automaton, n: usize, v_side: &[Symbol], side: Side, cap: usize) -> Result<SideRecord> {
    if v_side.is_empty() {
        return Ok(SideRecord::trivial(side));
    }
    let (a, v) = match side {
        Side::Left => (flower.clone(), Word::from(v_side)),
        Side::Right => (flower.reverse(), Word::from(v_side).reversed()),
    };
    let (aprime, marked) = build_aprime(&a, &v)?;
    let y = aprime.first_return_language(cap)?;
    if y.size() > n {
        return Err(Error::Internal(format!("ℓ(Y) = {} exceeds ℓ(X) = {n}", y.size())));
    }
    let inc = shortest_incompletable_min_marked(&aprime, marked, cap)?;
    let w = extract_w(&a, &v, &inc, marked)?;
    if w.len() > inc.len() {
        return Err(Error::Internal(
            "extracted word longer than the incompletable word".into(),
        ));
    }
    let q = a.full_set();
    if !a.image(&q, &w).is_subset(&a.image(&q, &v)) {
        return Err(Error::Internal("extracted word fails Qw ⊆ Qv".into()));
    }
    let cut = inc.iter().position(|&s| s == marked).expect("checked by extract_w");
    let split = (Word::from(&inc[..cut]), Word::from(&inc[cut + 1..]));
    let w = match side {
        Side::Left => w,
        Side::Right => w.reversed(),
    };
    Ok(SideRecord {
        side,
        v_side: Word::from(v_side),
        u: Word::from(&v[..v.len() - 1]),
        a: v.last().copied(),
        aprime: Some(aprime),
        y: Some(y),
        incompletable: Some(inc),
        split: Some(split),
        w,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairSource {
    Given,
    Searched,
}

/// Length accounting for the output pair; `v_left` and `v_right` are the
/// lengths of the incompletable words found on each side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundLedger {
    pub v_left: usize,
    pub v_right: usize,
    pub bound: usize,
    pub final_len: usize,
    pub holds: bool,
    /// |w₁| ≤ |v_left| on the prefix path, when taken.
    pub prefix_holds: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub language: FiniteLanguage,
    pub n: usize,
    pub d: usize,
    pub input: (Word, Word),
    pub pair_source: PairSource,
    pub marked_token: Option<String>,
    pub left: SideRecord,
    pub right: SideRecord,
    pub completion: (Word, Word),
    pub output: SyncPair,
    pub prefix_output: Option<SyncPair>,
    pub ledger: BoundLedger,
}

/// Runs the whole pipeline on a complete code X. Without `pair`, a
/// shortest synchronizing pair is searched first, of the form (w, ε)
/// when X is prefix.
pub fn synchronizing_pair_via_reduction(
    x: &FiniteLanguage,
    pair: Option<(Word, Word)>,
    limits: Limits,
) -> Result<(SyncPair, ReductionTrace)> {
    x.require_nonempty_epsilon_free()?;
    if !is_code(x)? {
        return Err(Error::Precondition("X is not a code".into()));
    }
    let flower = flower_automaton(x)?;
    if !flower.is_complete_automaton(limits.subset_cap)? {
        return Err(Error::Precondition("X is not complete".into()));
    }
    let checker = SyncChecker::new(x, limits)?;
    let (v1, v2, pair_source) = match pair {
        Some((u, v)) => {
            if !checker.is_sync_pair(&u, &v)? {
                return Err(Error::Precondition("the given pair is not synchronizing".into()));
            }
            (u, v, PairSource::Given)
        }
        // prefix codes get a pair (w, ε) so the prefix path applies
        None if is_prefix(x) => match shortest_left_sync_word(x, limits)? {
            Some(w) => (w, Word::empty(), PairSource::Searched),
            None => return Err(Error::Precondition("X has no synchronizing pair".into())),
        },
        None => match shortest_sync_pair(x, limits)? {
            PairSearch::Found(p) => (p.u, p.v, PairSource::Searched),
            PairSearch::NotSynchronizing => return Err(Error::Precondition("X has no synchronizing pair".into())),
        },
    };
    let n = x.size();
    let cap = limits.subset_cap;
    let (left, right) = rayon::join(
        || half_reduction(&flower, n, &v1, Side::Left, cap),
        || half_reduction(&flower, n, &v2, Side::Right, cap),
    );
    let (left, right) = (left?, right?);
    let (w1, w2) = (&left.w, &right.w);
    let q = flower.full_set();
    if !flower.image(&q, w1).is_subset(&flower.image(&q, &v1)) {
        return Err(Error::Internal("left side fails Qw ⊆ Qv".into()));
    }
    if !flower.preimage(&q, w2).is_subset(&flower.preimage(&q, &v2)) {
        return Err(Error::Internal("right side fails Qw⁻¹ ⊆ Qv⁻¹".into()));
    }

    let completion = find_completion(x, &w1.concat(w2), true)?
        .ok_or_else(|| Error::Internal("w₁w₂ has no completion in a complete code".into()))?;
    let (r, s) = (completion.r, completion.s);
    let (u_out, v_out) = (r.concat(w1), w2.concat(&s));
    if !checker.general_check(&u_out, &v_out)? || !checker.is_sync_pair(&u_out, &v_out)? {
        return Err(Error::Internal(format!(
            "output pair ({}, {}) is not synchronizing",
            x.render(&u_out),
            x.render(&v_out)
        )));
    }
    let output = SyncPair {
        u: u_out,
        v: v_out,
        certified_by: Certification::CodePath,
    };

    let prefix_output = if is_prefix(x) && v2.is_empty() {
        if flower.image(&q, w1) != flower.base_set() || !checker.is_sync_pair(w1, &[])? {
            return Err(Error::Internal("prefix path: Qw₁ ≠ {1}".into()));
        }
        Some(SyncPair {
            u: w1.clone(),
            v: Word::empty(),
            certified_by: Certification::CodePath,
        })
    } else {
        None
    };

    let (v_left, v_right) = (left.v_len(), right.v_len());
    let bound = 2 * v_left.max(v_right) + 2 * n - 2;
    let ledger = BoundLedger {
        v_left,
        v_right,
        bound,
        final_len: output.len(),
        holds: output.len() <= bound,
        prefix_holds: prefix_output.as_ref().map(|p| p.len() <= v_left),
    };
    let marked_token = left
        .aprime
        .as_ref()
        .or(right.aprime.as_ref())
        .map(|a| a.alphabet().symbols().last().cloned().expect("nonempty"));
    let trace = ReductionTrace {
        language: x.clone(),
        n,
        d: x.alphabet().len(),
        input: (v1, v2),
        pair_source,
        marked_token,
        left,
        right,
        completion: (r, s),
        output: output.clone(),
        prefix_output,
        ledger,
    };
    Ok((output, trace))
}

impl ReductionTrace {
    /// JSON form with words rendered as text.
    pub fn to_json(&self) -> Value {
        let base = self.language.alphabet();
        let w = |w: &Word| base.render(w);
        let pair = |p: &SyncPair| json!({ "u": w(&p.u), "v": w(&p.v), "certified_by": p.certified_by });
        json!({
            "language": self.language.words().iter().map(w).collect::<Vec<_>>(),
            "alphabet": base.symbols(),
            "n": self.n,
            "d": self.d,
            "input": { "v1": w(&self.input.0), "v2": w(&self.input.1) },
            "pair_source": self.pair_source,
            "marked_token": self.marked_token,
            "left": side_json(&self.left, base),
            "right": side_json(&self.right, base),
            "completion": { "r": w(&self.completion.0), "s": w(&self.completion.1) },
            "output": pair(&self.output),
            "prefix_output": self.prefix_output.as_ref().map(pair),
            "ledger": self.ledger,
        })
    }
}

fn side_json(rec: &SideRecord, base: &Alphabet) -> Value {
    let ext = rec.aprime.as_ref().map(|a| a.alphabet());
    let ew = |w: &Word| ext.map_or_else(|| base.render(w), |e| e.render(w));
    json!({
        "side": rec.side,
        "v": base.render(&rec.v_side),
        "u": base.render(&rec.u),
        "a": rec.a.map(|a| base.symbol(a).to_string()),
        "aprime": rec.aprime.as_ref().map(Automaton::to_json),
        "y": rec.y.as_ref().map(|y| y.words().iter().map(ew).collect::<Vec<_>>()),
        "incompletable": rec.incompletable.as_ref().map(ew),
        "split": rec.split.as_ref().map(|(u1, u2)| json!({ "u1": ew(u1), "u2": ew(u2) })),
        "w": base.render(&rec.w),
    })
}
