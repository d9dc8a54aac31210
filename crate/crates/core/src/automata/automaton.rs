use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::StateSet;
use crate::error::{Error, Result};
use crate::lang::{kleene_membership, Alphabet, FiniteLanguage, Symbol, Word};

/// Index of the base state, written `1` in the literature.
pub const BASE: usize = 0;

/// A nondeterministic automaton `⟨Q, A, δ, 1⟩` whose base state is both
/// initial and final.
///
/// The transition relation is stored totalized: every (state, symbol) pair
/// maps to a possibly empty [`StateSet`]. The reverse relation is kept
/// alongside so that preimages `δ(S, w⁻¹)` are as cheap as images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    alphabet: Alphabet,
    states: usize,
    fwd: Vec<StateSet>,
    bwd: Vec<StateSet>,
    labels: Option<Vec<Word>>,
}

/// Serialized form; edges are `[from, symbol, to]` triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonJson {
    pub states: usize,
    pub initial: usize,
    pub alphabet: Vec<String>,
    pub edges: Vec<(usize, usize, usize)>,
}

impl Automaton {
    pub fn from_edges(
        alphabet: Alphabet,
        states: usize,
        edges: impl IntoIterator<Item = (usize, Symbol, usize)>,
    ) -> Result<Self> {
        if states == 0 {
            return Err(Error::Precondition("automaton needs at least the base state".into()));
        }
        let k = alphabet.len();
        let mut fwd = vec![StateSet::empty(states); states * k];
        let mut bwd = vec![StateSet::empty(states); states * k];
        for (p, a, q) in edges {
            if p >= states || q >= states || a as usize >= k {
                return Err(Error::Precondition(format!("edge ({p}, {a}, {q}) out of range")));
            }
            fwd[p * k + a as usize].insert(q);
            bwd[q * k + a as usize].insert(p);
        }
        Ok(Automaton {
            alphabet,
            states,
            fwd,
            bwd,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<Word>) -> Self {
        assert_eq!(labels.len(), self.states);
        self.labels = Some(labels);
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.states
    }

    /// The prefix each state stands for, when built from a language.
    pub fn labels(&self) -> Option<&[Word]> {
        self.labels.as_deref()
    }

    pub fn state_of_label(&self, w: &[Symbol]) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l.symbols() == w)
    }

    pub fn full_set(&self) -> StateSet {
        StateSet::full(self.states)
    }

    pub fn base_set(&self) -> StateSet {
        StateSet::singleton(self.states, BASE)
    }

    pub fn empty_set(&self) -> StateSet {
        StateSet::empty(self.states)
    }

    #[inline]
    pub fn successors(&self, q: usize, a: Symbol) -> &StateSet {
        &self.fwd[q * self.alphabet.len() + a as usize]
    }

    #[inline]
    pub fn predecessors(&self, q: usize, a: Symbol) -> &StateSet {
        &self.bwd[q * self.alphabet.len() + a as usize]
    }

    /// Sorted edge list.
    pub fn edges(&self) -> Vec<(usize, Symbol, usize)> {
        let k = self.alphabet.len();
        let mut out = Vec::new();
        for p in 0..self.states {
            for a in 0..k {
                for q in self.fwd[p * k + a].iter() {
                    out.push((p, a as Symbol, q));
                }
            }
        }
        out
    }

    #[inline]
    pub fn step_letter(&self, set: &StateSet, a: Symbol) -> StateSet {
        let mut out = self.empty_set();
        for q in set.iter() {
            out.union_with(self.successors(q, a));
        }
        out
    }

    #[inline]
    pub fn step_letter_back(&self, set: &StateSet, a: Symbol) -> StateSet {
        let mut out = self.empty_set();
        for q in set.iter() {
            out.union_with(self.predecessors(q, a));
        }
        out
    }

    /// δ(S, w).
    pub fn step_forward(&self, set: &StateSet, w: &[Symbol]) -> Result<StateSet> {
        self.check_word(w)?;
        Ok(self.image(set, w))
    }

    /// δ(S, w⁻¹) = { q : δ(q, w) ∩ S ≠ ∅ }.
    pub fn step_backward(&self, set: &StateSet, w: &[Symbol]) -> Result<StateSet> {
        self.check_word(w)?;
        Ok(self.preimage(set, w))
    }

    /// Unchecked δ(S, w) for words already known to be over the alphabet.
    pub fn image(&self, set: &StateSet, w: &[Symbol]) -> StateSet {
        let mut cur = set.clone();
        for &a in w {
            if cur.is_empty() {
                break;
            }
            cur = self.step_letter(&cur, a);
        }
        cur
    }

    /// Unchecked δ(S, w⁻¹).
    pub fn preimage(&self, set: &StateSet, w: &[Symbol]) -> StateSet {
        let mut cur = set.clone();
        for &a in w.iter().rev() {
            if cur.is_empty() {
                break;
            }
            cur = self.step_letter_back(&cur, a);
        }
        cur
    }

    /// Qw.
    pub fn full_image(&self, w: &[Symbol]) -> StateSet {
        self.image(&self.full_set(), w)
    }

    /// Qw⁻¹.
    pub fn full_preimage(&self, w: &[Symbol]) -> StateSet {
        self.preimage(&self.full_set(), w)
    }

    /// Membership in the accepted language L(A) (paths from and to the base).
    pub fn accepts(&self, w: &[Symbol]) -> bool {
        self.image(&self.base_set(), w).contains(BASE)
    }

    fn check_word(&self, w: &[Symbol]) -> Result<()> {
        match w.iter().find(|&&s| s as usize >= self.alphabet.len()) {
            Some(s) => Err(Error::UnknownSymbol(format!("#{s}"))),
            None => Ok(()),
        }
    }

    /// The automaton with every edge reversed; the base state is kept.
    pub fn reverse(&self) -> Automaton {
        Automaton {
            alphabet: self.alphabet.clone(),
            states: self.states,
            fwd: self.bwd.clone(),
            bwd: self.fwd.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Card(δ(q, a)) ≤ 1 everywhere.
    pub fn is_deterministic(&self) -> bool {
        self.fwd.iter().all(|s| s.len() <= 1)
    }

    /// Qu ≠ ∅ for every word u, decided by searching the subset graph from Q
    /// for the empty set.
    pub fn is_complete_automaton(&self, cap: usize) -> Result<bool> {
        Ok(self.shortest_word_to(self.full_set(), |s| s.is_empty(), cap)?.is_none())
    }

    /// The underlying graph is strongly connected.
    pub fn is_transitive(&self) -> bool {
        let reach = |back: bool| {
            let mut seen = vec![false; self.states];
            seen[BASE] = true;
            let mut stack = vec![BASE];
            while let Some(p) = stack.pop() {
                for a in 0..self.alphabet.len() as Symbol {
                    let next = if back {
                        self.predecessors(p, a)
                    } else {
                        self.successors(p, a)
                    };
                    for q in next.iter() {
                        if !seen[q] {
                            seen[q] = true;
                            stack.push(q);
                        }
                    }
                }
            }
            seen.into_iter().all(|b| b)
        };
        reach(false) && reach(true)
    }

    /// At most one accepting path per word: no pair of distinct states
    /// (p, q) is both reachable from and co-reachable to (1, 1) in A × A.
    pub fn is_unambiguous(&self) -> bool {
        let n = self.states;
        let k = self.alphabet.len() as Symbol;
        let explore = |back: bool| {
            let mut seen = vec![false; n * n];
            seen[BASE * n + BASE] = true;
            let mut stack = vec![(BASE, BASE)];
            while let Some((p, q)) = stack.pop() {
                for a in 0..k {
                    let (sp, sq) = if back {
                        (self.predecessors(p, a), self.predecessors(q, a))
                    } else {
                        (self.successors(p, a), self.successors(q, a))
                    };
                    for p2 in sp.iter() {
                        for q2 in sq.iter() {
                            if !seen[p2 * n + q2] {
                                seen[p2 * n + q2] = true;
                                stack.push((p2, q2));
                            }
                        }
                    }
                }
            }
            seen
        };
        let fwd = explore(false);
        let bwd = explore(true);
        (0..n).all(|p| (0..n).all(|q| p == q || !(fwd[p * n + q] && bwd[p * n + q])))
    }

    /// True when some cycle of the graph avoids the base state.
    fn has_cycle_avoiding_base(&self) -> bool {
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut color = vec![0u8; self.states];
        let k = self.alphabet.len() as Symbol;
        for root in 1..self.states {
            if color[root] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, Vec<usize>)> = vec![(root, self.non_base_succ(root, k))];
            color[root] = 1;
            while let Some((_, pending)) = stack.last_mut() {
                match pending.pop() {
                    Some(q) => match color[q] {
                        0 => {
                            color[q] = 1;
                            let succ = self.non_base_succ(q, k);
                            stack.push((q, succ));
                        }
                        1 => return true,
                        _ => {}
                    },
                    None => {
                        let (p, _) = stack.pop().expect("nonempty");
                        color[p] = 2;
                    }
                }
            }
        }
        false
    }

    fn non_base_succ(&self, p: usize, k: Symbol) -> Vec<usize> {
        let mut out = Vec::new();
        for a in 0..k {
            out.extend(self.successors(p, a).iter().filter(|&q| q != BASE));
        }
        out
    }

    /// Labels of all paths from the base back to it with no intermediate
    /// visit. On an ambiguous automaton some of them may factor into others;
    /// see [`minimal_generating_set`](Self::minimal_generating_set).
    pub fn first_return_language(&self, cap: usize) -> Result<FiniteLanguage> {
        if self.has_cycle_avoiding_base() {
            return Err(Error::InfiniteReturnSet);
        }
        let k = self.alphabet.len() as Symbol;
        let mut found: Vec<Word> = Vec::new();
        let mut stack: Vec<(usize, Word)> = vec![(BASE, Word::empty())];
        while let Some((p, w)) = stack.pop() {
            for a in 0..k {
                for q in self.successors(p, a).iter() {
                    let mut next = w.clone();
                    next.push(a);
                    if q == BASE {
                        found.push(next);
                        if found.len() > cap {
                            return Err(Error::SubsetCapExceeded { cap });
                        }
                    } else {
                        stack.push((q, next));
                    }
                }
            }
        }
        FiniteLanguage::new(self.alphabet.clone(), found)
    }

    /// The minimal generating set Y of L(A), with Y ∩ Y²Y* = ∅: first-return
    /// labels minus any that factor into two or more of them.
    pub fn minimal_generating_set(&self, cap: usize) -> Result<FiniteLanguage> {
        let returns = self.first_return_language(cap)?;
        let minimal: Vec<Word> = returns
            .words()
            .iter()
            .filter(|w| !is_product_of_two_or_more(&returns, w))
            .cloned()
            .collect();
        FiniteLanguage::new(self.alphabet.clone(), minimal)
    }

    /// Breadth-first search of the subset graph from `start`, letters in
    /// alphabet order; returns the shortlex-least word reaching a target.
    pub fn shortest_word_to(
        &self,
        start: StateSet,
        is_target: impl Fn(&StateSet) -> bool,
        cap: usize,
    ) -> Result<Option<Word>> {
        if is_target(&start) {
            return Ok(Some(Word::empty()));
        }
        let k = self.alphabet.len() as Symbol;
        let mut index: HashMap<StateSet, usize> = HashMap::new();
        let mut nodes: Vec<(StateSet, usize, Symbol)> = Vec::new();
        index.insert(start.clone(), 0);
        nodes.push((start, usize::MAX, 0));
        let mut head = 0;
        while head < nodes.len() {
            let cur = nodes[head].0.clone();
            for a in 0..k {
                let next = self.step_letter(&cur, a);
                if index.contains_key(&next) {
                    continue;
                }
                let hit = is_target(&next);
                index.insert(next.clone(), nodes.len());
                nodes.push((next, head, a));
                if hit {
                    return Ok(Some(unwind(&nodes, nodes.len() - 1)));
                }
                if nodes.len() > cap {
                    return Err(Error::SubsetCapExceeded { cap });
                }
            }
            head += 1;
        }
        Ok(None)
    }

    /// All subsets δ(start, w) (or δ(start, w⁻¹) when `backward`), in
    /// breadth-first order.
    pub fn reachable_subsets(&self, start: StateSet, backward: bool, cap: usize) -> Result<Vec<StateSet>> {
        let k = self.alphabet.len() as Symbol;
        let mut index: HashMap<StateSet, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut out = Vec::new();
        index.insert(start.clone(), ());
        queue.push_back(start);
        while let Some(cur) = queue.pop_front() {
            for a in 0..k {
                let next = if backward {
                    self.step_letter_back(&cur, a)
                } else {
                    self.step_letter(&cur, a)
                };
                if index.insert(next.clone(), ()).is_none() {
                    if index.len() > cap {
                        return Err(Error::SubsetCapExceeded { cap });
                    }
                    queue.push_back(next);
                }
            }
            out.push(cur);
        }
        Ok(out)
    }

    /// Shortest (shortlex-least) word labelling a path from `from` to `to`.
    pub fn shortest_path_word(&self, from: usize, to: usize) -> Option<Word> {
        if from == to {
            return Some(Word::empty());
        }
        let k = self.alphabet.len() as Symbol;
        let mut parent: Vec<Option<(usize, Symbol)>> = vec![None; self.states];
        let mut seen = vec![false; self.states];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(p) = queue.pop_front() {
            for a in 0..k {
                for q in self.successors(p, a).iter() {
                    if seen[q] {
                        continue;
                    }
                    seen[q] = true;
                    parent[q] = Some((p, a));
                    if q == to {
                        let mut w = Vec::new();
                        let mut cur = q;
                        while let Some((pp, s)) = parent[cur] {
                            w.push(s);
                            cur = pp;
                            if cur == from {
                                break;
                            }
                        }
                        w.reverse();
                        return Some(Word::new(w));
                    }
                    queue.push_back(q);
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> AutomatonJson {
        AutomatonJson {
            states: self.states,
            initial: BASE,
            alphabet: self.alphabet.symbols().to_vec(),
            edges: self.edges().into_iter().map(|(p, a, q)| (p, a as usize, q)).collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("automaton serializes")
    }

    pub fn from_json(doc: &AutomatonJson) -> Result<Automaton> {
        if doc.initial != BASE {
            return Err(Error::Json(format!("initial state must be {BASE}")));
        }
        let alphabet = Alphabet::new(doc.alphabet.clone())?;
        let mut edges = Vec::with_capacity(doc.edges.len());
        for &(p, a, q) in &doc.edges {
            if a >= alphabet.len() {
                return Err(Error::Json(format!("symbol index {a} out of range")));
            }
            edges.push((p, a as Symbol, q));
        }
        Automaton::from_edges(alphabet, doc.states, edges)
    }

    pub fn from_json_str(text: &str) -> Result<Automaton> {
        let doc: AutomatonJson = serde_json::from_str(text)?;
        Automaton::from_json(&doc)
    }
}

fn unwind(nodes: &[(StateSet, usize, Symbol)], mut i: usize) -> Word {
    let mut w = Vec::new();
    while nodes[i].1 != usize::MAX {
        w.push(nodes[i].2);
        i = nodes[i].1;
    }
    w.reverse();
    Word::new(w)
}

fn is_product_of_two_or_more(set: &FiniteLanguage, w: &[Symbol]) -> bool {
    set.words()
        .iter()
        .any(|p| p.len() < w.len() && w.starts_with(p) && kleene_membership(set, &w[p.len()..]))
}

/// The literal (prefix-tree) automaton of X*: states are the base and the
/// proper nonempty prefixes of X; reading `a` from prefix `p` leads back to
/// the base when `pa ∈ X` and to `pa` when it is again a proper prefix.
///
/// It accepts X*, is trim, every cycle passes through the base, it is
/// deterministic exactly when X is prefix and unambiguous exactly when X is
/// a code.
pub fn flower_automaton(x: &FiniteLanguage) -> Result<Automaton> {
    x.require_nonempty_epsilon_free()?;
    let mut prefixes: Vec<Word> = vec![Word::empty()];
    for w in x.words() {
        for i in 1..w.len() {
            prefixes.push(Word::from(&w[..i]));
        }
    }
    prefixes[1..].sort();
    prefixes.dedup();
    let index: HashMap<&[Symbol], usize> = prefixes.iter().enumerate().map(|(i, p)| (p.symbols(), i)).collect();
    let mut edges = Vec::new();
    for (i, p) in prefixes.iter().enumerate() {
        for a in 0..x.alphabet().len() as Symbol {
            let next = p.concat(&[a]);
            if x.contains(&next) {
                edges.push((i, a, BASE));
            }
            if let Some(&j) = index.get(next.symbols()) {
                edges.push((i, a, j));
            }
        }
    }
    Ok(Automaton::from_edges(x.alphabet().clone(), prefixes.len(), edges)?.with_labels(prefixes))
}
