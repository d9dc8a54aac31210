use std::collections::{HashMap, VecDeque};

use super::{Automaton, StateSet, BASE};
use crate::error::{Error, Result};
use crate::lang::{Alphabet, Symbol};

/// A deterministic, possibly partial automaton with initial state 0 and an
/// arbitrary set of accepting states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    next: Vec<Option<usize>>,
    accepting: Vec<bool>,
}

impl Dfa {
    pub fn new(alphabet: Alphabet, next: Vec<Option<usize>>, accepting: Vec<bool>) -> Result<Self> {
        let n = accepting.len();
        if n == 0 || next.len() != n * alphabet.len() || next.iter().flatten().any(|&q| q >= n) {
            return Err(Error::Precondition("malformed transition table".into()));
        }
        Ok(Dfa {
            alphabet,
            next,
            accepting,
        })
    }

    /// Reads a deterministic [`Automaton`]; its base state is the only
    /// accepting state.
    pub fn from_automaton(a: &Automaton) -> Result<Self> {
        if !a.is_deterministic() {
            return Err(Error::NotCompleteDfa);
        }
        let k = a.alphabet().len();
        let mut next = vec![None; a.states() * k];
        for (p, s, q) in a.edges() {
            next[p * k + s as usize] = Some(q);
        }
        let mut accepting = vec![false; a.states()];
        accepting[BASE] = true;
        Dfa::new(a.alphabet().clone(), next, accepting)
    }

    /// The same graph as an [`Automaton`] rooted at state 0.
    pub fn to_automaton(&self) -> Automaton {
        let k = self.alphabet.len();
        let edges = (0..self.states())
            .flat_map(|p| (0..k).filter_map(move |a| self.next[p * k + a].map(|q| (p, a as Symbol, q))));
        Automaton::from_edges(self.alphabet.clone(), self.states(), edges).expect("valid table")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.accepting.len()
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    #[inline]
    pub fn step(&self, q: usize, a: Symbol) -> Option<usize> {
        self.next[q * self.alphabet.len() + a as usize]
    }

    pub fn run(&self, q: usize, w: &[Symbol]) -> Option<usize> {
        w.iter().try_fold(q, |p, &a| self.step(p, a))
    }

    pub fn is_complete(&self) -> bool {
        self.next.iter().all(Option::is_some)
    }

    pub fn accepts(&self, w: &[Symbol]) -> bool {
        self.run(0, w).is_some_and(|q| self.accepting[q])
    }

    /// Image of a state set under a word in a complete DFA.
    pub fn image(&self, set: &StateSet, w: &[Symbol]) -> StateSet {
        let mut cur = set.clone();
        for &a in w {
            let mut nxt = StateSet::empty(self.states());
            for q in cur.iter() {
                if let Some(p) = self.step(q, a) {
                    nxt.insert(p);
                }
            }
            cur = nxt;
        }
        cur
    }
}

/// Accessible subset construction from the base state followed by
/// partition refinement. States containing the base are accepting; the
/// empty subset and dead states are dropped, so the result may be partial.
/// State 0 of the result is the initial state and the remaining states are
/// numbered in breadth-first order.
pub fn determinize_minimize(a: &Automaton, cap: usize) -> Result<Dfa> {
    let k = a.alphabet().len();
    let mut index: HashMap<StateSet, usize> = HashMap::new();
    let mut subsets: Vec<StateSet> = Vec::new();
    let mut next: Vec<Option<usize>> = Vec::new();
    index.insert(a.base_set(), 0);
    subsets.push(a.base_set());
    let mut head = 0;
    while head < subsets.len() {
        let cur = subsets[head].clone();
        for s in 0..k as Symbol {
            let img = a.step_letter(&cur, s);
            if img.is_empty() {
                next.push(None);
                continue;
            }
            let id = match index.get(&img) {
                Some(&id) => id,
                None => {
                    let id = subsets.len();
                    if id >= cap {
                        return Err(Error::SubsetCapExceeded { cap });
                    }
                    index.insert(img.clone(), id);
                    subsets.push(img);
                    id
                }
            };
            next.push(Some(id));
        }
        head += 1;
    }
    let accepting: Vec<bool> = subsets.iter().map(|s| s.contains(BASE)).collect();
    Dfa::new(a.alphabet().clone(), next, accepting)?.minimized()
}

impl Dfa {
    /// Moore partition refinement with an implicit non-accepting sink;
    /// unreachable and dead states are removed.
    pub fn minimized(&self) -> Result<Dfa> {
        minimize(self)
    }
}

fn minimize(d: &Dfa) -> Result<Dfa> {
    let n = d.states();
    let k = d.alphabet().len();

    // live = can reach an accepting state
    let mut live = d.accepting.clone();
    loop {
        let mut changed = false;
        for p in 0..n {
            if !live[p] && (0..k).any(|a| d.next[p * k + a].is_some_and(|q| live[q])) {
                live[p] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let target = |p: usize, a: usize| d.next[p * k + a].filter(|&q| live[q]);

    const SINK: usize = usize::MAX;
    let mut class: Vec<usize> = d.accepting.iter().map(|&acc| usize::from(acc)).collect();
    let mut classes = 0;
    loop {
        let mut sig_index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut refined = vec![0; n];
        for p in 0..n {
            let sig: Vec<usize> = (0..k).map(|a| target(p, a).map_or(SINK, |q| class[q])).collect();
            let len = sig_index.len();
            refined[p] = *sig_index.entry((class[p], sig)).or_insert(len);
        }
        let count = sig_index.len();
        class = refined;
        if count == classes {
            break;
        }
        classes = count;
    }

    // renumber reachable classes breadth-first from the initial state
    let mut order: HashMap<usize, usize> = HashMap::new();
    let mut reps: Vec<usize> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    order.insert(class[0], 0);
    reps.push(0);
    while let Some(p) = queue.pop_front() {
        for a in 0..k {
            if let Some(q) = target(p, a) {
                if let std::collections::hash_map::Entry::Vacant(e) = order.entry(class[q]) {
                    e.insert(reps.len());
                    reps.push(q);
                    queue.push_back(q);
                }
            }
        }
    }
    let mut next = Vec::with_capacity(reps.len() * k);
    for &p in &reps {
        for a in 0..k {
            next.push(target(p, a).map(|q| order[&class[q]]));
        }
    }
    let accepting = reps.iter().map(|&p| d.accepting[p]).collect();
    Dfa::new(d.alphabet().clone(), next, accepting)
}
