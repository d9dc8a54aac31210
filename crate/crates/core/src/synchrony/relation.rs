use crate::automata::{Automaton, StateSet};
use crate::lang::Symbol;

/// The transition relation of a word, one row of successors per state.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Relation {
    rows: Vec<StateSet>,
}

impl Relation {
    pub fn identity(n: usize) -> Self {
        Relation {
            rows: (0..n).map(|q| StateSet::singleton(n, q)).collect(),
        }
    }

    pub fn of_word(a: &Automaton, w: &[Symbol]) -> Self {
        Relation::identity(a.states()).then_word(a, w)
    }

    /// The relation of `self` followed by the word `w`.
    pub fn then_word(&self, a: &Automaton, w: &[Symbol]) -> Self {
        Relation {
            rows: self.rows.iter().map(|r| a.image(r, w)).collect(),
        }
    }

    /// The relation of the word `w` followed by `self`.
    pub fn after_word(&self, a: &Automaton, w: &[Symbol]) -> Self {
        let n = a.states();
        Relation {
            rows: (0..n)
                .map(|q| self.apply(&a.image(&StateSet::singleton(n, q), w)))
                .collect(),
        }
    }

    /// Image of a set of states.
    pub fn apply(&self, set: &StateSet) -> StateSet {
        let mut out = StateSet::empty(self.rows.len());
        for q in set.iter() {
            out.union_with(&self.rows[q]);
        }
        out
    }

    pub fn row(&self, q: usize) -> &StateSet {
        &self.rows[q]
    }
}
