use std::fmt;

use smallvec::SmallVec;

/// A subset of an automaton's states, stored as a dense bitset sized to
/// the state count.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    blocks: SmallVec<[u64; 2]>,
}

fn blocks_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl StateSet {
    pub fn empty(n: usize) -> Self {
        StateSet {
            blocks: SmallVec::from_elem(0, blocks_for(n)),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = StateSet::empty(n);
        for q in 0..n {
            s.insert(q);
        }
        s
    }

    pub fn singleton(n: usize, q: usize) -> Self {
        let mut s = StateSet::empty(n);
        s.insert(q);
        s
    }

    pub fn from_states(n: usize, states: impl IntoIterator<Item = usize>) -> Self {
        let mut s = StateSet::empty(n);
        for q in states {
            s.insert(q);
        }
        s
    }

    #[inline]
    pub fn contains(&self, q: usize) -> bool {
        self.blocks[q / 64] >> (q % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, q: usize) {
        self.blocks[q / 64] |= 1 << (q % 64);
    }

    #[inline]
    pub fn remove(&mut self, q: usize) {
        self.blocks[q / 64] &= !(1 << (q % 64));
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// True when the set is exactly `{q}`.
    pub fn is_singleton_of(&self, q: usize) -> bool {
        self.contains(q) && self.len() == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &b)| {
            let mut bits = b;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i * 64 + t)
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    #[inline]
    pub fn union_with(&mut self, other: &StateSet) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        StateSet {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        StateSet {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a & !b).collect(),
        }
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.blocks.iter().zip(&other.blocks).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_algebra() {
        let a = StateSet::from_states(70, [0, 3, 65]);
        let b = StateSet::from_states(70, [3, 69]);
        assert_eq!(a.len(), 3);
        assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), vec![3]);
        assert_eq!(a.union(&b).len(), 4);
        assert_eq!(a.difference(&b).iter().collect::<Vec<_>>(), vec![0, 65]);
        assert!(a.intersects(&b));
        assert!(StateSet::from_states(70, [3]).is_subset(&a));
        assert!(StateSet::singleton(70, 3).is_singleton_of(3));
        assert!(StateSet::empty(70).is_empty());
        assert_eq!(StateSet::full(70).len(), 70);
    }

    proptest! {
        #[test]
        fn matches_btreeset(xs in proptest::collection::btree_set(0usize..130, 0..40),
                            ys in proptest::collection::btree_set(0usize..130, 0..40)) {
            let a = StateSet::from_states(130, xs.iter().copied());
            let b = StateSet::from_states(130, ys.iter().copied());
            let inter: Vec<usize> = xs.intersection(&ys).copied().collect();
            prop_assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), inter);
            let uni: Vec<usize> = xs.union(&ys).copied().collect();
            prop_assert_eq!(a.union(&b).iter().collect::<Vec<_>>(), uni);
            prop_assert_eq!(a.is_subset(&b), xs.is_subset(&ys));
            prop_assert_eq!(a.len(), xs.len());
        }
    }
}
