//! Completeness and synchronization of finite variable-length codes.
//!
//! The crate decides completeness of finite languages, finds shortest
//! incompletable words and synchronizing pairs, runs the marked-letter
//! reduction that bounds synchronizing-pair length by incompletable-word
//! length, builds synchronizing complete prefix codes from length
//! profiles, and drives small exhaustive or seeded experiments over
//! classes of languages.

pub mod automata;
pub mod completeness;
pub mod encoding;
pub mod error;
pub mod experiment;
pub mod lang;
pub mod reduction;
pub mod synchrony;

pub use error::{Error, Result};

/// Resource limits shared by the exponential searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of distinct subsets (or subset-derived classes) a
    /// single search may materialize.
    pub subset_cap: usize,
    /// Maximum number of candidate pairs tested by a synchronizing-pair
    /// search.
    pub pair_budget: u64,
}

impl Limits {
    pub const DEFAULT_SUBSET_CAP: usize = 1 << 20;
    pub const DEFAULT_PAIR_BUDGET: u64 = 10_000_000;
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            subset_cap: Self::DEFAULT_SUBSET_CAP,
            pair_budget: Self::DEFAULT_PAIR_BUDGET,
        }
    }
}
