//! Synchronizing pairs, constants, reset words of deterministic automata
//! and the Černý witness family.

mod cerny;
mod checker;
mod constant;
mod relation;
mod reset;
mod search;

pub use cerny::{cerny_family, cerny_pair};
pub use checker::{is_sync_pair, Certification, SyncChecker, SyncPair};
pub use constant::{is_constant, ConstantCheck};
pub use relation::Relation;
pub use reset::{is_synchronizing_dfa, sync_word_shortest};
pub use search::{shortest_left_sync_word, shortest_sync_pair, shortest_sync_pair_where, PairSearch};
