//! Automata over finite alphabets with a single base state (index 0)
//! that is both initial and final, their subset dynamics, and minimal
//! deterministic automata.

mod automaton;
mod dfa;
mod stateset;

pub use automaton::{flower_automaton, Automaton, AutomatonJson, BASE};
pub use dfa::{determinize_minimize, Dfa};
pub use stateset::StateSet;
