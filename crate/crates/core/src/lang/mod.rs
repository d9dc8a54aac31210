//! Words, alphabets and finite languages, plus the basic code-theoretic
//! predicates over them.

mod alphabet;
mod code;
mod language;
mod parse;
mod word;

pub use alphabet::{Alphabet, Symbol, MAX_SYMBOLS};
pub use code::{is_code, is_prefix, kleene_membership};
pub use language::FiniteLanguage;
pub use parse::parse_language;
pub use word::Word;
