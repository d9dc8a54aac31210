use crate::error::{Error, Result};
use crate::lang::{Alphabet, FiniteLanguage, Symbol, Word};

/// The prefix code Xₙ = aAⁿ⁻¹ ∪ bAⁿ⁻² over A = {a, b}, n ≥ 3.
pub fn cerny_family(n: usize) -> Result<FiniteLanguage> {
    if n < 3 {
        return Err(Error::Precondition(format!("Černý family needs n ≥ 3, got {n}")));
    }
    let mut words = Vec::new();
    for (head, tail) in [(0 as Symbol, n - 1), (1, n - 2)] {
        for bits in 0..(1usize << tail) {
            let mut w = vec![head];
            w.extend((0..tail).rev().map(|i| (bits >> i & 1) as Symbol));
            words.push(Word::new(w));
        }
    }
    FiniteLanguage::new(Alphabet::letters(2)?, words)
}

/// The pair ((baⁿ⁻²)ⁿ⁻¹, ε), of length (n − 1)²: the block baⁿ⁻² is a
/// codeword of bAⁿ⁻², so the power lies in Xₙ*. The mirror (abⁿ⁻²)ⁿ⁻¹
/// does not factor over Xₙ.
pub fn cerny_pair(n: usize) -> (Word, Word) {
    let block: Vec<Symbol> = std::iter::once(1).chain(std::iter::repeat_n(0, n - 2)).collect();
    (Word::new(block.repeat(n - 1)), Word::empty())
}
