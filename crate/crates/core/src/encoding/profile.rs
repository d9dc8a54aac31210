use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lang::{Alphabet, FiniteLanguage, Symbol, Word};

/// Codeword lengths k₁, …, kₙ over a `radix`-letter alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthProfile {
    pub radix: usize,
    pub lengths: Vec<usize>,
}

impl LengthProfile {
    pub fn new(radix: usize, lengths: Vec<usize>) -> Result<Self> {
        if radix < 2 {
            return Err(Error::Precondition(format!("radix must be at least 2, got {radix}")));
        }
        if lengths.is_empty() || lengths.contains(&0) {
            return Err(Error::Precondition("lengths must be positive and nonempty".into()));
        }
        Ok(LengthProfile { radix, lengths })
    }

    /// Σ radix^(−kᵢ), exactly.
    pub fn kraft_sum(&self) -> BigRational {
        let r = BigInt::from(self.radix);
        self.lengths
            .iter()
            .map(|&k| BigRational::new(BigInt::one(), Pow::pow(&r, k)))
            .fold(BigRational::from_integer(BigInt::from(0)), |acc, t| acc + t)
    }

    pub fn gcd(&self) -> usize {
        self.lengths.iter().fold(0, |g, &k| g.gcd(&k))
    }

    pub fn is_complete(&self) -> bool {
        self.kraft_sum().is_one()
    }
}

/// Binary profile for d letters: with m = ⌊log₂ d⌋ and γ = 2^(m+1) − d,
/// the first γ lengths are m and the rest m + 1.
pub fn length_profile_general(d: usize) -> Result<LengthProfile> {
    if d < 2 {
        return Err(Error::Precondition(format!("need d ≥ 2, got {d}")));
    }
    let m = d.ilog2() as usize;
    let gamma = (1usize << (m + 1)) - d;
    let lengths = (1..=d).map(|i| if i <= gamma { m } else { m + 1 }).collect();
    LengthProfile::new(2, lengths)
}

/// Binary profile for d = 2^m, m ≥ 2: lengths m − 1, m + 1, m + 1, then m.
/// Unlike the uniform profile its gcd is 1.
pub fn length_profile_power2(d: usize) -> Result<LengthProfile> {
    if d < 4 || !d.is_power_of_two() {
        return Err(Error::Precondition(format!("need d = 2^m with m ≥ 2, got {d}")));
    }
    let m = d.ilog2() as usize;
    let lengths = (1..=d)
        .map(|i| match i {
            1 => m - 1,
            2 | 3 => m + 1,
            _ => m,
        })
        .collect();
    LengthProfile::new(2, lengths)
}

/// The canonical prefix code with the given lengths: lengths sorted
/// ascending, each codeword the successor numeral of the previous one
/// padded on the right to the next length.
pub fn kraft_canonical(profile: &LengthProfile) -> Result<FiniteLanguage> {
    if profile.kraft_sum() > BigRational::one() {
        return Err(Error::Precondition(format!(
            "Kraft sum {} exceeds 1",
            profile.kraft_sum()
        )));
    }
    let r = profile.radix as Symbol;
    let mut lengths = profile.lengths.clone();
    lengths.sort_unstable();
    let mut words = Vec::with_capacity(lengths.len());
    let mut digits: Vec<Symbol> = Vec::new();
    for (i, &k) in lengths.iter().enumerate() {
        if i > 0 {
            // increment; the Kraft bound keeps this from overflowing
            let mut j = digits.len();
            loop {
                j -= 1;
                if digits[j] + 1 < r {
                    digits[j] += 1;
                    break;
                }
                digits[j] = 0;
            }
        }
        digits.resize(k, 0);
        words.push(Word::new(digits.clone()));
    }
    FiniteLanguage::new(Alphabet::letters(profile.radix)?, words)
}
