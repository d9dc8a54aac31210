use serde_json::{json, Value};

use super::{
    apply_encoding, kraft_canonical, length_profile_general, length_profile_power2, road_colored_sync_code,
    ColoringReport, ColoringSearch, Encoding, LengthProfile, Transfer,
};
use crate::completeness::{is_completable, is_complete_language, shortest_incompletable};
use crate::error::{Error, Result};
use crate::lang::{Alphabet, FiniteLanguage, Symbol, Word};
use crate::synchrony::{shortest_sync_pair, shortest_sync_pair_where, PairSearch, SyncChecker, SyncPair};
use crate::Limits;

/// ⌈a / b⌉ for b > 0.
fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Assigns the words of `code` to source letters in profile order: letter
/// i gets the least unused codeword of length kᵢ.
fn assign(code: &FiniteLanguage, profile: &LengthProfile, source: &Alphabet, limits: Limits) -> Result<Encoding> {
    let mut free: Vec<Option<&Word>> = code.words().iter().map(Some).collect();
    let mut images = Vec::with_capacity(profile.lengths.len());
    for &k in &profile.lengths {
        let slot = free
            .iter_mut()
            .find(|w| w.is_some_and(|w| w.len() == k))
            .ok_or_else(|| Error::Internal(format!("no codeword of length {k} left")))?;
        images.push(slot.take().expect("checked").clone());
    }
    Encoding::new(source.clone(), code.alphabet().clone(), images, limits)
}

fn encoding_json(h: &Encoding) -> Value {
    Value::Object(h.render().into_iter().map(|(a, w)| (a, Value::String(w))).collect())
}

#[derive(Clone, Debug)]
pub struct IncompletableTrace {
    pub encoding: Encoding,
    pub encoded: FiniteLanguage,
    /// Shortest incompletable word of h(X).
    pub v: Word,
    pub u: Word,
    /// ⌈|v| / ⌊log₂ d⌋⌉.
    pub bound: usize,
    pub holds: bool,
}

impl IncompletableTrace {
    pub fn to_json(&self, x: &FiniteLanguage) -> Value {
        json!({
            "encoding": encoding_json(&self.encoding),
            "encoded_size": self.encoded.size(),
            "v": self.encoded.render(&self.v),
            "u": x.render(&self.u),
            "bound": self.bound,
            "holds": self.holds,
        })
    }
}

/// Maps an incomplete X over d ≥ 3 letters to binary with a complete
/// prefix code h(A), takes a shortest incompletable word v of h(X) and
/// returns the shortest u with v a prefix of h(u), itself incompletable
/// in X.
pub fn reduce_incompletable_to_binary(x: &FiniteLanguage, limits: Limits) -> Result<(Word, IncompletableTrace)> {
    let d = x.alphabet().len();
    if d < 3 {
        return Err(Error::Precondition(format!("need d ≥ 3 letters, got {d}")));
    }
    x.require_nonempty_epsilon_free()?;
    let profile = length_profile_general(d)?;
    let h = assign(&kraft_canonical(&profile)?, &profile, x.alphabet(), limits)?;
    let hx = apply_encoding(&h, x)?;
    let v =
        shortest_incompletable(&hx, limits.subset_cap)?.ok_or_else(|| Error::Precondition("X is complete".into()))?;
    let (mut u, rest) = h.decode_prefix(&v)?;
    if !rest.is_empty() {
        let a = (0..d as Symbol)
            .find(|&a| rest.is_prefix_of(h.image_of(a)))
            .ok_or_else(|| Error::Internal("complete prefix image failed to decode".into()))?;
        u.push(a);
    }
    if is_completable(x, &u)? {
        return Err(Error::Internal(format!("decoded word {} is completable", x.render(&u))));
    }
    let bound = ceil_div(v.len(), d.ilog2() as usize);
    let holds = u.len() <= bound;
    Ok((
        u.clone(),
        IncompletableTrace {
            encoding: h,
            encoded: hx,
            v,
            u,
            bound,
            holds,
        },
    ))
}

#[derive(Clone, Debug)]
pub struct SyncTrace {
    pub profile: LengthProfile,
    pub coloring: ColoringReport,
    pub encoding: Encoding,
    pub encoded: FiniteLanguage,
    pub transfer: Transfer,
    pub encoded_pair: SyncPair,
    /// ⌈|h(uv)| / ⌊log₂(d − 1)⌋⌉.
    pub bound: usize,
    pub holds: bool,
}

impl SyncTrace {
    pub fn to_json(&self, x: &FiniteLanguage, pair: &SyncPair) -> Value {
        json!({
            "profile": self.profile,
            "coloring": self.coloring,
            "encoding": encoding_json(&self.encoding),
            "encoded_size": self.encoded.size(),
            "transfer": self.transfer,
            "encoded_pair": { "u": self.encoded.render(&self.encoded_pair.u), "v": self.encoded.render(&self.encoded_pair.v) },
            "pair": { "u": x.render(&pair.u), "v": x.render(&pair.v) },
            "bound": self.bound,
            "holds": self.holds,
        })
    }
}

/// Maps a complete synchronizing X over d ≥ 3 letters to binary with a
/// synchronizing complete prefix code h(A), finds a shortest synchronizing
/// pair of h(X) and pulls it back.
///
/// For d a power of two the profile (m − 1, m + 1, m + 1, m, …) is used,
/// since the uniform one has gcd m and admits no synchronizing code.
pub fn reduce_sync_to_binary(
    x: &FiniteLanguage,
    limits: Limits,
    search: ColoringSearch,
) -> Result<(SyncPair, SyncTrace)> {
    let d = x.alphabet().len();
    if d < 3 {
        return Err(Error::Precondition(format!("need d ≥ 3 letters, got {d}")));
    }
    x.require_nonempty_epsilon_free()?;
    if !is_complete_language(x, limits.subset_cap)? {
        return Err(Error::Precondition("X is not complete".into()));
    }
    if shortest_sync_pair(x, limits)? == PairSearch::NotSynchronizing {
        return Err(Error::Precondition("X is not synchronizing".into()));
    }
    let profile = if d.is_power_of_two() {
        length_profile_power2(d)?
    } else {
        length_profile_general(d)?
    };
    let (code, coloring) = road_colored_sync_code(&profile, search)?;
    let h = assign(&code, &profile, x.alphabet(), limits)?;
    let hx = apply_encoding(&h, x)?;
    let transfer = super::transfer(&h, x, limits)?;
    if !transfer.completeness_transfers() || transfer.synchrony_transfers() == Some(false) {
        return Err(Error::Internal(format!("transfer check failed: {transfer:?}")));
    }
    let encoded_pair = match shortest_sync_pair(&hx, limits)? {
        PairSearch::Found(p) => p,
        PairSearch::NotSynchronizing => {
            return Err(Error::Internal("h(X) is not synchronizing".into()));
        }
    };
    let u = h.decode(&encoded_pair.u)?;
    let v = h.decode(&encoded_pair.v)?;
    let checker = SyncChecker::new(x, limits)?;
    let pair = checker
        .certify(&u, &v)?
        .ok_or_else(|| Error::Internal("pulled-back pair is not synchronizing".into()))?;
    let floor = (d - 1).ilog2() as usize;
    let bound = ceil_div(encoded_pair.len(), floor);
    let holds = pair.len() <= bound;
    Ok((
        pair,
        SyncTrace {
            profile,
            coloring,
            encoding: h,
            encoded: hx,
            transfer,
            encoded_pair,
            bound,
            holds,
        },
    ))
}

#[derive(Clone, Debug)]
pub enum UniformOutcome {
    /// X uses a single letter; no encoding is built.
    Unary(SyncPair),
    Encoded {
        m: usize,
        encoding: Box<Encoding>,
        encoded: FiniteLanguage,
        /// The pair of X whose product has the adjacent letters x y.
        pair: SyncPair,
        adjacent: (Symbol, Symbol),
        encoded_pair: SyncPair,
    },
}

impl UniformOutcome {
    pub fn pair(&self) -> &SyncPair {
        match self {
            UniformOutcome::Unary(p) => p,
            UniformOutcome::Encoded { pair, .. } => pair,
        }
    }

    pub fn to_json(&self, x: &FiniteLanguage) -> Value {
        match self {
            UniformOutcome::Unary(p) => json!({ "unary": true, "pair": { "u": x.render(&p.u), "v": x.render(&p.v) } }),
            UniformOutcome::Encoded {
                m,
                encoding,
                encoded,
                pair,
                adjacent,
                encoded_pair,
            } => json!({
                "unary": false,
                "m": m,
                "encoding": encoding_json(encoding),
                "adjacent": [x.alphabet().symbol(adjacent.0), x.alphabet().symbol(adjacent.1)],
                "pair": { "u": x.render(&pair.u), "v": x.render(&pair.v) },
                "encoded_pair": { "u": encoded.render(&encoded_pair.u), "v": encoded.render(&encoded_pair.v) },
                "encoded_len": encoded_pair.len(),
            }),
        }
    }
}

fn adjacent_pair(w: &[Symbol]) -> Option<(Symbol, Symbol)> {
    w.windows(2).find(|p| p[0] != p[1]).map(|p| (p[0], p[1]))
}

/// Uniform-length binary encoding of a synchronizing X (completeness not
/// needed): m = ⌈log₂(d + 1)⌉, h(x) = b·a^(m−1) and h(y) = a^(m−1)·b for
/// letters x y adjacent in the product of a synchronizing pair, the other
/// letters sent to the remaining words of Bᵐ other than aᵐ.
///
/// The pair is searched among synchronizing pairs whose product contains
/// two distinct adjacent letters; if none turns up within the budget the
/// call fails rather than constructing one.
pub fn uniform_sync_encoding(x: &FiniteLanguage, limits: Limits) -> Result<UniformOutcome> {
    x.require_nonempty_epsilon_free()?;
    let used: std::collections::BTreeSet<Symbol> = x.words().iter().flat_map(|w| w.iter().copied()).collect();
    if used.len() <= 1 {
        return match shortest_sync_pair(x, limits)? {
            PairSearch::Found(p) => Ok(UniformOutcome::Unary(p)),
            PairSearch::NotSynchronizing => Err(Error::Precondition("X is not synchronizing".into())),
        };
    }
    let pair = match shortest_sync_pair_where(x, limits, &|u, v| adjacent_pair(&u.concat(v)).is_some())? {
        PairSearch::Found(p) => p,
        PairSearch::NotSynchronizing => return Err(Error::Precondition("X is not synchronizing".into())),
    };
    let (ax, ay) = adjacent_pair(&pair.product()).expect("filtered");
    let d = x.alphabet().len();
    let m = (d + 1).next_power_of_two().ilog2() as usize;
    let b = Alphabet::letters(2)?;
    let mut images: Vec<Option<Word>> = vec![None; d];
    let mut ba = vec![1 as Symbol];
    ba.extend(std::iter::repeat_n(0, m - 1));
    let mut ab: Vec<Symbol> = std::iter::repeat_n(0, m - 1).collect();
    ab.push(1);
    images[ax as usize] = Some(Word::new(ba.clone()));
    images[ay as usize] = Some(Word::new(ab.clone()));
    let mut rest = (1..1usize << m).map(|bits| Word::new((0..m).rev().map(|i| (bits >> i & 1) as Symbol).collect()));
    for slot in images.iter_mut().filter(|s| s.is_none()) {
        let w = rest
            .by_ref()
            .find(|w| w.symbols() != ba.as_slice() && w.symbols() != ab.as_slice())
            .ok_or_else(|| Error::Internal("not enough words of length m".into()))?;
        *slot = Some(w);
    }
    let images = images.into_iter().map(|w| w.expect("filled")).collect();
    let h = Encoding::new(x.alphabet().clone(), b, images, limits)?;
    let hx = apply_encoding(&h, x)?;
    let (hu, hv) = (h.encode(&pair.u), h.encode(&pair.v));
    if hu.len() + hv.len() != pair.len() * m {
        return Err(Error::Internal("uniform encoding changed a length".into()));
    }
    let encoded_pair = SyncChecker::new(&hx, limits)?
        .certify(&hu, &hv)?
        .ok_or_else(|| Error::Internal("encoded pair does not synchronize h(X)".into()))?;
    Ok(UniformOutcome::Encoded {
        m,
        encoding: Box::new(h),
        encoded: hx,
        pair,
        adjacent: (ax, ay),
        encoded_pair,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incompletable_ternary() {
        let x = FiniteLanguage::over_letters(3, &["aa"]).unwrap();
        let (u, trace) = reduce_incompletable_to_binary(&x, Limits::default()).unwrap();
        assert!(u.iter().any(|&s| s != 0));
        assert!(trace.holds);
        let complete = FiniteLanguage::over_letters(3, &["a", "b", "c"]).unwrap();
        assert!(reduce_incompletable_to_binary(&complete, Limits::default()).is_err());
    }

    #[test]
    fn sync_ternary() {
        let x = FiniteLanguage::over_letters(3, &["a", "b", "ca", "cb", "cc"]).unwrap();
        let (pair, trace) = reduce_sync_to_binary(&x, Limits::default(), ColoringSearch::default()).unwrap();
        assert!(trace.holds);
        assert!(SyncChecker::new(&x, Limits::default())
            .unwrap()
            .is_sync_pair(&pair.u, &pair.v)
            .unwrap());
        // the full uniform code of length 2 has gcd 2 and no synchronizing pair
        let sq = FiniteLanguage::over_letters(3, &["aa", "ab", "ac", "ba", "bb", "bc", "ca", "cb", "cc"]).unwrap();
        assert!(matches!(
            reduce_sync_to_binary(&sq, Limits::default(), ColoringSearch::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn sync_power_of_two() {
        let x = FiniteLanguage::over_letters(4, &["a", "b", "c", "da", "db", "dc", "dd"]).unwrap();
        let (_, trace) = reduce_sync_to_binary(&x, Limits::default(), ColoringSearch::default()).unwrap();
        assert_eq!(trace.profile.lengths, [1, 3, 3, 2]);
        assert!(trace.holds);
    }

    #[test]
    fn uniform_on_incomplete_example() {
        let x = FiniteLanguage::over_letters(2, &["aa", "ab", "ba", "baa", "bbb"]).unwrap();
        let out = uniform_sync_encoding(&x, Limits::default()).unwrap();
        let UniformOutcome::Encoded {
            m, encoded_pair, pair, ..
        } = &out
        else {
            panic!("expected an encoding")
        };
        assert_eq!(*m, 2);
        assert_eq!(encoded_pair.len(), pair.len() * 2);
    }

    #[test]
    fn uniform_unary_fallback() {
        let x = FiniteLanguage::over_letters(2, &["a"]).unwrap();
        assert!(matches!(
            uniform_sync_encoding(&x, Limits::default()).unwrap(),
            UniformOutcome::Unary(_)
        ));
    }
}
