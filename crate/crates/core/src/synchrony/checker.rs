use std::sync::OnceLock;

use serde::Serialize;

use super::Relation;
use crate::automata::{flower_automaton, Automaton, StateSet, BASE};
use crate::error::{Error, Result};
use crate::lang::{is_code, kleene_membership, FiniteLanguage, Symbol, Word};
use crate::Limits;

/// Which check certified a synchronizing pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    /// Qu ∩ Qv⁻¹ = {1} on the unambiguous flower automaton of a code.
    CodePath,
    /// Quantification over all forward and backward reachable subsets.
    General,
}

/// A pair (u, v) ∈ X* × X* verified to be synchronizing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyncPair {
    pub u: Word,
    pub v: Word,
    pub certified_by: Certification,
}

impl SyncPair {
    /// |uv|.
    pub fn len(&self) -> usize {
        self.u.len() + self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn product(&self) -> Word {
        self.u.concat(&self.v)
    }
}

/// Synchronizing-pair checks for one language, caching the flower
/// automaton and its reachable subset families.
///
/// The forward family holds every δ(1, r) and the backward family every
/// {q : 1 ∈ δ(q, s)}; together they enumerate all contexts (r, s) up to
/// the behaviour that matters for membership in X*.
pub struct SyncChecker {
    x: FiniteLanguage,
    flower: Automaton,
    is_code: bool,
    limits: Limits,
    forward: OnceLock<Vec<StateSet>>,
    backward: OnceLock<Vec<StateSet>>,
}

impl SyncChecker {
    pub fn new(x: &FiniteLanguage, limits: Limits) -> Result<Self> {
        let flower = flower_automaton(x)?;
        Ok(SyncChecker {
            is_code: is_code(x)?,
            x: x.clone(),
            flower,
            limits,
            forward: OnceLock::new(),
            backward: OnceLock::new(),
        })
    }

    pub fn language(&self) -> &FiniteLanguage {
        &self.x
    }

    pub fn flower(&self) -> &Automaton {
        &self.flower
    }

    pub fn is_code(&self) -> bool {
        self.is_code
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn forward_family(&self) -> Result<&[StateSet]> {
        family(&self.forward, || {
            self.flower
                .reachable_subsets(self.flower.base_set(), false, self.limits.subset_cap)
        })
    }

    pub fn backward_family(&self) -> Result<&[StateSet]> {
        family(&self.backward, || {
            self.flower
                .reachable_subsets(self.flower.base_set(), true, self.limits.subset_cap)
        })
    }

    /// Fails with [`Error::NotInStar`] unless w ∈ X*.
    pub fn require_in_star(&self, w: &[Symbol]) -> Result<()> {
        if !self.flower.alphabet().contains_word(w) {
            return Err(Error::UnknownSymbol(format!("{w:?}")));
        }
        if !kleene_membership(&self.x, w) {
            return Err(Error::NotInStar(self.x.render(w)));
        }
        Ok(())
    }

    /// Qu ∩ Qv⁻¹ = {1}. Only meaningful when X is a code.
    pub fn code_check(&self, u: &[Symbol], v: &[Symbol]) -> bool {
        let img = self.flower.full_image(u);
        let pre = self.flower.full_preimage(v);
        img.intersection(&pre).is_singleton_of(BASE)
    }

    /// The defining condition checked over all contexts: for every
    /// forward subset S and backward subset T, δ(S, uv) ∩ T ≠ ∅ forces
    /// 1 ∈ δ(S, u) and δ(1, v) ∩ T ≠ ∅.
    pub fn general_check(&self, u: &[Symbol], v: &[Symbol]) -> Result<bool> {
        let ru = Relation::of_word(&self.flower, u);
        let rv = Relation::of_word(&self.flower, v);
        self.general_check_relations(&ru, &rv)
    }

    pub(crate) fn general_check_relations(&self, ru: &Relation, rv: &Relation) -> Result<bool> {
        let fwd = self.forward_family()?;
        let bwd = self.backward_family()?;
        let v_from_base = rv.row(BASE);
        for s in fwd {
            let su = ru.apply(s);
            let suv = rv.apply(&su);
            if suv.is_empty() {
                continue;
            }
            let left_ok = su.contains(BASE);
            for t in bwd {
                if suv.intersects(t) && (!left_ok || !v_from_base.intersects(t)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Decides whether (u, v) is a synchronizing pair, through the code path
    /// when X is a code and the general check otherwise.
    pub fn is_sync_pair(&self, u: &[Symbol], v: &[Symbol]) -> Result<bool> {
        self.require_in_star(u)?;
        self.require_in_star(v)?;
        if self.is_code {
            Ok(self.code_check(u, v))
        } else {
            self.general_check(u, v)
        }
    }

    /// Checks (u, v) and returns it as a certified [`SyncPair`].
    pub fn certify(&self, u: &[Symbol], v: &[Symbol]) -> Result<Option<SyncPair>> {
        let ok = self.is_sync_pair(u, v)?;
        Ok(ok.then(|| SyncPair {
            u: Word::from(u),
            v: Word::from(v),
            certified_by: if self.is_code {
                Certification::CodePath
            } else {
                Certification::General
            },
        }))
    }
}

fn family(cell: &OnceLock<Vec<StateSet>>, build: impl FnOnce() -> Result<Vec<StateSet>>) -> Result<&[StateSet]> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = build()?;
    Ok(cell.get_or_init(|| v))
}

/// One-shot convenience wrapper around [`SyncChecker::is_sync_pair`].
pub fn is_sync_pair(x: &FiniteLanguage, u: &[Symbol], v: &[Symbol], limits: Limits) -> Result<bool> {
    SyncChecker::new(x, limits)?.is_sync_pair(u, v)
}
