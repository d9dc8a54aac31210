use serde::Serialize;

use super::SyncChecker;
use crate::error::Result;
use crate::lang::{kleene_membership, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantCheck {
    /// The context-exchange property holds.
    pub holds: bool,
    /// Whether c ∈ X*; the converse direction (c, c) needs it.
    pub in_star: bool,
}

/// Decides whether `c` is a constant of X: u₁cu₂, u₃cu₄ ∈ X* imply
/// u₁cu₄, u₃cu₂ ∈ X*.
///
/// Contexts collapse to forward subsets S = δ(1, u₁) and backward subsets
/// T = {q : 1 ∈ δ(q, u₂)}; with f(S, T) = [δ(S, c) ∩ T ≠ ∅] the property
/// says that the support of f is a combinatorial rectangle.
pub fn is_constant(checker: &SyncChecker, c: &[Symbol]) -> Result<ConstantCheck> {
    let a = checker.flower();
    a.step_forward(&a.full_set(), c)?;
    let fwd = checker.forward_family()?;
    let bwd = checker.backward_family()?;
    let images: Vec<_> = fwd.iter().map(|s| a.image(s, c)).collect();
    let rows: Vec<bool> = images.iter().map(|img| bwd.iter().any(|t| img.intersects(t))).collect();
    let cols: Vec<bool> = bwd.iter().map(|t| images.iter().any(|img| img.intersects(t))).collect();
    let holds = images.iter().zip(&rows).filter(|(_, &r)| r).all(|(img, _)| {
        bwd.iter()
            .zip(&cols)
            .filter(|(_, &c)| c)
            .all(|(t, _)| img.intersects(t))
    });
    Ok(ConstantCheck {
        holds,
        in_star: kleene_membership(checker.language(), c),
    })
}
