//! Vines: braids whose strands may merge, kept in the normal form
//! `f ∘ β` with `β` fibre-trivial over the monotone map `f`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{braid_cable, braid_compose, braid_nf, braid_restrict, BraidError, BraidNF, BraidWord, Result};
use crate::finmaps::{BlockProfile, FinFunction, MonotoneMap};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "VineRepr", into = "VineRepr")]
pub struct Vine {
    braid: BraidNF,
    monotone: MonotoneMap,
}

#[derive(Serialize, Deserialize)]
struct VineRepr {
    strands: usize,
    braid: Vec<i32>,
    fibres: Vec<usize>,
}

impl TryFrom<VineRepr> for Vine {
    type Error = BraidError;
    fn try_from(r: VineRepr) -> Result<Self> {
        let word = BraidWord::new(r.strands, r.braid)?;
        vine_normalize(&word, &MonotoneMap::new(r.fibres))
    }
}

impl From<Vine> for VineRepr {
    fn from(v: Vine) -> Self {
        VineRepr {
            strands: v.source(),
            braid: v.braid.to_word().letters().to_vec(),
            fibres: v.monotone.fibres().to_vec(),
        }
    }
}

impl Vine {
    pub fn identity(n: usize) -> Self {
        Self { braid: BraidNF::identity(n), monotone: MonotoneMap::identity(n) }
    }

    /// A pure braid viewed as an invertible vine.
    pub fn from_braid(w: &BraidWord) -> Self {
        Self { braid: braid_nf(w), monotone: MonotoneMap::identity(w.strands()) }
    }

    pub fn from_monotone(f: &MonotoneMap) -> Self {
        Self { braid: BraidNF::identity(f.source()), monotone: f.clone() }
    }

    pub fn braid(&self) -> &BraidNF {
        &self.braid
    }

    pub fn braid_word(&self) -> BraidWord {
        self.braid.to_word()
    }

    pub fn monotone(&self) -> &MonotoneMap {
        &self.monotone
    }

    pub fn source(&self) -> usize {
        self.braid.strands()
    }

    pub fn target(&self) -> usize {
        self.monotone.target()
    }

    pub fn is_invertible(&self) -> bool {
        self.monotone.is_identity()
    }

    pub fn inverse(&self) -> Option<Vine> {
        self.is_invertible().then(|| Vine::from_braid(&self.braid.to_word().inverse()))
    }

    pub fn ordinal_sum(&self, other: &Vine) -> Vine {
        let word = self.braid.to_word().ordinal_sum(&other.braid.to_word());
        Vine { braid: braid_nf(&word), monotone: self.monotone.ordinal_sum(&other.monotone) }
    }
}

impl fmt::Display for Vine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vine[{} ; {:?}]", self.braid, self.monotone.fibres())
    }
}

/// The braid on the strands ending in each fibre of `f`, juxtaposed.
pub(crate) fn fibre_restrictions(w: &BraidWord, f: &MonotoneMap) -> Result<Vec<BraidWord>> {
    (0..f.target())
        .map(|k| {
            let keep: Vec<usize> = f.fibre_range(k).collect();
            braid_restrict(w, &keep)
        })
        .collect()
}

/// Removes the crossings inside each fibre of `f`.
pub fn vine_normalize(braid: &BraidWord, f: &MonotoneMap) -> Result<Vine> {
    if braid.strands() != f.source() {
        return Err(BraidError::VineArity { left: braid.strands(), right: f.source() });
    }
    let inner = fibre_restrictions(braid, f)?.iter().fold(BraidWord::identity(0), |acc, r| acc.ordinal_sum(r));
    let purged = braid_compose(&inner.inverse(), braid)?;
    Ok(Vine { braid: braid_nf(&purged), monotone: f.clone() })
}

/// Pushes `v2`'s braid past `v1`'s merges. Returns the raw braid of the
/// composite together with its monotone part.
pub(crate) fn vine_compose_raw(v1: &Vine, v2: &Vine) -> Result<(BraidWord, MonotoneMap)> {
    if v1.target() != v2.source() {
        return Err(BraidError::VineArity { left: v1.target(), right: v2.source() });
    }
    let sizes = v1.monotone.fibres();
    let beta2 = v2.braid.to_word();
    let rho3 = braid_cable(&beta2, &BlockProfile(sizes.to_vec()))?;
    let pi = beta2.underlying_perm();
    let mut moved = vec![0; sizes.len()];
    for (k, &s) in sizes.iter().enumerate() {
        moved[pi.apply(k)] = s;
    }
    let f3 = MonotoneMap::new(moved);
    let raw = braid_compose(&rho3, &v1.braid.to_word())?;
    let f = v2.monotone.compose(&f3)?;
    Ok((raw, f))
}

/// `v2 ∘ v1`.
pub fn vine_compose(v1: &Vine, v2: &Vine) -> Result<Vine> {
    let (raw, f) = vine_compose_raw(v1, v2)?;
    vine_normalize(&raw, &f)
}

pub fn vine_underlying_fn(v: &Vine) -> FinFunction {
    v.monotone
        .to_function()
        .compose(&v.braid.to_word().underlying_perm().to_function())
        .expect("braid and monotone part share the source")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_crossing_then_merge() {
        let w = BraidWord::new(2, vec![1, 1]).unwrap();
        let v = vine_normalize(&w, &MonotoneMap::terminal(2)).unwrap();
        assert!(v.braid().is_identity());
    }

    #[test]
    fn identity_composition() {
        let w = BraidWord::new(3, vec![1, -2]).unwrap();
        let v = vine_normalize(&w, &MonotoneMap::new(vec![1, 0, 2])).unwrap();
        assert_eq!(vine_compose(&Vine::identity(3), &v).unwrap(), v);
        assert_eq!(vine_compose(&v, &Vine::identity(3)).unwrap(), v);
    }
}
