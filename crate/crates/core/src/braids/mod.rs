//! Braid words, cabling, strand restriction and vines.
//!
//! A word `[l_1, ..., l_k]` of signed generator indices denotes the composite
//! `σ_{l_1} ∘ ... ∘ σ_{l_k}`: the last letter acts first. Generator `i`
//! (1-indexed) exchanges the strands in positions `i` and `i + 1`. The
//! underlying permutation sends the start position of a strand to its end
//! position.

mod diagram;
mod garside;
mod vine;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finmaps::{BlockProfile, FinMapError, Permutation};

pub use diagram::{render_diagram, DIAGRAM_MAX_LETTERS};
pub use garside::{braid_eq, braid_nf, reduced_word, BraidNF};
pub(crate) use vine::vine_compose_raw;
pub use vine::{vine_compose, vine_normalize, vine_underlying_fn, Vine};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("generator 0 is not a braid letter")]
    ZeroGenerator,
    #[error("generator {generator} is out of range for {strands} strands")]
    GeneratorOutOfRange { generator: i32, strands: usize },
    #[error("strand counts differ: {left} and {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("expected {expected} blocks, found {found}")]
    BlockCount { expected: usize, found: usize },
    #[error("strand {position} is out of range for {strands} strands")]
    PositionOutOfRange { position: usize, strands: usize },
    #[error("vine arities do not compose: {left} and {right}")]
    VineArity { left: usize, right: usize },
    #[error(transparent)]
    FinMap(#[from] FinMapError),
}

pub type Result<T> = std::result::Result<T, BraidError>;

/// A word in the Artin generators of the braid group on `strands` strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WordRepr", into = "WordRepr")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct WordRepr {
    strands: usize,
    word: Vec<i32>,
}

impl TryFrom<WordRepr> for BraidWord {
    type Error = BraidError;
    fn try_from(r: WordRepr) -> Result<Self> {
        BraidWord::new(r.strands, r.word)
    }
}

impl From<BraidWord> for WordRepr {
    fn from(w: BraidWord) -> Self {
        WordRepr { strands: w.strands, word: w.letters }
    }
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        for &l in &letters {
            if l == 0 {
                return Err(BraidError::ZeroGenerator);
            }
            if l.unsigned_abs() as usize >= strands {
                return Err(BraidError::GeneratorOutOfRange { generator: l, strands });
            }
        }
        Ok(Self { strands, letters })
    }

    pub(crate) fn new_unchecked(strands: usize, letters: Vec<i32>) -> Self {
        debug_assert!(letters.iter().all(|&l| l != 0 && (l.unsigned_abs() as usize) < strands));
        Self { strands, letters }
    }

    pub fn identity(strands: usize) -> Self {
        Self { strands, letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// Sum of the letter signs, an invariant of the group element.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    pub fn underlying_perm(&self) -> Permutation {
        let mut images: Vec<usize> = (0..self.strands).collect();
        // at[pos] is the start position of the strand now at pos; the last
        // letter acts first.
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in self.letters.iter().rev() {
            let g = l.unsigned_abs() as usize;
            at.swap(g - 1, g);
        }
        for (pos, &strand) in at.iter().enumerate() {
            images[strand] = pos;
        }
        Permutation::new(images).expect("strand tracking yields a bijection")
    }

    /// Juxtaposition: `other` is placed to the right of `self`.
    pub fn ordinal_sum(&self, other: &BraidWord) -> Self {
        let shift = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().map(|&l| l + l.signum() * shift));
        Self { strands: self.strands + other.strands, letters }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{}", self.letters, self.strands)
    }
}

/// The product `a ∘ b` as a concatenated word.
pub fn braid_compose(a: &BraidWord, b: &BraidWord) -> Result<BraidWord> {
    if a.strands != b.strands {
        return Err(BraidError::StrandMismatch { left: a.strands, right: b.strands });
    }
    let mut letters = a.letters.clone();
    letters.extend_from_slice(&b.letters);
    Ok(BraidWord { strands: a.strands, letters })
}

pub fn underlying_perm(w: &BraidWord) -> Permutation {
    w.underlying_perm()
}

/// Positive word for the permutation moving a block of `a` strands at
/// `offset` past the following block of `b` strands.
fn block_crossing(total: usize, offset: usize, a: usize, b: usize) -> Vec<i32> {
    let mut images: Vec<usize> = (0..total).collect();
    for x in 0..a {
        images[offset + x] = offset + b + x;
    }
    for y in 0..b {
        images[offset + a + y] = offset + y;
    }
    reduced_word(&Permutation::new(images).expect("block swap is a bijection"))
}

/// Replaces strand `k` (counted at the start) by `profile[k]` parallel strands.
pub fn braid_cable(w: &BraidWord, profile: &BlockProfile) -> Result<BraidWord> {
    if profile.len() != w.strands {
        return Err(BraidError::BlockCount { expected: w.strands, found: profile.len() });
    }
    let total = profile.total();
    let mut sizes = profile.sizes().to_vec();
    let mut pieces = Vec::with_capacity(w.letters.len());
    for &l in w.letters.iter().rev() {
        let g = l.unsigned_abs() as usize;
        let offset: usize = sizes[..g - 1].iter().sum();
        let (a, b) = (sizes[g - 1], sizes[g]);
        let piece = if l > 0 {
            block_crossing(total, offset, a, b)
        } else {
            let fwd = block_crossing(total, offset, b, a);
            fwd.iter().rev().map(|l| -l).collect()
        };
        pieces.push(piece);
        sizes.swap(g - 1, g);
    }
    let letters = pieces.into_iter().rev().flatten().collect();
    Ok(BraidWord::new_unchecked(total, letters))
}

/// Substitutes braid `blocks[k]` into strand `k` of `w`.
pub fn braid_block_substitute(w: &BraidWord, blocks: &[BraidWord]) -> Result<BraidWord> {
    if blocks.len() != w.strands {
        return Err(BraidError::BlockCount { expected: w.strands, found: blocks.len() });
    }
    let profile = BlockProfile(blocks.iter().map(BraidWord::strands).collect());
    let cable = braid_cable(w, &profile)?;
    let inner = blocks.iter().fold(BraidWord::identity(0), |acc, b| acc.ordinal_sum(b));
    braid_compose(&cable, &inner)
}

/// Keeps only the strands whose end position lies in `keep` (0-indexed),
/// renumbering positions among the kept strands.
pub fn braid_restrict(w: &BraidWord, keep: &[usize]) -> Result<BraidWord> {
    let n = w.strands;
    let mut kept_end = vec![false; n];
    for &p in keep {
        if p >= n {
            return Err(BraidError::PositionOutOfRange { position: p, strands: n });
        }
        kept_end[p] = true;
    }
    let perm = w.underlying_perm();
    // occupied[pos]: whether the strand currently at pos is kept.
    let mut occupied: Vec<bool> = (0..n).map(|x| kept_end[perm.apply(x)]).collect();
    let mut out = Vec::new();
    for &l in w.letters.iter().rev() {
        let g = l.unsigned_abs() as usize;
        if occupied[g - 1] && occupied[g] {
            let rank = occupied[..g - 1].iter().filter(|&&k| k).count() as i32 + 1;
            out.push(rank * l.signum());
        }
        occupied.swap(g - 1, g);
    }
    out.reverse();
    let strands = kept_end.iter().filter(|&&k| k).count();
    Ok(BraidWord::new_unchecked(strands, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_one_swaps() {
        let w = BraidWord::new(2, vec![1]).unwrap();
        assert_eq!(w.underlying_perm().one_based(), vec![2, 1]);
    }

    #[test]
    fn cable_of_sigma_one() {
        let w = BraidWord::new(2, vec![1]).unwrap();
        let c = braid_cable(&w, &BlockProfile(vec![2, 1])).unwrap();
        assert_eq!(c.underlying_perm().images(), &[1, 2, 0]);
        assert_eq!(c.exponent_sum(), 2);
    }

    #[test]
    fn zero_letter_rejected() {
        assert_eq!(BraidWord::new(3, vec![0]), Err(BraidError::ZeroGenerator));
        assert!(BraidWord::new(3, vec![3]).is_err());
    }
}
