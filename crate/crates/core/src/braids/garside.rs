//! Left-greedy Garside normal form.
//!
//! A braid is written `Δ^p · A_1 ⋯ A_r` with each `A_i` a positive
//! permutation braid, none equal to `Δ`, the last not the identity, and
//! every adjacent pair left-weighted. Simple factors are stored as their
//! permutations.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::BraidWord;
use crate::finmaps::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BraidNF {
    strands: usize,
    delta_power: i64,
    factors: Vec<Permutation>,
}

impl BraidNF {
    pub fn identity(strands: usize) -> Self {
        Self { strands, delta_power: 0, factors: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn delta_power(&self) -> i64 {
        self.delta_power
    }

    pub fn factors(&self) -> &[Permutation] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.delta_power == 0 && self.factors.is_empty()
    }

    /// A canonical word for the element.
    pub fn to_word(&self) -> BraidWord {
        let n = self.strands;
        let delta = reduced_word(&Permutation::longest(n));
        let mut letters = Vec::new();
        if self.delta_power >= 0 {
            for _ in 0..self.delta_power {
                letters.extend_from_slice(&delta);
            }
        } else {
            let inv: Vec<i32> = delta.iter().rev().map(|l| -l).collect();
            for _ in 0..(-self.delta_power) {
                letters.extend_from_slice(&inv);
            }
        }
        for a in &self.factors {
            letters.extend(reduced_word(a));
        }
        BraidWord::new_unchecked(n, letters)
    }
}

impl fmt::Display for BraidNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ^{}", self.delta_power)?;
        for a in &self.factors {
            write!(f, " {a}")?;
        }
        Ok(())
    }
}

/// A reduced positive word whose underlying permutation is `a`.
pub fn reduced_word(a: &Permutation) -> Vec<i32> {
    let mut cur = a.images().to_vec();
    let mut rev = Vec::new();
    while let Some(i) = (0..cur.len().saturating_sub(1)).find(|&i| cur[i] > cur[i + 1]) {
        cur.swap(i, i + 1);
        rev.push(i as i32 + 1);
    }
    rev.reverse();
    rev
}

/// Right descents: generators a simple braid can end with.
fn finishing(a: &[usize], i: usize) -> bool {
    a[i] > a[i + 1]
}

fn conjugate_by_delta(a: &Permutation) -> Permutation {
    let n = a.arity();
    let images = (0..n).map(|i| n - 1 - a.apply(n - 1 - i)).collect();
    Permutation::new(images).expect("conjugate of a permutation")
}

/// Moves generators from `b` to `a` until the pair is left-weighted.
/// Returns whether anything changed.
fn left_weight(a: &mut [usize], b: &mut [usize]) -> bool {
    let n = a.len();
    let mut changed = false;
    loop {
        let mut binv = vec![0; n];
        for (x, &y) in b.iter().enumerate() {
            binv[y] = x;
        }
        let candidate = (0..n.saturating_sub(1)).find(|&i| binv[i] > binv[i + 1] && !finishing(a, i));
        match candidate {
            Some(i) => {
                // a <- a s_i, b <- s_i b
                a.swap(i, i + 1);
                for y in b.iter_mut() {
                    if *y == i {
                        *y = i + 1;
                    } else if *y == i + 1 {
                        *y = i;
                    }
                }
                changed = true;
            }
            None => return changed,
        }
    }
}

pub fn braid_nf(w: &BraidWord) -> BraidNF {
    let n = w.strands();
    let w0 = Permutation::longest(n);
    let mut p: i64 = 0;
    let mut factors: Vec<Permutation> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        let i = l.unsigned_abs() as usize - 1;
        let s = Permutation::transposition(n, i);
        if l > 0 {
            factors.push(s);
        } else {
            // σ_i^{-1} = (s_i w0) Δ^{-1}; pull Δ^{-1} to the front.
            factors.push(s.compose(&w0).expect("same arity"));
            for f in factors.iter_mut() {
                *f = conjugate_by_delta(f);
            }
            p -= 1;
        }
    }
    let mut raw: Vec<Vec<usize>> = factors.into_iter().map(|f| f.images().to_vec()).collect();
    loop {
        let mut changed = false;
        for k in 0..raw.len().saturating_sub(1) {
            let (left, right) = raw.split_at_mut(k + 1);
            changed |= left_weight(&mut left[k], &mut right[0]);
        }
        if !changed {
            break;
        }
    }
    let delta: Vec<usize> = w0.images().to_vec();
    let mut out = Vec::with_capacity(raw.len());
    for a in raw {
        if a == delta && out.is_empty() {
            p += 1;
        } else if a.iter().enumerate().any(|(i, &j)| i != j) {
            out.push(Permutation::new(a).expect("simple factor"));
        }
    }
    BraidNF { strands: n, delta_power: p, factors: out }
}

pub fn braid_eq(a: &BraidWord, b: &BraidWord) -> bool {
    a.strands() == b.strands() && braid_nf(a) == braid_nf(b)
}
