//! Permutations, monotone maps and finite functions.
//!
//! Everything here is 0-indexed internally. The serde encodings are
//! 1-indexed: a permutation is an array of images, a monotone map is
//! `{"fibres": [...], "target": n}` and a function is
//! `{"images": [...], "target": n}`.
//!
//! Composition is written `outer.compose(&inner)` and means
//! `outer ∘ inner`, i.e. `inner` is applied first.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinMapError {
    #[error("images {0:?} do not form a bijection")]
    NotABijection(Vec<usize>),
    #[error("image {image} is out of range for target {target}")]
    OutOfRange { image: usize, target: usize },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("cannot combine a {0} with a {1}")]
    KindMismatch(&'static str, &'static str),
    #[error("1-indexed input contains 0")]
    ZeroIndex,
}

pub type Result<T> = std::result::Result<T, FinMapError>;

fn check_arity(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(FinMapError::ArityMismatch { expected, found })
    }
}

fn from_one_based(images: &[usize]) -> Result<Vec<usize>> {
    images.iter().map(|&i| i.checked_sub(1).ok_or(FinMapError::ZeroIndex)).collect()
}

/// An element of the symmetric group on `0..n`, stored by its images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(FinMapError::NotABijection(images));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        Self::new(from_one_based(images)?)
    }

    /// Builds a permutation from 1-indexed cycles, e.g. `[[1, 2, 4]]`
    /// sends 1 to 2, 2 to 4 and 4 to 1.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            let cycle = from_one_based(cycle)?;
            for (idx, &a) in cycle.iter().enumerate() {
                let b = cycle[(idx + 1) % cycle.len()];
                if a >= n || b >= n {
                    return Err(FinMapError::OutOfRange { image: a.max(b) + 1, target: n });
                }
                if touched[a] {
                    return Err(FinMapError::NotABijection(cycle.clone()));
                }
                touched[a] = true;
                images[a] = b;
            }
        }
        Self::new(images)
    }

    /// The adjacent transposition exchanging `i` and `i + 1`.
    pub fn transposition(n: usize, i: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, i + 1);
        Self { images }
    }

    /// The order-reversing permutation.
    pub fn longest(n: usize) -> Self {
        Self { images: (0..n).rev().collect() }
    }

    pub fn arity(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.arity()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Self { images: inv }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Permutation) -> Result<Self> {
        check_arity(self.arity(), inner.arity())?;
        Ok(Self { images: inner.images.iter().map(|&i| self.images[i]).collect() })
    }

    pub fn ordinal_sum(&self, other: &Permutation) -> Self {
        let n = self.arity();
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|i| i + n));
        Self { images }
    }

    pub fn inversions(&self) -> usize {
        let n = self.arity();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| self.images[i] > self.images[j]).count()
    }

    pub fn to_function(&self) -> FinFunction {
        FinFunction { images: self.images.clone(), target: self.arity() }
    }

    /// All permutations of `0..n` in lexicographic order of images.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        use itertools::Itertools;
        (0..n).permutations(n).map(|images| Permutation { images })
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = FinMapError;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Self::from_one_based(&images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.one_based()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "]")
    }
}

/// A weakly order-preserving map `m -> n`, stored by the sizes of its fibres.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MonotoneRepr", into = "MonotoneRepr")]
pub struct MonotoneMap {
    fibres: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct MonotoneRepr {
    fibres: Vec<usize>,
    target: usize,
}

impl TryFrom<MonotoneRepr> for MonotoneMap {
    type Error = FinMapError;
    fn try_from(r: MonotoneRepr) -> Result<Self> {
        check_arity(r.target, r.fibres.len())?;
        Ok(Self { fibres: r.fibres })
    }
}

impl From<MonotoneMap> for MonotoneRepr {
    fn from(m: MonotoneMap) -> Self {
        let target = m.target();
        MonotoneRepr { fibres: m.fibres, target }
    }
}

impl MonotoneMap {
    pub fn new(fibres: Vec<usize>) -> Self {
        Self { fibres }
    }

    pub fn identity(n: usize) -> Self {
        Self { fibres: vec![1; n] }
    }

    /// The unique map `m -> 1`.
    pub fn terminal(m: usize) -> Self {
        Self { fibres: vec![m] }
    }

    pub fn fibres(&self) -> &[usize] {
        &self.fibres
    }

    pub fn source(&self) -> usize {
        self.fibres.iter().sum()
    }

    pub fn target(&self) -> usize {
        self.fibres.len()
    }

    pub fn is_identity(&self) -> bool {
        self.fibres.iter().all(|&s| s == 1)
    }

    /// Source positions lying over `k`.
    pub fn fibre_range(&self, k: usize) -> Range<usize> {
        let start: usize = self.fibres[..k].iter().sum();
        start..start + self.fibres[k]
    }

    pub fn images(&self) -> Vec<usize> {
        self.fibres.iter().enumerate().flat_map(|(k, &s)| std::iter::repeat_n(k, s)).collect()
    }

    pub fn apply(&self, i: usize) -> usize {
        let mut acc = 0;
        for (k, &s) in self.fibres.iter().enumerate() {
            acc += s;
            if i < acc {
                return k;
            }
        }
        panic!("{i} is outside the source of {self:?}");
    }

    pub fn to_function(&self) -> FinFunction {
        FinFunction { images: self.images(), target: self.target() }
    }

    pub fn from_function(h: &FinFunction) -> Option<Self> {
        if !h.is_monotone() {
            return None;
        }
        Some(Self { fibres: h.fibre_sizes() })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &MonotoneMap) -> Result<Self> {
        check_arity(self.source(), inner.target())?;
        let mut fibres = Vec::with_capacity(self.target());
        let mut k = 0;
        for &s in &self.fibres {
            fibres.push(inner.fibres[k..k + s].iter().sum());
            k += s;
        }
        Ok(Self { fibres })
    }

    pub fn ordinal_sum(&self, other: &MonotoneMap) -> Self {
        let mut fibres = self.fibres.clone();
        fibres.extend_from_slice(&other.fibres);
        Self { fibres }
    }

    /// All monotone maps `m -> n`, ordered lexicographically by fibre sizes.
    pub fn all(m: usize, n: usize) -> Vec<MonotoneMap> {
        fn go(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
            if slots == 0 {
                if rest == 0 {
                    out.push(MonotoneMap { fibres: cur.clone() });
                }
                return;
            }
            let range: Box<dyn Iterator<Item = usize>> =
                if slots == 1 { Box::new(rest..=rest) } else { Box::new(0..=rest) };
            for s in range {
                cur.push(s);
                go(rest - s, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(m, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mono{:?}", self.fibres)
    }
}

/// An arbitrary function `m -> n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "FunctionRepr", into = "FunctionRepr")]
pub struct FinFunction {
    images: Vec<usize>,
    target: usize,
}

#[derive(Serialize, Deserialize)]
struct FunctionRepr {
    images: Vec<usize>,
    target: usize,
}

impl TryFrom<FunctionRepr> for FinFunction {
    type Error = FinMapError;
    fn try_from(r: FunctionRepr) -> Result<Self> {
        FinFunction::new(from_one_based(&r.images)?, r.target)
    }
}

impl From<FinFunction> for FunctionRepr {
    fn from(h: FinFunction) -> Self {
        FunctionRepr { images: h.one_based(), target: h.target }
    }
}

impl FinFunction {
    pub fn new(images: Vec<usize>, target: usize) -> Result<Self> {
        if let Some(&image) = images.iter().find(|&&i| i >= target) {
            return Err(FinMapError::OutOfRange { image: image + 1, target });
        }
        Ok(Self { images, target })
    }

    pub fn from_one_based(images: &[usize], target: usize) -> Result<Self> {
        Self::new(from_one_based(images)?, target)
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect(), target: n }
    }

    /// The unique map `m -> 1`.
    pub fn terminal(m: usize) -> Self {
        Self { images: vec![0; m], target: 1 }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub fn source(&self) -> usize {
        self.images.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// Elements of the fibre over `k`, ascending.
    pub fn fibre(&self, k: usize) -> Vec<usize> {
        (0..self.source()).filter(|&i| self.images[i] == k).collect()
    }

    pub fn fibre_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.target];
        for &i in &self.images {
            sizes[i] += 1;
        }
        sizes
    }

    pub fn is_monotone(&self) -> bool {
        self.images.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_bijective(&self) -> bool {
        self.source() == self.target && self.fibre_sizes().iter().all(|&s| s == 1)
    }

    pub fn to_permutation(&self) -> Option<Permutation> {
        if self.is_bijective() {
            Some(Permutation { images: self.images.clone() })
        } else {
            None
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FinFunction) -> Result<Self> {
        check_arity(self.source(), inner.target)?;
        Ok(Self { images: inner.images.iter().map(|&i| self.images[i]).collect(), target: self.target })
    }

    pub fn ordinal_sum(&self, other: &FinFunction) -> Self {
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|i| i + self.target));
        Self { images, target: self.target + other.target }
    }

    /// All functions `m -> n`, lexicographic in the images.
    pub fn all(m: usize, n: usize) -> Vec<FinFunction> {
        if n == 0 {
            return if m == 0 { vec![FinFunction::identity(0)] } else { Vec::new() };
        }
        let mut out = Vec::new();
        let mut images = vec![0; m];
        loop {
            out.push(FinFunction { images: images.clone(), target: n });
            let mut pos = m;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                images[pos] += 1;
                if images[pos] < n {
                    break;
                }
                images[pos] = 0;
            }
        }
    }
}

impl fmt::Display for FinFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fn{:?}->{}", self.one_based(), self.target)
    }
}

/// Block sizes `(m_1, ..., m_n)` used by block substitution and cabling.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BlockProfile(pub Vec<usize>);

impl BlockProfile {
    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Start position of each block.
    pub fn offsets(&self) -> Vec<usize> {
        offsets(&self.0)
    }
}

pub(crate) fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .iter()
        .map(|&s| {
            let o = acc;
            acc += s;
            o
        })
        .collect()
}

/// A permutation, monotone map or general function, with composition that
/// keeps the narrowest kind available.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FinMap {
    Permutation(Permutation),
    Monotone(MonotoneMap),
    Function(FinFunction),
}

impl FinMap {
    fn kind(&self) -> &'static str {
        match self {
            FinMap::Permutation(_) => "permutation",
            FinMap::Monotone(_) => "monotone map",
            FinMap::Function(_) => "function",
        }
    }

    pub fn to_function(&self) -> FinFunction {
        match self {
            FinMap::Permutation(p) => p.to_function(),
            FinMap::Monotone(m) => m.to_function(),
            FinMap::Function(h) => h.clone(),
        }
    }

    /// `self ∘ inner`, narrowed to a permutation or monotone map when both
    /// sides are of that kind.
    pub fn compose(&self, inner: &FinMap) -> Result<FinMap> {
        match (self, inner) {
            (FinMap::Permutation(a), FinMap::Permutation(b)) => a.compose(b).map(FinMap::Permutation),
            (FinMap::Monotone(a), FinMap::Monotone(b)) => a.compose(b).map(FinMap::Monotone),
            _ => self.to_function().compose(&inner.to_function()).map(FinMap::Function),
        }
    }

    pub fn ordinal_sum(&self, other: &FinMap) -> Result<FinMap> {
        match (self, other) {
            (FinMap::Permutation(a), FinMap::Permutation(b)) => Ok(FinMap::Permutation(a.ordinal_sum(b))),
            (FinMap::Monotone(a), FinMap::Monotone(b)) => Ok(FinMap::Monotone(a.ordinal_sum(b))),
            (FinMap::Function(a), FinMap::Function(b)) => Ok(FinMap::Function(a.ordinal_sum(b))),
            (a, b) => Err(FinMapError::KindMismatch(a.kind(), b.kind())),
        }
    }
}

/// Writes `h = g ∘ ρ` with `g` monotone and `ρ` order-preserving on each
/// fibre of `g`.
pub fn bij_mon_factorize(h: &FinFunction) -> (MonotoneMap, Permutation) {
    let sizes = h.fibre_sizes();
    let mut next = offsets(&sizes);
    let images = h
        .images
        .iter()
        .map(|&k| {
            let p = next[k];
            next[k] += 1;
            p
        })
        .collect();
    (MonotoneMap { fibres: sizes }, Permutation { images })
}

/// Substitutes `blocks[k]` into the `k`-th input of `rho`.
///
/// Source block `k` has size `blocks[k].arity()`; it is sent to target
/// block `rho(k)`, permuted internally by `blocks[k]`, so source position
/// `(k, l)` goes to `(rho(k), blocks[k](l))`.
pub fn block_substitute(rho: &Permutation, blocks: &[Permutation]) -> Result<Permutation> {
    check_arity(rho.arity(), blocks.len())?;
    let source_sizes: Vec<usize> = blocks.iter().map(Permutation::arity).collect();
    let mut target_sizes = vec![0; rho.arity()];
    for (k, &s) in source_sizes.iter().enumerate() {
        target_sizes[rho.apply(k)] = s;
    }
    let target_offsets = offsets(&target_sizes);
    let mut images = Vec::with_capacity(source_sizes.iter().sum());
    for (k, block) in blocks.iter().enumerate() {
        let base = target_offsets[rho.apply(k)];
        images.extend(block.images.iter().map(|&l| base + l));
    }
    Ok(Permutation { images })
}

/// Inverse of [`block_substitute`] for a given profile of target block
/// sizes: finds `(rho, blocks)` with `psi = rho(blocks)`.
///
/// Returns `None` when some target block has a preimage that is not an
/// interval. Empty blocks are placed first in the source, in target order.
pub fn block_decompose(psi: &Permutation, profile: &BlockProfile) -> Result<Option<(Permutation, Vec<Permutation>)>> {
    check_arity(psi.arity(), profile.total())?;
    let inv = psi.inverse();
    let target_offsets = profile.offsets();
    let mut empty = Vec::new();
    let mut placed = Vec::new();
    for (j, &size) in profile.sizes().iter().enumerate() {
        if size == 0 {
            empty.push(j);
            continue;
        }
        let mut pre: Vec<usize> = (target_offsets[j]..target_offsets[j] + size).map(|t| inv.apply(t)).collect();
        pre.sort_unstable();
        if pre[size - 1] - pre[0] + 1 != size {
            return Ok(None);
        }
        placed.push((pre[0], j));
    }
    placed.sort_unstable();
    let order: Vec<usize> = empty.into_iter().chain(placed.iter().map(|&(_, j)| j)).collect();
    let mut blocks = Vec::with_capacity(order.len());
    let mut start = 0;
    for &j in &order {
        let size = profile.sizes()[j];
        let images = (start..start + size).map(|x| psi.apply(x) - target_offsets[j]).collect();
        blocks.push(Permutation { images });
        start += size;
    }
    Ok(Some((Permutation { images: order }, blocks)))
}
