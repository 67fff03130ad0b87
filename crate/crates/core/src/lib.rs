//! Operad classifiers computed from finite data.
//!
//! The crate builds, from a morphism of coloured operads `F: S -> T`, the
//! category of `S`-algebra shapes inside `T` (the PROP generated by an
//! operad when `T` is terminal), and independently recovers the same
//! category as the codescent object of a finite crossed double category.
//! Supporting layers cover permutations and monotone maps, braid groups and
//! vines, and finite categories with congruence quotients.

pub mod braids;
pub mod classifier;
pub mod codescent;
pub mod finmaps;
pub mod operads;
pub mod par;
pub mod verify;

pub use finmaps::{BlockProfile, FinFunction, FinMap, MonotoneMap, Permutation};
