//! Coloured operads exposed as finite enumeration oracles.
//!
//! An [`Operation`] records its target colour, its source colours and an
//! opaque token. Acting on `α` by `ρ` reorders the inputs so that input `k`
//! of `α·ρ` is input `ρ(k)` of `α`.

mod axioms;
mod builtin;
mod corolla;
mod morphism;
mod tabulated;

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braids::{BraidError, BraidWord};
use crate::finmaps::{FinMapError, Permutation};

pub use axioms::{braid_words, check_morphism, check_operad_axioms, AxiomReport, Law, Violation};
pub use builtin::{Ass, AssNS, BCom, Com};
pub use corolla::{fc_apply, fl_apply, LabelledCorolla};
pub use morphism::{morphism_from_spec, OperadMorphism};
pub use tabulated::{tabulate, ActionSpec, CompositionSpec, OperationSpec, TabulatedOperad, TabulatedSpec};

pub type Colour = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperadError {
    #[error("unknown operad {0:?}")]
    UnknownOperad(String),
    #[error("unknown morphism {0:?}")]
    UnknownMorphism(String),
    #[error("colour {0} does not exist")]
    UnknownColour(String),
    #[error("operation {0:?} does not exist")]
    UnknownOperation(String),
    #[error("inner operation {index} has target {found}, expected {expected}")]
    ProfileMismatch { index: usize, expected: Colour, found: Colour },
    #[error("expected {expected} inner operations, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("{flavour} operads cannot be acted on by {action}")]
    WrongAction { flavour: Flavour, action: &'static str },
    #[error("composition {0} is missing from the table")]
    NotTabulated(String),
    #[error("arity {arity} exceeds the declared bound {bound}")]
    BeyondBound { arity: usize, bound: usize },
    #[error("tabulated operad fails its axioms: {0}")]
    AxiomFailure(String),
    #[error("operads of flavours {0} and {1} are incompatible")]
    FlavourMismatch(Flavour, Flavour),
    #[error("invalid tabulated operad: {0}")]
    Invalid(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    FinMap(#[from] FinMapError),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

pub type Result<T> = std::result::Result<T, OperadError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavour {
    Symmetric,
    Nonsymmetric,
    Braided,
}

impl fmt::Display for Flavour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Flavour::Symmetric => "symmetric",
            Flavour::Nonsymmetric => "nonsymmetric",
            Flavour::Braided => "braided",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Operation {
    pub target: Colour,
    pub sources: Vec<Colour>,
    pub token: Vec<u32>,
}

impl Operation {
    pub fn arity(&self) -> usize {
        self.sources.len()
    }
}

/// Group element acting on operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    Perm(Permutation),
    Braid(BraidWord),
}

impl Action {
    pub fn arity(&self) -> usize {
        match self {
            Action::Perm(p) => p.arity(),
            Action::Braid(w) => w.strands(),
        }
    }

    pub fn underlying_perm(&self) -> Permutation {
        match self {
            Action::Perm(p) => p.clone(),
            Action::Braid(w) => w.underlying_perm(),
        }
    }

    pub fn identity(flavour: Flavour, n: usize) -> Action {
        match flavour {
            Flavour::Braided => Action::Braid(BraidWord::identity(n)),
            _ => Action::Perm(Permutation::identity(n)),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Action::Perm(_) => "permutations",
            Action::Braid(_) => "braids",
        }
    }
}

/// A coloured operad queried through per-profile enumeration.
pub trait Operad: Send + Sync {
    fn name(&self) -> &str;

    fn flavour(&self) -> Flavour;

    fn colours(&self) -> &[String];

    /// Operations `(sources) -> target`, in a fixed order.
    fn ops_profile(&self, target: Colour, sources: &[Colour]) -> Result<Vec<Operation>>;

    fn unit(&self, colour: Colour) -> Operation;

    /// `outer ∘ (inner_k)_k`.
    fn compose(&self, outer: &Operation, inner: &[Operation]) -> Result<Operation>;

    fn act(&self, op: &Operation, g: &Action) -> Result<Operation>;

    fn op_label(&self, op: &Operation) -> String;

    /// Largest arity the oracle answers for, if bounded.
    fn bound(&self) -> Option<usize> {
        None
    }

    /// All operations with the given target and arity.
    fn ops(&self, target: Colour, arity: usize) -> Result<Vec<Operation>> {
        let c = self.colours().len();
        let mut out = Vec::new();
        let mut sources = vec![0; arity];
        if c == 0 {
            return Ok(out);
        }
        loop {
            out.extend(self.ops_profile(target, &sources)?);
            let mut pos = arity;
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                sources[pos] += 1;
                if sources[pos] < c {
                    break;
                }
                sources[pos] = 0;
            }
        }
    }

    /// Finds the operation with the given profile and label.
    fn parse_op(&self, target: Colour, sources: &[Colour], label: &str) -> Result<Operation> {
        self.ops_profile(target, sources)?
            .into_iter()
            .find(|op| self.op_label(op) == label)
            .ok_or_else(|| OperadError::UnknownOperation(label.to_string()))
    }

    fn colour_index(&self, name: &str) -> Result<Colour> {
        self.colours().iter().position(|c| c == name).ok_or_else(|| OperadError::UnknownColour(name.to_string()))
    }
}

/// Checks that `inner` can be substituted into `outer`.
pub(crate) fn check_composable(outer: &Operation, inner: &[Operation]) -> Result<()> {
    if inner.len() != outer.arity() {
        return Err(OperadError::ArityMismatch { expected: outer.arity(), found: inner.len() });
    }
    for (index, (op, &expected)) in inner.iter().zip(&outer.sources).enumerate() {
        if op.target != expected {
            return Err(OperadError::ProfileMismatch { index, expected, found: op.target });
        }
    }
    Ok(())
}

pub(crate) fn composite_sources(inner: &[Operation]) -> Vec<Colour> {
    inner.iter().flat_map(|op| op.sources.iter().copied()).collect()
}

/// Sources of `op·g`.
pub(crate) fn acted_sources(op: &Operation, g: &Permutation) -> Vec<Colour> {
    (0..g.arity()).map(|k| op.sources[g.apply(k)]).collect()
}

/// Validates that `g` may act on `op` in an operad of `flavour`, returning
/// the underlying permutation.
pub(crate) fn check_action(flavour: Flavour, op: &Operation, g: &Action) -> Result<Permutation> {
    match (flavour, g) {
        (Flavour::Braided, Action::Perm(_)) | (Flavour::Symmetric, Action::Braid(_)) => {
            return Err(OperadError::WrongAction { flavour, action: g.kind() })
        }
        _ => {}
    }
    if g.arity() != op.arity() {
        return Err(OperadError::ArityMismatch { expected: op.arity(), found: g.arity() });
    }
    let perm = g.underlying_perm();
    if flavour == Flavour::Nonsymmetric && !perm.is_identity() {
        return Err(OperadError::WrongAction { flavour, action: g.kind() });
    }
    Ok(perm)
}

/// Every tuple picking one element from each pool; one empty tuple when
/// there are no pools.
pub fn cartesian<T: Clone>(pools: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::with_capacity(pools.len())];
    for pool in pools {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                pool.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect();
    }
    out
}

/// A builtin operad by name, or a tabulated operad loaded from a JSON file.
pub fn builtin_operad(name: &str) -> Result<Arc<dyn Operad>> {
    match name {
        "Com" => Ok(Arc::new(Com)),
        "Ass" => Ok(Arc::new(Ass)),
        "AssNS" => Ok(Arc::new(AssNS)),
        "BCom" => Ok(Arc::new(BCom)),
        other => {
            let path = Path::new(other);
            if path.extension().is_some_and(|e| e == "json") {
                Ok(Arc::new(TabulatedOperad::load(path)?))
            } else {
                Err(OperadError::UnknownOperad(other.to_string()))
            }
        }
    }
}
