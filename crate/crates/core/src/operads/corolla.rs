use serde::{Deserialize, Serialize};

use super::{Colour, OperadError, OperadMorphism, Operation, Result};

/// An operation with a label attached to each input.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabelledCorolla<L> {
    pub op: Operation,
    pub labels: Vec<L>,
}

impl<L> LabelledCorolla<L> {
    /// Checks that there is one label per input and that label `k` lies
    /// over source colour `k` according to `colour_of`.
    pub fn new(op: Operation, labels: Vec<L>, colour_of: impl Fn(&L) -> Colour) -> Result<Self> {
        if labels.len() != op.arity() {
            return Err(OperadError::ArityMismatch { expected: op.arity(), found: labels.len() });
        }
        check_colours(&op.sources, &labels, colour_of)?;
        Ok(Self { op, labels })
    }

    /// Applies `g` to every label.
    pub fn relabel<M>(&self, g: impl Fn(&L) -> M) -> LabelledCorolla<M> {
        LabelledCorolla { op: self.op.clone(), labels: self.labels.iter().map(g).collect() }
    }
}

fn check_colours<L>(expected: &[Colour], labels: &[L], colour_of: impl Fn(&L) -> Colour) -> Result<()> {
    if labels.len() != expected.len() {
        return Err(OperadError::ArityMismatch { expected: expected.len(), found: labels.len() });
    }
    for (index, (l, &c)) in labels.iter().zip(expected).enumerate() {
        let found = colour_of(l);
        if found != c {
            return Err(OperadError::ProfileMismatch { index, expected: c, found });
        }
    }
    Ok(())
}

/// `(α, (x_k)_k) ↦ (Fα, (i_k, x_k)_k)`: each label is paired with the source
/// colour it lies over. `colour_of` gives the source colour of a label.
pub fn fc_apply<L: Clone>(
    f: &OperadMorphism,
    corolla: &LabelledCorolla<L>,
    colour_of: impl Fn(&L) -> Colour,
) -> Result<LabelledCorolla<(Colour, L)>> {
    check_colours(&corolla.op.sources, &corolla.labels, colour_of)?;
    let op = f.apply(&corolla.op)?;
    let labels = corolla.op.sources.iter().copied().zip(corolla.labels.iter().cloned()).collect();
    Ok(LabelledCorolla { op, labels })
}

/// `(α, (y_k)_k) ↦ (Fα, (y_k)_k)` for labels indexed by target colours.
/// `colour_of` gives the target colour of a label, which must be `f(i_k)`.
pub fn fl_apply<L: Clone>(
    f: &OperadMorphism,
    corolla: &LabelledCorolla<L>,
    colour_of: impl Fn(&L) -> Colour,
) -> Result<LabelledCorolla<L>> {
    let pulled: Vec<Colour> = corolla.op.sources.iter().map(|&c| f.map_colour(c)).collect();
    check_colours(&pulled, &corolla.labels, colour_of)?;
    Ok(LabelledCorolla { op: f.apply(&corolla.op)?, labels: corolla.labels.clone() })
}
