//! Operads given by explicit finite tables, read from JSON.
//!
//! ```json
//! {
//!   "name": "example",
//!   "flavour": "symmetric",
//!   "colours": ["*"],
//!   "bound": 2,
//!   "operations": [{"name": "e", "target": "*", "sources": ["*"]}, ...],
//!   "units": {"*": "e"},
//!   "composition": [{"outer": "m", "inner": ["e", "m"], "result": "t"}],
//!   "action": [{"op": "m", "perm": [2, 1], "result": "m'"}]
//! }
//! ```
//!
//! Composites with a unit on either side and actions by the identity are
//! implied and need not be listed. Permutations are 1-indexed.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    acted_sources, check_action, check_composable, check_operad_axioms, composite_sources, Action, Colour, Flavour,
    Operad, OperadError, Operation, Result,
};
use crate::finmaps::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperationSpec {
    pub name: String,
    pub target: String,
    pub sources: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionSpec {
    pub outer: String,
    pub inner: Vec<String>,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSpec {
    pub op: String,
    pub perm: Permutation,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TabulatedSpec {
    pub name: String,
    pub flavour: Flavour,
    pub colours: Vec<String>,
    pub bound: usize,
    pub operations: Vec<OperationSpec>,
    pub units: BTreeMap<String, String>,
    #[serde(default)]
    pub composition: Vec<CompositionSpec>,
    #[serde(default)]
    pub action: Vec<ActionSpec>,
}

#[derive(Debug, Clone)]
pub struct TabulatedOperad {
    name: String,
    flavour: Flavour,
    colours: Vec<String>,
    bound: usize,
    ops: Vec<Operation>,
    names: Vec<String>,
    by_profile: HashMap<(Colour, Vec<Colour>), Vec<usize>>,
    units: Vec<usize>,
    composition: HashMap<(usize, Vec<usize>), usize>,
    action: HashMap<(usize, Vec<usize>), usize>,
}

fn invalid(msg: impl Into<String>) -> OperadError {
    OperadError::Invalid(msg.into())
}

impl TabulatedOperad {
    /// Builds the operad without checking its axioms.
    pub fn from_spec_unchecked(spec: &TabulatedSpec) -> Result<Self> {
        if spec.flavour == Flavour::Braided {
            return Err(invalid("braided operads cannot be tabulated"));
        }
        let colour = |name: &str| -> Result<Colour> {
            spec.colours.iter().position(|c| c == name).ok_or_else(|| OperadError::UnknownColour(name.to_string()))
        };
        let mut ops = Vec::new();
        let mut names = Vec::new();
        let mut index = HashMap::new();
        let mut by_profile: HashMap<(Colour, Vec<Colour>), Vec<usize>> = HashMap::new();
        for o in &spec.operations {
            let target = colour(&o.target)?;
            let sources = o.sources.iter().map(|s| colour(s)).collect::<Result<Vec<_>>>()?;
            if sources.len() > spec.bound {
                return Err(OperadError::BeyondBound { arity: sources.len(), bound: spec.bound });
            }
            let id = ops.len();
            if index.insert(o.name.clone(), id).is_some() {
                return Err(invalid(format!("operation {:?} is listed twice", o.name)));
            }
            by_profile.entry((target, sources.clone())).or_default().push(id);
            ops.push(Operation { target, sources, token: vec![id as u32] });
            names.push(o.name.clone());
        }
        let lookup = |name: &str| -> Result<usize> {
            index.get(name).copied().ok_or_else(|| OperadError::UnknownOperation(name.to_string()))
        };
        let mut units = Vec::with_capacity(spec.colours.len());
        for (c, name) in spec.colours.iter().enumerate() {
            let u = spec.units.get(name).ok_or_else(|| invalid(format!("colour {name:?} has no unit")))?;
            let u = lookup(u)?;
            if ops[u].target != c || ops[u].sources != [c] {
                return Err(invalid(format!("unit of {name:?} has the wrong profile")));
            }
            units.push(u);
        }
        let mut composition = HashMap::new();
        for entry in &spec.composition {
            let outer = lookup(&entry.outer)?;
            let inner = entry.inner.iter().map(|n| lookup(n)).collect::<Result<Vec<_>>>()?;
            let result = lookup(&entry.result)?;
            let inner_ops: Vec<Operation> = inner.iter().map(|&i| ops[i].clone()).collect();
            check_composable(&ops[outer], &inner_ops)?;
            if ops[result].target != ops[outer].target || ops[result].sources != composite_sources(&inner_ops) {
                return Err(invalid(format!("composite {:?} has the wrong profile", entry.result)));
            }
            if composition.insert((outer, inner), result).is_some() {
                return Err(invalid(format!("composition of {:?} is listed twice", entry.outer)));
            }
        }
        let mut action = HashMap::new();
        for entry in &spec.action {
            let op = lookup(&entry.op)?;
            let result = lookup(&entry.result)?;
            let g = check_action(spec.flavour, &ops[op], &Action::Perm(entry.perm.clone()))?;
            if ops[result].target != ops[op].target || ops[result].sources != acted_sources(&ops[op], &g) {
                return Err(invalid(format!("action result {:?} has the wrong profile", entry.result)));
            }
            action.insert((op, g.images().to_vec()), result);
        }
        Ok(Self {
            name: spec.name.clone(),
            flavour: spec.flavour,
            colours: spec.colours.clone(),
            bound: spec.bound,
            ops,
            names,
            by_profile,
            units,
            composition,
            action,
        })
    }

    /// Builds the operad and checks its axioms up to the declared bound.
    pub fn from_spec(spec: &TabulatedSpec) -> Result<Self> {
        let op = Self::from_spec_unchecked(spec)?;
        let report = check_operad_axioms(&op, op.bound);
        if let Some(v) = report.violation {
            return Err(OperadError::AxiomFailure(v.to_string()));
        }
        Ok(op)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: TabulatedSpec = serde_json::from_str(text).map_err(|e| invalid(e.to_string()))?;
        Self::from_spec(&spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| OperadError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    fn id(&self, op: &Operation) -> usize {
        op.token[0] as usize
    }

    fn is_unit(&self, id: usize) -> bool {
        self.units.contains(&id)
    }
}

impl Operad for TabulatedOperad {
    fn name(&self) -> &str {
        &self.name
    }

    fn flavour(&self) -> Flavour {
        self.flavour
    }

    fn colours(&self) -> &[String] {
        &self.colours
    }

    fn bound(&self) -> Option<usize> {
        Some(self.bound)
    }

    fn ops_profile(&self, target: Colour, sources: &[Colour]) -> Result<Vec<Operation>> {
        if sources.len() > self.bound {
            return Err(OperadError::BeyondBound { arity: sources.len(), bound: self.bound });
        }
        Ok(self
            .by_profile
            .get(&(target, sources.to_vec()))
            .map(|ids| ids.iter().map(|&i| self.ops[i].clone()).collect())
            .unwrap_or_default())
    }

    fn unit(&self, colour: Colour) -> Operation {
        self.ops[self.units[colour]].clone()
    }

    fn compose(&self, outer: &Operation, inner: &[Operation]) -> Result<Operation> {
        check_composable(outer, inner)?;
        let o = self.id(outer);
        if self.is_unit(o) {
            return Ok(inner[0].clone());
        }
        let ids: Vec<usize> = inner.iter().map(|op| self.id(op)).collect();
        if ids.iter().all(|&i| self.is_unit(i)) {
            return Ok(outer.clone());
        }
        let arity: usize = inner.iter().map(Operation::arity).sum();
        if arity > self.bound {
            return Err(OperadError::BeyondBound { arity, bound: self.bound });
        }
        let names: Vec<&str> = ids.iter().map(|&i| self.names[i].as_str()).collect();
        self.composition
            .get(&(o, ids))
            .map(|&r| self.ops[r].clone())
            .ok_or_else(|| OperadError::NotTabulated(format!("{}({})", self.names[o], names.join(","))))
    }

    fn act(&self, op: &Operation, g: &Action) -> Result<Operation> {
        let g = check_action(self.flavour, op, g)?;
        if g.is_identity() {
            return Ok(op.clone());
        }
        let id = self.id(op);
        self.action
            .get(&(id, g.images().to_vec()))
            .map(|&r| self.ops[r].clone())
            .ok_or_else(|| OperadError::NotTabulated(format!("{}·{}", self.names[id], g)))
    }

    fn op_label(&self, op: &Operation) -> String {
        self.names[self.id(op)].clone()
    }
}

/// Tabulates an operad up to `bound`, producing a spec that reloads into an
/// equivalent [`TabulatedOperad`].
pub fn tabulate(op: &dyn Operad, bound: usize) -> Result<TabulatedSpec> {
    if op.flavour() == Flavour::Braided {
        return Err(invalid("braided operads cannot be tabulated"));
    }
    let colours = op.colours().to_vec();
    let mut all = Vec::new();
    for target in 0..colours.len() {
        for arity in 0..=bound {
            all.extend(op.ops(target, arity)?);
        }
    }
    let mut names: HashMap<Operation, String> = HashMap::new();
    let mut used: HashMap<String, usize> = HashMap::new();
    let mut operations = Vec::new();
    for o in &all {
        let base =
            if colours.len() == 1 { op.op_label(o) } else { format!("{}:{}", colours[o.target], op.op_label(o)) };
        let count = used.entry(base.clone()).or_insert(0);
        let name = if *count == 0 { base.clone() } else { format!("{base}#{count}") };
        *count += 1;
        names.insert(o.clone(), name.clone());
        operations.push(OperationSpec {
            name,
            target: colours[o.target].clone(),
            sources: o.sources.iter().map(|&c| colours[c].clone()).collect(),
        });
    }
    let units: BTreeMap<String, String> =
        (0..colours.len()).map(|c| (colours[c].clone(), names[&op.unit(c)].clone())).collect();
    let unit_ops: Vec<Operation> = (0..colours.len()).map(|c| op.unit(c)).collect();
    let mut composition = Vec::new();
    for outer in &all {
        if unit_ops.contains(outer) {
            continue;
        }
        let choices: Vec<Vec<&Operation>> =
            outer.sources.iter().map(|&c| all.iter().filter(|o| o.target == c).collect()).collect();
        for inner in itertools::Itertools::multi_cartesian_product(choices.into_iter().map(|v| v.into_iter())) {
            if inner.iter().all(|o| unit_ops.contains(o)) {
                continue;
            }
            if inner.iter().map(|o| o.arity()).sum::<usize>() > bound {
                continue;
            }
            let inner: Vec<Operation> = inner.into_iter().cloned().collect();
            let result = op.compose(outer, &inner)?;
            composition.push(CompositionSpec {
                outer: names[outer].clone(),
                inner: inner.iter().map(|o| names[o].clone()).collect(),
                result: names[&result].clone(),
            });
        }
    }
    let mut action = Vec::new();
    if op.flavour() == Flavour::Symmetric {
        for o in &all {
            for g in Permutation::all(o.arity()).filter(|g| !g.is_identity()) {
                let result = op.act(o, &Action::Perm(g.clone()))?;
                action.push(ActionSpec { op: names[o].clone(), perm: g, result: names[&result].clone() });
            }
        }
    }
    Ok(TabulatedSpec {
        name: format!("{}-upto-{}", op.name(), bound),
        flavour: op.flavour(),
        colours,
        bound,
        operations,
        units,
        composition,
        action,
    })
}
