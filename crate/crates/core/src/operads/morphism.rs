use std::fmt;
use std::sync::Arc;

use super::{builtin_operad, Action, AssNS, BCom, Colour, Com, Flavour, Operad, OperadError, Operation, Result};

type OpMap = dyn Fn(&dyn Operad, &Operation) -> Result<Operation> + Send + Sync;

/// A morphism of operads: a colour map and an operation map.
///
/// Source and target share a flavour, except that a braided operad may map
/// to a symmetric one, in which case braids act through their underlying
/// permutations.
#[derive(Clone)]
pub struct OperadMorphism {
    name: String,
    source: Arc<dyn Operad>,
    target: Arc<dyn Operad>,
    colour_map: Vec<Colour>,
    op_map: Arc<OpMap>,
}

impl fmt::Debug for OperadMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OperadMorphism")
            .field("name", &self.name)
            .field("source", &self.source.name())
            .field("target", &self.target.name())
            .field("colour_map", &self.colour_map)
            .finish()
    }
}

impl OperadMorphism {
    pub fn new(
        name: impl Into<String>,
        source: Arc<dyn Operad>,
        target: Arc<dyn Operad>,
        colour_map: Vec<Colour>,
        op_map: impl Fn(&dyn Operad, &Operation) -> Result<Operation> + Send + Sync + 'static,
    ) -> Result<Self> {
        let compatible = source.flavour() == target.flavour()
            || (source.flavour() == Flavour::Braided && target.flavour() == Flavour::Symmetric);
        if !compatible {
            return Err(OperadError::FlavourMismatch(source.flavour(), target.flavour()));
        }
        if colour_map.len() != source.colours().len() {
            return Err(OperadError::Invalid("colour map has the wrong length".into()));
        }
        if let Some(&c) = colour_map.iter().find(|&&c| c >= target.colours().len()) {
            return Err(OperadError::UnknownColour(c.to_string()));
        }
        Ok(Self { name: name.into(), source, target, colour_map, op_map: Arc::new(op_map) })
    }

    pub fn identity(op: Arc<dyn Operad>) -> Self {
        let n = op.colours().len();
        Self {
            name: format!("id:{}", op.name()),
            source: op.clone(),
            target: op,
            colour_map: (0..n).collect(),
            op_map: Arc::new(|_, o| Ok(o.clone())),
        }
    }

    /// The unique morphism into the terminal operad of the given flavour.
    pub fn terminal(source: Arc<dyn Operad>, flavour: Flavour) -> Result<Self> {
        let target: Arc<dyn Operad> = match flavour {
            Flavour::Symmetric => Arc::new(Com),
            Flavour::Nonsymmetric => Arc::new(AssNS),
            Flavour::Braided => Arc::new(BCom),
        };
        let name = format!("{}->{}", source.name(), target.name());
        let colours = vec![0; source.colours().len()];
        Self::new(name, source, target, colours, |t, o| {
            let mut ops = t.ops_profile(0, &vec![0; o.arity()])?;
            Ok(ops.remove(0))
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<dyn Operad> {
        &self.source
    }

    pub fn target(&self) -> &Arc<dyn Operad> {
        &self.target
    }

    pub fn map_colour(&self, c: Colour) -> Colour {
        self.colour_map[c]
    }

    pub fn colour_map(&self) -> &[Colour] {
        &self.colour_map
    }

    /// `F(α)`, checked to have the image profile.
    pub fn apply(&self, op: &Operation) -> Result<Operation> {
        let image = (self.op_map)(self.target.as_ref(), op)?;
        let expected: Vec<Colour> = op.sources.iter().map(|&c| self.colour_map[c]).collect();
        if image.target != self.colour_map[op.target] || image.sources != expected {
            return Err(OperadError::Invalid(format!("{} does not preserve the profile of {:?}", self.name, op)));
        }
        Ok(image)
    }

    /// The group element acting on the target that corresponds to `g`.
    pub fn map_action(&self, g: &Action) -> Action {
        match (self.target.flavour(), g) {
            (Flavour::Symmetric, Action::Braid(w)) => Action::Perm(w.underlying_perm()),
            _ => g.clone(),
        }
    }
}

/// Parses `id:X`, `X->Y` (with `Y` terminal, or `Y = X`) from builtin names
/// or tabulated JSON paths.
pub fn morphism_from_spec(spec: &str) -> Result<OperadMorphism> {
    if let Some(name) = spec.strip_prefix("id:") {
        return Ok(OperadMorphism::identity(builtin_operad(name)?));
    }
    let (s, t) = spec.split_once("->").ok_or_else(|| OperadError::UnknownMorphism(spec.to_string()))?;
    let (s, t) = (s.trim(), t.trim());
    if s == t {
        return Ok(OperadMorphism::identity(builtin_operad(s)?));
    }
    let source = builtin_operad(s)?;
    let flavour = match t {
        "Com" => Flavour::Symmetric,
        "AssNS" => Flavour::Nonsymmetric,
        "BCom" => Flavour::Braided,
        _ => return Err(OperadError::UnknownMorphism(spec.to_string())),
    };
    OperadMorphism::terminal(source, flavour)
}
