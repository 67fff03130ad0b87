//! The category of `S`-algebra shapes inside `T` for an operad morphism
//! `F: S -> T`, one category per colour `j` of `T`.
//!
//! An object is a sequence of `S`-colours `(i_k)_k` with a `T`-operation
//! `α: (f i_k)_k -> j`. A morphism `(h, (β_k)_k)` consists of an indexing
//! map `h` (a function, a monotone map or a vine, following the flavour)
//! and one `S`-operation per target position, whose inputs are the source
//! positions over it in ascending order. It must satisfy
//! `T(α₂ ∘ (Fβ_k)_k) · ρ = α₁`, where `ρ` is the bijective part of `h`
//! (or the braid of the vine).

mod category;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braids::{braid_cable, braid_restrict, vine_compose, vine_compose_raw, BraidError, BraidWord, Vine};
use crate::finmaps::{bij_mon_factorize, block_substitute, FinFunction, FinMapError, MonotoneMap, Permutation};
use crate::operads::{cartesian, Action, Colour, Flavour, Operad, OperadError, OperadMorphism, Operation};

pub use category::{classifier_category, ClassifierCategory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifierError {
    #[error("classifier needs operads of one flavour, found {0} and {1}")]
    FlavourMismatch(Flavour, Flavour),
    #[error("indexing of kind {found} does not fit a {flavour} classifier")]
    IndexingKind { flavour: Flavour, found: &'static str },
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("profile misalignment: {0}")]
    Profile(String),
    #[error("the commutativity condition fails: {0}")]
    Condition(String),
    #[error("objects over different colours {0} and {1}")]
    ColourMismatch(Colour, Colour),
    #[error("invalid object: {0}")]
    InvalidObject(String),
    #[error("braided hom-sets are infinite; enumerate them per pair with a word length")]
    Unbounded,
    #[error("{0}")]
    Category(String),
    #[error(transparent)]
    Operad(#[from] OperadError),
    #[error(transparent)]
    FinMap(#[from] FinMapError),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

pub type Result<T> = std::result::Result<T, ClassifierError>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassifierObject {
    /// Colours of `S`.
    pub colours: Vec<Colour>,
    /// An operation of `T` with sources `f(colours)`.
    pub op: Operation,
}

impl ClassifierObject {
    pub fn size(&self) -> usize {
        self.colours.len()
    }

    pub fn target_colour(&self) -> Colour {
        self.op.target
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Indexing {
    Function(FinFunction),
    Monotone(MonotoneMap),
    Vine(Vine),
}

impl Indexing {
    pub fn source(&self) -> usize {
        match self {
            Indexing::Function(h) => h.source(),
            Indexing::Monotone(m) => m.source(),
            Indexing::Vine(v) => v.source(),
        }
    }

    pub fn target(&self) -> usize {
        match self {
            Indexing::Function(h) => h.target(),
            Indexing::Monotone(m) => m.target(),
            Indexing::Vine(v) => v.target(),
        }
    }

    /// The underlying function.
    pub fn function(&self) -> FinFunction {
        match self {
            Indexing::Function(h) => h.clone(),
            Indexing::Monotone(m) => m.to_function(),
            Indexing::Vine(v) => crate::braids::vine_underlying_fn(v),
        }
    }

    /// Whether the underlying function is order preserving and the vine
    /// braid (if any) is trivial.
    pub fn is_monotone(&self) -> bool {
        match self {
            Indexing::Function(h) => h.is_monotone(),
            Indexing::Monotone(_) => true,
            Indexing::Vine(v) => v.braid().is_identity(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        self.function().is_bijective()
    }

    fn kind(&self) -> &'static str {
        match self {
            Indexing::Function(_) => "function",
            Indexing::Monotone(_) => "monotone",
            Indexing::Vine(_) => "vine",
        }
    }
}

impl fmt::Display for Indexing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Indexing::Function(h) => write!(f, "{h}"),
            Indexing::Monotone(m) => write!(f, "{m}"),
            Indexing::Vine(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassifierMorphism {
    pub source: ClassifierObject,
    pub target: ClassifierObject,
    pub indexing: Indexing,
    /// One `S`-operation per target position.
    pub decorations: Vec<Operation>,
}

/// The classifier attached to an operad morphism `F: S -> T`.
#[derive(Clone, Debug)]
pub struct Classifier {
    morphism: OperadMorphism,
}

impl Classifier {
    pub fn new(morphism: OperadMorphism) -> Result<Self> {
        let (s, t) = (morphism.source().flavour(), morphism.target().flavour());
        if s != t {
            return Err(ClassifierError::FlavourMismatch(s, t));
        }
        Ok(Self { morphism })
    }

    pub fn morphism(&self) -> &OperadMorphism {
        &self.morphism
    }

    pub fn source(&self) -> &Arc<dyn Operad> {
        self.morphism.source()
    }

    pub fn target(&self) -> &Arc<dyn Operad> {
        self.morphism.target()
    }

    pub fn flavour(&self) -> Flavour {
        self.source().flavour()
    }

    fn image_colours(&self, colours: &[Colour]) -> Vec<Colour> {
        colours.iter().map(|&c| self.morphism.map_colour(c)).collect()
    }

    /// Checks that `op` has the image profile of `colours`.
    pub fn object(&self, colours: Vec<Colour>, op: Operation) -> Result<ClassifierObject> {
        let n = self.source().colours().len();
        if let Some(&c) = colours.iter().find(|&&c| c >= n) {
            return Err(ClassifierError::InvalidObject(format!("colour {c} does not exist")));
        }
        if op.sources != self.image_colours(&colours) {
            return Err(ClassifierError::InvalidObject(format!(
                "operation sources {:?} are not the image of {:?}",
                op.sources, colours
            )));
        }
        Ok(ClassifierObject { colours, op })
    }

    /// All objects over `j` with at most `max_size` colours, ordered by size,
    /// then colours, then operation.
    pub fn objects(&self, j: Colour, max_size: usize) -> Result<Vec<ClassifierObject>> {
        let s_colours: Vec<Colour> = (0..self.source().colours().len()).collect();
        let mut out = Vec::new();
        for n in 0..=max_size {
            let pools = vec![s_colours.clone(); n];
            for colours in cartesian(&pools) {
                let ops = self.target().ops_profile(j, &self.image_colours(&colours))?;
                for op in ops {
                    out.push(ClassifierObject { colours: colours.clone(), op });
                }
            }
        }
        Ok(out)
    }

    fn check_indexing_kind(&self, indexing: &Indexing) -> Result<()> {
        let ok = matches!(
            (self.flavour(), indexing),
            (Flavour::Symmetric, Indexing::Function(_))
                | (Flavour::Nonsymmetric, Indexing::Monotone(_))
                | (Flavour::Braided, Indexing::Vine(_))
        );
        if ok {
            Ok(())
        } else {
            Err(ClassifierError::IndexingKind { flavour: self.flavour(), found: indexing.kind() })
        }
    }

    /// The group element by which `T(α₂ ∘ (Fβ))` is acted on.
    fn twist(&self, indexing: &Indexing) -> Action {
        match indexing {
            Indexing::Function(h) => Action::Perm(bij_mon_factorize(h).1),
            Indexing::Monotone(m) => Action::Perm(Permutation::identity(m.source())),
            Indexing::Vine(v) => Action::Braid(v.braid_word()),
        }
    }

    /// Source colours expected for decoration `k`.
    fn decoration_sources(&self, source: &ClassifierObject, h: &FinFunction, k: usize) -> Vec<Colour> {
        h.fibre(k).into_iter().map(|x| source.colours[x]).collect()
    }

    fn check_profiles(&self, m: &ClassifierMorphism) -> Result<FinFunction> {
        self.check_indexing_kind(&m.indexing)?;
        if m.source.target_colour() != m.target.target_colour() {
            return Err(ClassifierError::ColourMismatch(m.source.target_colour(), m.target.target_colour()));
        }
        if m.indexing.source() != m.source.size() || m.indexing.target() != m.target.size() {
            return Err(ClassifierError::Profile(format!(
                "indexing {} does not run from size {} to size {}",
                m.indexing,
                m.source.size(),
                m.target.size()
            )));
        }
        if m.decorations.len() != m.target.size() {
            return Err(ClassifierError::Profile(format!(
                "{} decorations for {} target positions",
                m.decorations.len(),
                m.target.size()
            )));
        }
        let h = m.indexing.function();
        for (k, beta) in m.decorations.iter().enumerate() {
            let expected = self.decoration_sources(&m.source, &h, k);
            if beta.target != m.target.colours[k] || beta.sources != expected {
                return Err(ClassifierError::Profile(format!(
                    "decoration {k} has profile {:?} -> {}, expected {:?} -> {}",
                    beta.sources, beta.target, expected, m.target.colours[k]
                )));
            }
        }
        Ok(h)
    }

    /// `T(α₂ ∘ (Fβ_k)_k) · ρ`.
    fn transported(&self, m: &ClassifierMorphism) -> Result<Operation> {
        let images =
            m.decorations.iter().map(|b| self.morphism.apply(b)).collect::<std::result::Result<Vec<_>, _>>()?;
        let composite = self.target().compose(&m.target.op, &images)?;
        Ok(self.target().act(&composite, &self.twist(&m.indexing))?)
    }

    /// Checks profiles, then the commutativity condition. Profile problems
    /// are reported as [`ClassifierError::Profile`] and a failing condition
    /// as [`ClassifierError::Condition`].
    pub fn check(&self, m: &ClassifierMorphism) -> Result<()> {
        self.check_profiles(m)?;
        let lhs = self.transported(m)?;
        if lhs != m.source.op {
            return Err(ClassifierError::Condition(format!(
                "{} but the source object carries {}",
                self.target().op_label(&lhs),
                self.target().op_label(&m.source.op)
            )));
        }
        Ok(())
    }

    /// Whether the commutativity condition holds. Errors only on profile
    /// misalignment.
    pub fn validate(&self, m: &ClassifierMorphism) -> Result<bool> {
        match self.check(m) {
            Ok(()) => Ok(true),
            Err(ClassifierError::Condition(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    pub fn identity(&self, x: &ClassifierObject) -> ClassifierMorphism {
        let n = x.size();
        let indexing = match self.flavour() {
            Flavour::Symmetric => Indexing::Function(FinFunction::identity(n)),
            Flavour::Nonsymmetric => Indexing::Monotone(MonotoneMap::identity(n)),
            Flavour::Braided => Indexing::Vine(Vine::identity(n)),
        };
        ClassifierMorphism {
            source: x.clone(),
            target: x.clone(),
            indexing,
            decorations: x.colours.iter().map(|&c| self.source().unit(c)).collect(),
        }
    }

    /// `m2 ∘ m1`.
    pub fn compose(&self, m1: &ClassifierMorphism, m2: &ClassifierMorphism) -> Result<ClassifierMorphism> {
        if m1.target != m2.source {
            return Err(ClassifierError::ObjectMismatch(
                "codomain of the first is not the domain of the second".into(),
            ));
        }
        self.check_indexing_kind(&m1.indexing)?;
        self.check_indexing_kind(&m2.indexing)?;
        let s = self.source();
        let h1 = m1.indexing.function();
        let h2 = m2.indexing.function();
        let (indexing, twists) = match (&m1.indexing, &m2.indexing) {
            (Indexing::Vine(v1), Indexing::Vine(v2)) => {
                let (raw, f) = vine_compose_raw(v1, v2)?;
                let twists = (0..f.target())
                    .map(|k| braid_restrict(&raw, &f.fibre_range(k).collect::<Vec<_>>()).map(Action::Braid))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                (Indexing::Vine(vine_compose(v1, v2)?), Some(twists))
            }
            (Indexing::Monotone(a), Indexing::Monotone(b)) => (Indexing::Monotone(b.compose(a)?), None),
            _ => (Indexing::Function(h2.compose(&h1)?), None),
        };
        let h3 = indexing.function();
        let mut decorations = Vec::with_capacity(m2.target.size());
        for k3 in 0..m2.target.size() {
            let middle = h2.fibre(k3);
            let inner: Vec<Operation> = middle.iter().map(|&k2| m1.decorations[k2].clone()).collect();
            let composite = s.compose(&m2.decorations[k3], &inner)?;
            let g = match &twists {
                Some(t) => t[k3].clone(),
                None => {
                    // Inputs of the composite run over (h1(x), x) in
                    // lexicographic order; the decoration wants x ascending.
                    let grouped: Vec<usize> = middle.iter().flat_map(|&k2| h1.fibre(k2)).collect();
                    let mut pos = vec![0; m1.source.size()];
                    for (p, &x) in grouped.iter().enumerate() {
                        pos[x] = p;
                    }
                    let images = h3.fibre(k3).iter().map(|&x| pos[x]).collect();
                    Action::Perm(Permutation::new(images)?)
                }
            };
            decorations.push(s.act(&composite, &g)?);
        }
        Ok(ClassifierMorphism { source: m1.source.clone(), target: m2.target.clone(), indexing, decorations })
    }
}

/// The structure morphisms of the universal `S`-algebra: one object
/// `([i], 1_{f i})` per colour and, for each `S`-operation `α`, the
/// morphism `((i_k)_k, Fα) -> ([i], 1_{f i})` indexed by the map to a
/// point and decorated by `α`.
#[derive(Debug, Clone)]
pub struct UniversalAlgebra {
    pub objects: Vec<ClassifierObject>,
}

impl Classifier {
    /// All morphisms `a -> b`, ordered by indexing then decorations, each
    /// satisfying the commutativity condition. Braided classifiers list the
    /// vines reachable from braid words of length at most `word_length`,
    /// which need not be all of them.
    pub fn hom(
        &self,
        a: &ClassifierObject,
        b: &ClassifierObject,
        word_length: Option<usize>,
    ) -> Result<Vec<ClassifierMorphism>> {
        self.hom_where(a, b, word_length, |_| true)
    }

    /// The morphisms of [`Classifier::hom`] whose indexing satisfies `keep`.
    pub fn hom_where(
        &self,
        a: &ClassifierObject,
        b: &ClassifierObject,
        word_length: Option<usize>,
        keep: impl Fn(&Indexing) -> bool,
    ) -> Result<Vec<ClassifierMorphism>> {
        if a.target_colour() != b.target_colour() {
            return Ok(Vec::new());
        }
        let (m, n) = (a.size(), b.size());
        let indexings: Vec<Indexing> = match self.flavour() {
            Flavour::Symmetric => FinFunction::all(m, n).into_iter().map(Indexing::Function).collect(),
            Flavour::Nonsymmetric => MonotoneMap::all(m, n).into_iter().map(Indexing::Monotone).collect(),
            Flavour::Braided => {
                let mut vines = std::collections::BTreeSet::new();
                for w in crate::operads::braid_words(m, word_length.unwrap_or(0)) {
                    for f in MonotoneMap::all(m, n) {
                        vines.insert(crate::braids::vine_normalize(&w, &f)?);
                    }
                }
                vines.into_iter().map(Indexing::Vine).collect()
            }
        };
        let mut out = Vec::new();
        for indexing in indexings.into_iter().filter(|i| keep(i)) {
            let h = indexing.function();
            let pools = (0..n)
                .map(|k| self.source().ops_profile(b.colours[k], &self.decoration_sources(a, &h, k)))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            for decorations in cartesian(&pools) {
                let m = ClassifierMorphism {
                    source: a.clone(),
                    target: b.clone(),
                    indexing: indexing.clone(),
                    decorations,
                };
                if self.validate(&m)? {
                    out.push(m);
                }
            }
        }
        Ok(out)
    }

    pub fn object_label(&self, x: &ClassifierObject) -> String {
        let colours: Vec<&str> = x.colours.iter().map(|&c| self.source().colours()[c].as_str()).collect();
        format!("({}; {})", colours.join(","), self.target().op_label(&x.op))
    }

    pub fn morphism_label(&self, m: &ClassifierMorphism) -> String {
        let decorations: Vec<String> = m.decorations.iter().map(|b| self.source().op_label(b)).collect();
        format!("{} ({})", m.indexing, decorations.join(","))
    }

    /// `(concatenated colours, γ ∘ (α_k)_k)`.
    pub fn tensor_objects(&self, gamma: &Operation, xs: &[ClassifierObject]) -> Result<ClassifierObject> {
        if xs.len() != gamma.arity() {
            return Err(ClassifierError::Profile(format!(
                "{} factors for an operation of arity {}",
                xs.len(),
                gamma.arity()
            )));
        }
        for (k, x) in xs.iter().enumerate() {
            if x.target_colour() != gamma.sources[k] {
                return Err(ClassifierError::ColourMismatch(x.target_colour(), gamma.sources[k]));
            }
        }
        let colours = xs.iter().flat_map(|x| x.colours.iter().copied()).collect();
        let ops: Vec<Operation> = xs.iter().map(|x| x.op.clone()).collect();
        Ok(ClassifierObject { colours, op: self.target().compose(gamma, &ops)? })
    }

    /// Tensor of morphisms along `γ`: ordinal sum of the indexings and
    /// concatenation of the decorations.
    pub fn tensor_morphisms(&self, gamma: &Operation, ms: &[ClassifierMorphism]) -> Result<ClassifierMorphism> {
        let sources: Vec<ClassifierObject> = ms.iter().map(|m| m.source.clone()).collect();
        let targets: Vec<ClassifierObject> = ms.iter().map(|m| m.target.clone()).collect();
        let source = self.tensor_objects(gamma, &sources)?;
        let target = self.tensor_objects(gamma, &targets)?;
        let mut indexing = self.identity(&ClassifierObject { colours: Vec::new(), op: self.target().unit(0) }).indexing;
        for m in ms {
            self.check_indexing_kind(&m.indexing)?;
            indexing = match (&indexing, &m.indexing) {
                (Indexing::Function(a), Indexing::Function(b)) => Indexing::Function(a.ordinal_sum(b)),
                (Indexing::Monotone(a), Indexing::Monotone(b)) => Indexing::Monotone(a.ordinal_sum(b)),
                (Indexing::Vine(a), Indexing::Vine(b)) => Indexing::Vine(a.ordinal_sum(b)),
                _ => unreachable!("indexing kinds were checked"),
            };
        }
        let decorations = ms.iter().flat_map(|m| m.decorations.iter().cloned()).collect();
        Ok(ClassifierMorphism { source, target, indexing, decorations })
    }

    /// The symmetry component from `tensor(γ·ρ, (x_{ρ(k)})_k)` to
    /// `tensor(γ, (x_k)_k)`: blocks are moved by `ρ` and decorated by units.
    pub fn symmetry(&self, gamma: &Operation, rho: &Action, xs: &[ClassifierObject]) -> Result<ClassifierMorphism> {
        if rho.arity() != gamma.arity() || xs.len() != gamma.arity() {
            return Err(ClassifierError::Profile(format!(
                "symmetry of arity {} for an operation of arity {} with {} factors",
                rho.arity(),
                gamma.arity(),
                xs.len()
            )));
        }
        let p = rho.underlying_perm();
        let permuted: Vec<ClassifierObject> = (0..xs.len()).map(|k| xs[p.apply(k)].clone()).collect();
        let gamma_rho = self.target().act(gamma, &self.morphism.map_action(rho))?;
        let source = self.tensor_objects(&gamma_rho, &permuted)?;
        let target = self.tensor_objects(gamma, xs)?;
        let sizes: Vec<usize> = permuted.iter().map(ClassifierObject::size).collect();
        let indexing = match (self.flavour(), rho) {
            (Flavour::Braided, Action::Braid(w)) => {
                let cable = braid_cable(w, &crate::finmaps::BlockProfile(sizes))?;
                Indexing::Vine(Vine::from_braid(&cable))
            }
            (Flavour::Nonsymmetric, _) if !p.is_identity() => {
                return Err(ClassifierError::IndexingKind { flavour: Flavour::Nonsymmetric, found: "permutation" })
            }
            (Flavour::Nonsymmetric, _) => Indexing::Monotone(MonotoneMap::identity(sizes.iter().sum())),
            _ => {
                let blocks: Vec<Permutation> = sizes.iter().map(|&s| Permutation::identity(s)).collect();
                Indexing::Function(block_substitute(&p, &blocks)?.to_function())
            }
        };
        let decorations = target.colours.iter().map(|&c| self.source().unit(c)).collect();
        Ok(ClassifierMorphism { source, target, indexing, decorations })
    }

    pub fn universal_algebra(&self) -> UniversalAlgebra {
        let objects = (0..self.source().colours().len())
            .map(|i| ClassifierObject { colours: vec![i], op: self.target().unit(self.morphism.map_colour(i)) })
            .collect();
        UniversalAlgebra { objects }
    }

    /// The structure morphism of the universal algebra at `α`.
    pub fn structure_morphism(&self, alpha: &Operation) -> Result<ClassifierMorphism> {
        let n = alpha.arity();
        let indexing = match self.flavour() {
            Flavour::Symmetric => Indexing::Function(FinFunction::terminal(n)),
            Flavour::Nonsymmetric => Indexing::Monotone(MonotoneMap::terminal(n)),
            Flavour::Braided => Indexing::Vine(Vine::from_monotone(&MonotoneMap::terminal(n))),
        };
        let source = ClassifierObject { colours: alpha.sources.clone(), op: self.morphism.apply(alpha)? };
        let target = ClassifierObject {
            colours: vec![alpha.target],
            op: self.target().unit(self.morphism.map_colour(alpha.target)),
        };
        Ok(ClassifierMorphism { source, target, indexing, decorations: vec![alpha.clone()] })
    }

    /// Whether the structure morphism of `α ∘ (β_k)_k` is the structure
    /// morphism of `α` after the tensor of those of the `β_k`.
    pub fn algebra_law_holds(&self, alpha: &Operation, betas: &[Operation]) -> Result<bool> {
        let lhs = self.structure_morphism(&self.source().compose(alpha, betas)?)?;
        let parts = betas.iter().map(|b| self.structure_morphism(b)).collect::<Result<Vec<_>>>()?;
        let fa = self.morphism.apply(alpha)?;
        let rhs = self.compose(&self.tensor_morphisms(&fa, &parts)?, &self.structure_morphism(alpha)?)?;
        Ok(lhs == rhs)
    }
}

/// Parses a permutation or braid from a word over the braid generators.
pub fn action_from_word(flavour: Flavour, strands: usize, word: &[i32]) -> Result<Action> {
    let w = BraidWord::new(strands, word.to_vec())?;
    Ok(match flavour {
        Flavour::Braided => Action::Braid(w),
        _ => Action::Perm(w.underlying_perm()),
    })
}
