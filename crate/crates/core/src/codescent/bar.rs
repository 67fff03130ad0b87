use std::collections::HashMap;
use std::sync::Arc;

use super::{Arrow, CodescentError, CrossedDoubleCategory, FiniteCategory, Result, Square, SquareComposition};
use crate::classifier::{Classifier, ClassifierMorphism, ClassifierObject, Indexing};
use crate::finmaps::{bij_mon_factorize, MonotoneMap, Permutation};
use crate::operads::{Action, Colour, Flavour};
use crate::par;

/// The bar construction truncated to objects of bounded size, together
/// with the classifier morphisms behind its arrows.
#[derive(Debug, Clone)]
pub struct BarConstruction {
    pub classifier: Classifier,
    pub colour: Colour,
    pub bound: usize,
    pub objects: Vec<ClassifierObject>,
    /// Bijective-indexed morphisms with unit decorations.
    pub verticals: Vec<ClassifierMorphism>,
    /// Order-preserving-indexed morphisms.
    pub horizontals: Vec<ClassifierMorphism>,
    pub double: CrossedDoubleCategory,
}

type Index = Arc<HashMap<ClassifierMorphism, usize>>;

fn category(
    cls: &Classifier,
    objects: &[ClassifierObject],
    morphisms: &[ClassifierMorphism],
) -> Result<(FiniteCategory, Index)> {
    let object_index: HashMap<&ClassifierObject, usize> = objects.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let index: Index = Arc::new(morphisms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect());
    let arrows = morphisms
        .iter()
        .map(|m| Arrow {
            source: object_index[&m.source],
            target: object_index[&m.target],
            label: cls.morphism_label(m),
        })
        .collect();
    let identities = objects.iter().map(|x| index[&cls.identity(x)]).collect();
    let labels = objects.iter().map(|x| cls.object_label(x)).collect();
    let (c, ms, idx) = (cls.clone(), Arc::new(morphisms.to_vec()), index.clone());
    let composer = Arc::new(move |f: usize, g: usize| {
        let h = c.compose(&ms[f], &ms[g]).expect("bar arrows compose");
        *idx.get(&h).unwrap_or_else(|| panic!("composite {h:?} leaves the bar construction"))
    });
    Ok((FiniteCategory::build(labels, arrows, identities, composer)?, index))
}

/// The vertical arrow out of `x` indexed by `rho`.
fn vertical_from(cls: &Classifier, x: &ClassifierObject, rho: &Permutation) -> Result<ClassifierMorphism> {
    let n = x.size();
    let mut colours = vec![0; n];
    for k in 0..n {
        colours[rho.apply(k)] = x.colours[k];
    }
    let op = cls.target().act(&x.op, &Action::Perm(rho.inverse())).map_err(crate::classifier::ClassifierError::from)?;
    let indexing = match cls.flavour() {
        Flavour::Nonsymmetric => Indexing::Monotone(MonotoneMap::identity(n)),
        _ => Indexing::Function(rho.to_function()),
    };
    let decorations = colours.iter().map(|&c| cls.source().unit(c)).collect();
    let target = ClassifierObject { colours, op };
    let m = ClassifierMorphism { source: x.clone(), target, indexing, decorations };
    cls.check(&m)?;
    Ok(m)
}

/// Builds the truncated bar construction of the classifier over colour `j`:
/// vertical arrows are the bijective-indexed, unit-decorated morphisms,
/// horizontal arrows the order-preserving-indexed ones, and a square exists
/// exactly when its boundary commutes.
pub fn bar_build(cls: &Classifier, j: Colour, bound: usize) -> Result<BarConstruction> {
    if cls.flavour() == Flavour::Braided {
        return Err(CodescentError::Braided);
    }
    let objects = cls.objects(j, bound)?;
    let n = objects.len();

    let mut verticals = Vec::new();
    for x in &objects {
        let perms: Vec<Permutation> = match cls.flavour() {
            Flavour::Nonsymmetric => vec![Permutation::identity(x.size())],
            _ => Permutation::all(x.size()).collect(),
        };
        for rho in perms {
            verticals.push(vertical_from(cls, x, &rho)?);
        }
    }
    let horizontal_homs =
        par::try_map_range(n * n, |i| cls.hom_where(&objects[i / n], &objects[i % n], None, Indexing::is_monotone))?;
    let horizontals: Vec<ClassifierMorphism> = horizontal_homs.into_iter().flatten().collect();

    let (vcat, vindex) = category(cls, &objects, &verticals)?;
    let (hcat, hindex) = category(cls, &objects, &horizontals)?;
    let vinverse: Vec<usize> = (0..vcat.n_arrows())
        .map(|f| vcat.inverse(f).ok_or_else(|| CodescentError::Double(format!("vertical arrow {f} is not invertible"))))
        .collect::<Result<_>>()?;

    let square_lists = par::try_map_range(hcat.n_arrows(), |f| -> Result<Vec<Square>> {
        let top = &horizontals[f];
        let (a, b) = (hcat.arrow(f).source, hcat.arrow(f).target);
        let mut out = Vec::new();
        for b2 in 0..n {
            for &right in vcat.hom(b, b2) {
                let diagonal = cls.compose(top, &verticals[right])?;
                for a2 in 0..n {
                    for &left in vcat.hom(a, a2) {
                        let bottom = cls.compose(&verticals[vinverse[left]], &diagonal)?;
                        if bottom.indexing.is_monotone() {
                            let g = *hindex.get(&bottom).ok_or_else(|| {
                                CodescentError::Double(format!("bottom of a square over {f} is not a horizontal arrow"))
                            })?;
                            let label = format!("[{} | {}]", hcat.arrow(f).label, vcat.arrow(right).label);
                            out.push(Square { top: f, right, bottom: g, left, label });
                        }
                    }
                }
            }
        }
        Ok(out)
    })?;
    let squares: Vec<Square> = square_lists.into_iter().flatten().collect();
    let boundary: HashMap<[usize; 4], usize> =
        squares.iter().enumerate().map(|(i, s)| ([s.top, s.right, s.bottom, s.left], i)).collect();
    let lookup = |top: usize, right: usize, bottom: usize, left: usize| {
        boundary.get(&[top, right, bottom, left]).copied().ok_or_else(|| {
            CodescentError::Double(format!("no square with boundary ({top}, {right}, {bottom}, {left})"))
        })
    };
    let vertical_identities = (0..hcat.n_arrows())
        .map(|f| {
            let (a, b) = (hcat.arrow(f).source, hcat.arrow(f).target);
            lookup(f, vcat.identity(b), f, vcat.identity(a))
        })
        .collect::<Result<Vec<_>>>()?;
    let horizontal_identities = (0..vcat.n_arrows())
        .map(|g| {
            let (a, b) = (vcat.arrow(g).source, vcat.arrow(g).target);
            lookup(hcat.identity(a), g, hcat.identity(b), g)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut kappa = HashMap::new();
    for (f, horizontal) in horizontals.iter().enumerate() {
        let (a, b) = (hcat.arrow(f).source, hcat.arrow(f).target);
        for b2 in 0..n {
            for &g in vcat.hom(b, b2) {
                let diagonal = cls.compose(horizontal, &verticals[g])?;
                let (_, lambda) = bij_mon_factorize(&diagonal.indexing.function());
                let left = vertical_from(cls, &objects[a], &lambda)?;
                let left = vindex[&left];
                let bottom = cls.compose(&verticals[vinverse[left]], &diagonal)?;
                let bottom = *hindex.get(&bottom).ok_or_else(|| {
                    CodescentError::Double(format!("chosen lift of ({f}, {g}) is not order preserving"))
                })?;
                kappa.insert((f, g), lookup(f, g, bottom, left)?);
            }
        }
    }

    let double = CrossedDoubleCategory::new(
        vcat,
        hcat,
        squares,
        vertical_identities,
        horizontal_identities,
        SquareComposition::ByBoundary,
        kappa,
    )?;
    Ok(BarConstruction { classifier: cls.clone(), colour: j, bound, objects, verticals, horizontals, double })
}

impl BarConstruction {
    /// The classifier morphism a corner stands for: its horizontal arrow
    /// after its vertical arrow.
    pub fn corner_morphism(&self, c: super::Corner) -> Result<ClassifierMorphism> {
        Ok(self.classifier.compose(&self.verticals[c.vertical], &self.horizontals[c.horizontal])?)
    }

    /// Checks the two faces from horizontal arrows to objects: the target
    /// forgets the decorations and the source is the target operation
    /// composed with the images of the decorations, on colours read off
    /// the decorations.
    pub fn faces_agree(&self) -> Result<bool> {
        let t = self.classifier.target();
        let f = self.classifier.morphism();
        for m in &self.horizontals {
            let images = m
                .decorations
                .iter()
                .map(|b| f.apply(b))
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(crate::classifier::ClassifierError::from)?;
            let op = t.compose(&m.target.op, &images).map_err(crate::classifier::ClassifierError::from)?;
            let colours: Vec<Colour> = m.decorations.iter().flat_map(|b| b.sources.iter().copied()).collect();
            let targets: Vec<Colour> = m.decorations.iter().map(|b| b.target).collect();
            if op != m.source.op || colours != m.source.colours || targets != m.target.colours {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
