use std::collections::HashMap;
use std::sync::Arc;

use super::{Classifier, ClassifierError, ClassifierMorphism, ClassifierObject, Result};
use crate::codescent::{Arrow, FiniteCategory};
use crate::operads::{Colour, Flavour};
use crate::par;

/// The full subcategory of a classifier fibre on objects of bounded size.
#[derive(Debug, Clone)]
pub struct ClassifierCategory {
    pub objects: Vec<ClassifierObject>,
    pub morphisms: Vec<ClassifierMorphism>,
    pub category: FiniteCategory,
    index: Arc<HashMap<ClassifierMorphism, usize>>,
}

impl ClassifierCategory {
    pub fn index_of(&self, m: &ClassifierMorphism) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn object_index(&self, x: &ClassifierObject) -> Option<usize> {
        self.objects.iter().position(|y| y == x)
    }
}

/// Objects over `j` with at most `max_size` colours and all morphisms
/// between them. Composites are computed when first read.
pub fn classifier_category(cls: &Classifier, j: Colour, max_size: usize) -> Result<ClassifierCategory> {
    if cls.flavour() == Flavour::Braided {
        return Err(ClassifierError::Unbounded);
    }
    let objects = cls.objects(j, max_size)?;
    let n = objects.len();
    let homs = par::try_map_range(n * n, |i| cls.hom(&objects[i / n], &objects[i % n], None))?;
    let mut morphisms = Vec::new();
    let mut arrows = Vec::new();
    for (i, hom) in homs.into_iter().enumerate() {
        for m in hom {
            arrows.push(Arrow { source: i / n, target: i % n, label: cls.morphism_label(&m) });
            morphisms.push(m);
        }
    }
    let index: Arc<HashMap<ClassifierMorphism, usize>> =
        Arc::new(morphisms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect());
    let identities = objects.iter().map(|x| index[&cls.identity(x)]).collect();
    let labels = objects.iter().map(|x| cls.object_label(x)).collect();
    let (c, ms, idx) = (cls.clone(), Arc::new(morphisms.clone()), index.clone());
    let composer = Arc::new(move |f: usize, g: usize| {
        let h = c.compose(&ms[f], &ms[g]).expect("composable classifier morphisms compose");
        *idx.get(&h).unwrap_or_else(|| panic!("composite {h:?} was not enumerated"))
    });
    let category = FiniteCategory::lazy(labels, arrows, identities, composer)
        .map_err(|e| ClassifierError::Category(e.to_string()))?;
    Ok(ClassifierCategory { objects, morphisms, category, index })
}
