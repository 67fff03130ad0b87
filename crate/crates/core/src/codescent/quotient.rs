use std::collections::HashMap;

use petgraph::unionfind::UnionFind;

use super::{Arrow, CodescentError, FiniteCategory, Result};

/// An equivalence relation on the arrows of a category relating only
/// parallel arrows, saturated to be closed under composition.
#[derive(Debug)]
pub struct Congruence<'a> {
    category: &'a FiniteCategory,
    uf: UnionFind<usize>,
}

impl<'a> Congruence<'a> {
    /// The equality relation.
    pub fn new(category: &'a FiniteCategory) -> Self {
        Self { category, uf: UnionFind::new(category.n_arrows()) }
    }

    pub fn category(&self) -> &'a FiniteCategory {
        self.category
    }

    /// Relates two parallel arrows. Returns whether two classes merged.
    pub fn identify(&mut self, f: usize, g: usize) -> Result<bool> {
        let (a, b) = (self.category.arrow(f), self.category.arrow(g));
        if a.source != b.source || a.target != b.target {
            return Err(CodescentError::Category(format!("arrows {f} and {g} are not parallel")));
        }
        Ok(self.uf.union(f, g))
    }

    pub fn equivalent(&self, f: usize, g: usize) -> bool {
        self.uf.equiv(f, g)
    }

    /// Visits `(g∘f, g∘r)` and `(f∘k, r∘k)` for every arrow `f`, its class
    /// root `r` and arrows `g`, `k` composable after and before.
    fn for_each_consequence(&self, mut visit: impl FnMut(usize, usize) -> bool) -> bool {
        let c = self.category;
        let n = c.n_objects();
        for f in 0..c.n_arrows() {
            let r = self.uf.find(f);
            if r == f {
                continue;
            }
            let (a, b) = (c.arrow(f).source, c.arrow(f).target);
            for x in 0..n {
                for &g in c.hom(b, x) {
                    if !visit(c.compose(g, f), c.compose(g, r)) {
                        return false;
                    }
                }
                for &k in c.hom(x, a) {
                    if !visit(c.compose(f, k), c.compose(r, k)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Closes the relation under composition on both sides. Each pass
    /// propagates every current identification once; more than
    /// `max_passes` passes is an error. Returns the number of passes.
    pub fn saturate(&mut self, max_passes: usize) -> Result<usize> {
        for pass in 1..=max_passes {
            let mut pending = Vec::new();
            self.for_each_consequence(|p, q| {
                if !self.uf.equiv(p, q) {
                    pending.push((p, q));
                }
                true
            });
            if pending.is_empty() {
                return Ok(pass);
            }
            for (p, q) in pending {
                self.uf.union(p, q);
            }
        }
        Err(CodescentError::Budget(max_passes))
    }

    /// Whether the relation is closed under composition on both sides.
    pub fn is_closed(&self) -> bool {
        self.for_each_consequence(|p, q| self.uf.equiv(p, q))
    }

    /// The quotient category and the class of each arrow. Classes are
    /// numbered by hom, then by their first member.
    pub fn quotient(&self) -> Result<(FiniteCategory, Vec<usize>)> {
        if !self.is_closed() {
            return Err(CodescentError::IllDefined("the relation is not a congruence".into()));
        }
        let c = self.category;
        let n = c.n_objects();
        let mut class = vec![0; c.n_arrows()];
        let mut reps = Vec::new();
        let mut arrows = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let mut seen = HashMap::new();
                for &f in c.hom(a, b) {
                    class[f] = *seen.entry(self.uf.find(f)).or_insert_with(|| {
                        reps.push(f);
                        arrows.push(Arrow { source: a, target: b, label: c.arrow(f).label.clone() });
                        reps.len() - 1
                    });
                }
            }
        }
        let mut table = Vec::new();
        for (i, &f) in reps.iter().enumerate() {
            let b = c.arrow(f).target;
            for x in 0..n {
                for &g in c.hom(b, x) {
                    if reps[class[g]] == g {
                        table.push((i, class[g], class[c.compose(g, f)]));
                    }
                }
            }
        }
        let identities = (0..n).map(|a| class[c.identity(a)]).collect();
        Ok((FiniteCategory::from_table(c.objects().to_vec(), arrows, identities, &table)?, class))
    }
}

/// The quotient of a category in which every isomorphism becomes an
/// identity.
#[derive(Debug, Clone)]
pub struct IsoQuotient {
    pub category: FiniteCategory,
    /// Quotient object of each original object.
    pub object_map: Vec<usize>,
    /// Original object chosen to represent each quotient object.
    pub representatives: Vec<usize>,
    /// An isomorphism from each object to its representative, and its inverse.
    pub to_rep: Vec<usize>,
    pub from_rep: Vec<usize>,
    /// Original arrow behind each arrow of the skeleton, and back.
    skeleton_arrows: Vec<usize>,
    skeleton_index: HashMap<usize, usize>,
    /// Quotient arrow of each skeleton arrow.
    skeleton_class: Vec<usize>,
    pub passes: usize,
}

impl IsoQuotient {
    /// Image of an arrow of the original category.
    pub fn arrow_image(&self, c: &FiniteCategory, f: usize) -> usize {
        let (a, b) = (c.arrow(f).source, c.arrow(f).target);
        let g = c.compose(self.to_rep[b], c.compose(f, self.from_rep[a]));
        self.skeleton_class[self.skeleton_index[&g]]
    }

    /// Arrows of the skeleton, as arrows of the original category.
    pub fn skeleton_arrows(&self) -> &[usize] {
        &self.skeleton_arrows
    }
}

/// Merges isomorphic objects onto the first of their class, then
/// identifies every automorphism with the identity and saturates.
pub fn quotient_identify_isos(c: &FiniteCategory, max_passes: usize) -> Result<IsoQuotient> {
    let n = c.n_objects();
    let mut representatives: Vec<usize> = Vec::new();
    let mut object_map = vec![0; n];
    let mut to_rep = vec![0; n];
    let mut from_rep = vec![0; n];
    for a in 0..n {
        let found = representatives
            .iter()
            .enumerate()
            .find_map(|(k, &r)| c.hom(a, r).iter().find_map(|&f| c.inverse(f).map(|g| (k, f, g))));
        match found {
            Some((k, f, g)) => {
                object_map[a] = k;
                to_rep[a] = f;
                from_rep[a] = g;
            }
            None => {
                object_map[a] = representatives.len();
                representatives.push(a);
                to_rep[a] = c.identity(a);
                from_rep[a] = c.identity(a);
            }
        }
    }
    let (skeleton, skeleton_arrows) = c.full_subcategory(&representatives)?;
    let mut congruence = Congruence::new(&skeleton);
    for r in 0..skeleton.n_objects() {
        for &f in skeleton.hom(r, r) {
            if skeleton.inverse(f).is_some() {
                congruence.identify(f, skeleton.identity(r))?;
            }
        }
    }
    let passes = congruence.saturate(max_passes)?;
    let (category, skeleton_class) = congruence.quotient()?;
    let skeleton_index = skeleton_arrows.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    Ok(IsoQuotient {
        category,
        object_map,
        representatives,
        to_rep,
        from_rep,
        skeleton_arrows,
        skeleton_index,
        skeleton_class,
        passes,
    })
}
