use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::{CodescentError, Result};
use crate::par;

/// `(f, g) ↦ g ∘ f` on global arrow indices, called only on composable pairs.
pub type Composer = dyn Fn(usize, usize) -> usize + Send + Sync;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// A finite category with arrows numbered globally.
///
/// Composition is stored per triple of objects `(a, b, c)` as a block
/// indexed by `pos(f) * |hom(b, c)| + pos(g)`. Blocks are filled on first
/// use from the composer, so large categories only pay for what is read.
#[derive(Clone)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    homs: Vec<Vec<usize>>,
    local: Vec<usize>,
    identities: Vec<usize>,
    blocks: Vec<OnceLock<Vec<usize>>>,
    composer: Option<Arc<Composer>>,
}

impl std::fmt::Debug for FiniteCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteCategory")
            .field("objects", &self.objects.len())
            .field("arrows", &self.arrows.len())
            .finish()
    }
}

/// Serialized form: composition lists `[f, g, g∘f]`, all 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    pub identities: Vec<usize>,
    pub composition: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

impl FiniteCategory {
    /// A category whose composites are computed on demand. Only endpoints
    /// and identities are checked; see [`FiniteCategory::validate`].
    pub fn lazy(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        composer: Arc<Composer>,
    ) -> Result<Self> {
        let n = objects.len();
        if identities.len() != n {
            return Err(CodescentError::Category(format!("{} identities for {n} objects", identities.len())));
        }
        let mut homs = vec![Vec::new(); n * n];
        let mut local = Vec::with_capacity(arrows.len());
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= n || a.target >= n {
                return Err(CodescentError::Category(format!("arrow {i} has an endpoint outside the objects")));
            }
            let hom = &mut homs[a.source * n + a.target];
            local.push(hom.len());
            hom.push(i);
        }
        for (x, &id) in identities.iter().enumerate() {
            match arrows.get(id) {
                Some(a) if a.source == x && a.target == x => {}
                _ => {
                    return Err(CodescentError::Category(format!(
                        "identity of object {x} is not an endomorphism of it"
                    )))
                }
            }
        }
        let blocks = (0..n * n * n).map(|_| OnceLock::new()).collect();
        Ok(Self { objects, arrows, homs, local, identities, blocks, composer: Some(composer) })
    }

    /// Builds every composite and checks closure and the identity laws.
    pub fn build(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        composer: Arc<Composer>,
    ) -> Result<Self> {
        let c = Self::lazy(objects, arrows, identities, composer)?;
        c.validate()?;
        Ok(c)
    }

    /// The discrete category on `objects`.
    pub fn discrete(objects: Vec<String>) -> Self {
        let arrows =
            (0..objects.len()).map(|x| Arrow { source: x, target: x, label: format!("1_{}", objects[x]) }).collect();
        let identities = (0..objects.len()).collect();
        Self::lazy(objects, arrows, identities, Arc::new(|f: usize, _: usize| f))
            .expect("discrete categories are well formed")
    }

    /// A category from explicit composites `(f, g, g∘f)`, 0-based.
    pub fn from_table(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        composites: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let mut c = Self::lazy(
            objects,
            arrows,
            identities,
            Arc::new(|_: usize, _: usize| -> usize { unreachable!("tabulated composites are preset") }),
        )?;
        let n = c.objects.len();
        let mut tables: Vec<Vec<Option<usize>>> = (0..n * n * n)
            .map(|i| {
                let (a, b, cc) = (i / (n * n), (i / n) % n, i % n);
                vec![None; c.homs[a * n + b].len() * c.homs[b * n + cc].len()]
            })
            .collect();
        for &(f, g, h) in composites {
            if f >= c.arrows.len() || g >= c.arrows.len() || h >= c.arrows.len() {
                return Err(CodescentError::Category(format!("composite ({f}, {g}, {h}) names a missing arrow")));
            }
            let (af, ag, ah) = (&c.arrows[f], &c.arrows[g], &c.arrows[h]);
            if af.target != ag.source || ah.source != af.source || ah.target != ag.target {
                return Err(CodescentError::Category(format!("composite ({f}, {g}, {h}) has the wrong boundary")));
            }
            let (block, slot) = c.slot(f, g);
            tables[block][slot] = Some(h);
        }
        for (i, t) in tables.into_iter().enumerate() {
            let full = t.into_iter().collect::<Option<Vec<usize>>>().ok_or_else(|| {
                let (a, b, cc) = (i / (n * n), (i / n) % n, i % n);
                CodescentError::Category(format!("composition through objects {a}, {b}, {cc} is incomplete"))
            })?;
            c.blocks[i].set(full).expect("fresh blocks are empty");
        }
        c.composer = None;
        c.validate()?;
        Ok(c)
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, f: usize) -> &Arrow {
        &self.arrows[f]
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[a * self.objects.len() + b]
    }

    /// Position of `f` within its hom-set.
    pub fn position(&self, f: usize) -> usize {
        self.local[f]
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.arrows[f].source] == f
    }

    fn slot(&self, f: usize, g: usize) -> (usize, usize) {
        let n = self.objects.len();
        let (a, b, c) = (self.arrows[f].source, self.arrows[f].target, self.arrows[g].target);
        let width = self.homs[b * n + c].len();
        ((a * n + b) * n + c, self.local[f] * width + self.local[g])
    }

    /// Composites through `a -> b -> c`, indexed by
    /// `pos(f) * |hom(b, c)| + pos(g)`.
    pub fn block(&self, a: usize, b: usize, c: usize) -> &[usize] {
        let n = self.objects.len();
        self.blocks[(a * n + b) * n + c].get_or_init(|| {
            let composer = self.composer.as_ref().expect("tabulated categories are fully populated");
            let fs = &self.homs[a * n + b];
            let gs = &self.homs[b * n + c];
            let mut out = Vec::with_capacity(fs.len() * gs.len());
            for &f in fs {
                for &g in gs {
                    out.push(composer(f, g));
                }
            }
            out
        })
    }

    /// `g ∘ f`. Panics unless the target of `f` is the source of `g`.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        assert_eq!(self.arrows[f].target, self.arrows[g].source, "arrows {f} and {g} are not composable");
        let n = self.objects.len();
        let (a, b, c) = (self.arrows[f].source, self.arrows[f].target, self.arrows[g].target);
        let width = self.homs[b * n + c].len();
        self.block(a, b, c)[self.local[f] * width + self.local[g]]
    }

    pub fn try_compose(&self, g: usize, f: usize) -> Result<usize> {
        if self.arrows[f].target != self.arrows[g].source {
            return Err(CodescentError::Category(format!("arrows {f} and {g} are not composable")));
        }
        Ok(self.compose(g, f))
    }

    /// Fills every composition block, in parallel when enabled.
    pub fn materialize(&self) {
        let n = self.objects.len();
        par::map_range(n * n * n, |i| {
            self.block(i / (n * n), (i / n) % n, i % n);
        });
    }

    /// Checks that composites land in the right hom-set and that identities
    /// are neutral.
    pub fn validate(&self) -> Result<()> {
        let n = self.objects.len();
        let results = par::map_range(n * n * n, |i| -> Result<()> {
            let (a, b, c) = (i / (n * n), (i / n) % n, i % n);
            let block = self.block(a, b, c);
            for &h in block {
                if h >= self.arrows.len() || self.arrows[h].source != a || self.arrows[h].target != c {
                    return Err(CodescentError::Category(format!(
                        "a composite through objects {a}, {b}, {c} leaves hom({a}, {c})"
                    )));
                }
            }
            Ok(())
        });
        results.into_iter().collect::<Result<()>>()?;
        for (f, arrow) in self.arrows.iter().enumerate() {
            if self.compose(f, self.identities[arrow.source]) != f
                || self.compose(self.identities[arrow.target], f) != f
            {
                return Err(CodescentError::Category(format!("identity law fails at arrow {f} ({})", arrow.label)));
            }
        }
        Ok(())
    }

    /// Checks `h ∘ (g ∘ f) = (h ∘ g) ∘ f` on every composable triple.
    pub fn check_associativity(&self) -> Result<()> {
        let n = self.objects.len();
        let results = par::map_range(n * n, |i| -> Result<()> {
            let (a, b) = (i / n, i % n);
            for c in 0..n {
                for d in 0..n {
                    for &f in self.hom(a, b) {
                        for &g in self.hom(b, c) {
                            let gf = self.compose(g, f);
                            for &h in self.hom(c, d) {
                                if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                                    return Err(CodescentError::Category(format!(
                                        "associativity fails on arrows {f}, {g}, {h}"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
            Ok(())
        });
        results.into_iter().collect()
    }

    /// The inverse of `f`, if any.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (a, b) = (self.arrows[f].source, self.arrows[f].target);
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == self.identities[a] && self.compose(f, g) == self.identities[b])
    }

    /// The full subcategory on `keep`, with objects and arrows renumbered in
    /// the given order. Returns the category and the old index of each new
    /// arrow.
    pub fn full_subcategory(&self, keep: &[usize]) -> Result<(FiniteCategory, Vec<usize>)> {
        let mut arrows = Vec::new();
        let mut old = Vec::new();
        let mut new_of_old = HashMap::new();
        for (na, &a) in keep.iter().enumerate() {
            for (nb, &b) in keep.iter().enumerate() {
                for &f in self.hom(a, b) {
                    new_of_old.insert(f, arrows.len());
                    old.push(f);
                    arrows.push(Arrow { source: na, target: nb, label: self.arrows[f].label.clone() });
                }
            }
        }
        let objects = keep.iter().map(|&a| self.objects[a].clone()).collect();
        let identities = keep.iter().map(|&a| new_of_old[&self.identities[a]]).collect();
        let parent = self.clone();
        let old_c = old.clone();
        let composer = Arc::new(move |f: usize, g: usize| new_of_old[&parent.compose(old_c[g], old_c[f])]);
        Ok((FiniteCategory::lazy(objects, arrows, identities, composer)?, old))
    }

    pub fn to_json(&self) -> CategoryJson {
        let n = self.objects.len();
        let mut composition = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let block = self.block(a, b, c);
                    let gs = self.hom(b, c);
                    for (i, &f) in self.hom(a, b).iter().enumerate() {
                        for (j, &g) in gs.iter().enumerate() {
                            composition.push([f + 1, g + 1, block[i * gs.len() + j] + 1]);
                        }
                    }
                }
            }
        }
        CategoryJson {
            objects: self.objects.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowJson { source: a.source + 1, target: a.target + 1, label: a.label.clone() })
                .collect(),
            identities: self.identities.iter().map(|i| i + 1).collect(),
            composition,
        }
    }

    pub fn from_json(json: &CategoryJson) -> Result<Self> {
        let dec = |x: usize| x.checked_sub(1).ok_or_else(|| CodescentError::Category("indices are 1-based".into()));
        let arrows = json
            .arrows
            .iter()
            .map(|a| Ok(Arrow { source: dec(a.source)?, target: dec(a.target)?, label: a.label.clone() }))
            .collect::<Result<Vec<_>>>()?;
        let identities = json.identities.iter().map(|&i| dec(i)).collect::<Result<Vec<_>>>()?;
        let composites =
            json.composition.iter().map(|&[f, g, h]| Ok((dec(f)?, dec(g)?, dec(h)?))).collect::<Result<Vec<_>>>()?;
        Self::from_table(json.objects.clone(), arrows, identities, &composites)
    }

    /// Graphviz rendering of objects and non-identity arrows.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph \"{}\" {{\n", escape(name));
        for (i, o) in self.objects.iter().enumerate() {
            let _ = writeln!(s, "  o{i} [label=\"{}\"];", escape(o));
        }
        for (f, a) in self.arrows.iter().enumerate() {
            if !self.is_identity(f) {
                let _ = writeln!(s, "  o{} -> o{} [label=\"{}\"];", a.source, a.target, escape(&a.label));
            }
        }
        s.push_str("}\n");
        s
    }

    /// Hom-set sizes as a matrix indexed by object.
    pub fn hom_counts(&self) -> Vec<Vec<usize>> {
        let n = self.objects.len();
        (0..n).map(|a| (0..n).map(|b| self.hom(a, b).len()).collect()).collect()
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Checks that `objects` and `arrows` form an isomorphism `c -> d`:
/// bijective, boundary preserving, identity preserving and functorial.
pub fn check_isomorphism(c: &FiniteCategory, d: &FiniteCategory, objects: &[usize], arrows: &[usize]) -> Result<()> {
    let fail = |m: String| Err(CodescentError::Category(m));
    if objects.len() != c.n_objects() || d.n_objects() != c.n_objects() {
        return fail(format!("{} and {} objects", c.n_objects(), d.n_objects()));
    }
    if arrows.len() != c.n_arrows() || d.n_arrows() != c.n_arrows() {
        return fail(format!("{} and {} arrows", c.n_arrows(), d.n_arrows()));
    }
    let mut seen = vec![false; d.n_objects()];
    for &o in objects {
        if o >= seen.len() || std::mem::replace(&mut seen[o], true) {
            return fail("object map is not a bijection".into());
        }
    }
    let mut seen = vec![false; d.n_arrows()];
    for &f in arrows {
        if f >= seen.len() || std::mem::replace(&mut seen[f], true) {
            return fail("arrow map is not a bijection".into());
        }
    }
    for (f, a) in c.arrows().iter().enumerate() {
        let b = d.arrow(arrows[f]);
        if b.source != objects[a.source] || b.target != objects[a.target] {
            return fail(format!("arrow {f} ({}) changes boundary", a.label));
        }
    }
    for x in 0..c.n_objects() {
        if arrows[c.identity(x)] != d.identity(objects[x]) {
            return fail(format!("identity of object {x} is not preserved"));
        }
    }
    let n = c.n_objects();
    let results = par::map_range(n * n, |i| -> Result<()> {
        let (a, b) = (i / n, i % n);
        for cc in 0..n {
            for &f in c.hom(a, b) {
                for &g in c.hom(b, cc) {
                    if arrows[c.compose(g, f)] != d.compose(arrows[g], arrows[f]) {
                        return Err(CodescentError::Category(format!(
                            "composite of arrows {f} and {g} is not preserved"
                        )));
                    }
                }
            }
        }
        Ok(())
    });
    results.into_iter().collect()
}
