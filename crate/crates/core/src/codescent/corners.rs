use petgraph::unionfind::UnionFind;
use std::collections::HashMap;

use super::{Arrow, CodescentError, CrossedDoubleCategory, FiniteCategory, Result};
use crate::par;

/// A vertical arrow followed by a horizontal arrow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub vertical: usize,
    pub horizontal: usize,
}

/// A 2-cell `(f, g) -> (h, k)` of corners: a vertical `α` with `α ∘ f = h`
/// and a square with top `g`, left `α`, right an identity and bottom `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Corner2Cell {
    pub source: Corner,
    pub target: Corner,
    pub vertical: usize,
    pub square: usize,
}

/// The 2-category of corners of a crossed double category.
#[derive(Debug)]
pub struct Corners<'a> {
    x: &'a CrossedDoubleCategory,
    homs: Vec<Vec<Corner>>,
    index: HashMap<Corner, usize>,
    cells: Vec<Vec<Corner2Cell>>,
}

pub fn corners_build(x: &CrossedDoubleCategory) -> Result<Corners<'_>> {
    let (v, h) = (x.vertical(), x.horizontal());
    let n = x.n_objects();
    let mut homs = vec![Vec::new(); n * n];
    let mut index = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            let hom = &mut homs[a * n + b];
            for z in 0..n {
                for &f in v.hom(a, z) {
                    for &g in h.hom(z, b) {
                        let c = Corner { vertical: f, horizontal: g };
                        index.insert(c, hom.len());
                        hom.push(c);
                    }
                }
            }
        }
    }
    let cells = par::map_range(n * n, |i| {
        let b = i % n;
        let id_b = v.identity(b);
        let mut out = Vec::new();
        for &c in &homs[i] {
            let z1 = h.arrow(c.horizontal).source;
            for z2 in 0..n {
                for &alpha in v.hom(z1, z2) {
                    for &s in x.squares_with_left(alpha) {
                        let sq = x.square(s);
                        if sq.top == c.horizontal && sq.right == id_b {
                            let target = Corner { vertical: v.compose(alpha, c.vertical), horizontal: sq.bottom };
                            out.push(Corner2Cell { source: c, target, vertical: alpha, square: s });
                        }
                    }
                }
            }
        }
        out
    });
    Ok(Corners { x, homs, index, cells })
}

impl<'a> Corners<'a> {
    pub fn double(&self) -> &'a CrossedDoubleCategory {
        self.x
    }

    pub fn hom(&self, a: usize, b: usize) -> &[Corner] {
        &self.homs[a * self.x.n_objects() + b]
    }

    pub fn cells(&self, a: usize, b: usize) -> &[Corner2Cell] {
        &self.cells[a * self.x.n_objects() + b]
    }

    /// Position of a corner within its hom.
    pub fn position(&self, c: Corner) -> usize {
        self.index[&c]
    }

    pub fn source(&self, c: Corner) -> usize {
        self.x.vertical().arrow(c.vertical).source
    }

    pub fn target(&self, c: Corner) -> usize {
        self.x.horizontal().arrow(c.horizontal).target
    }

    pub fn identity(&self, a: usize) -> Corner {
        Corner { vertical: self.x.vertical().identity(a), horizontal: self.x.horizontal().identity(a) }
    }

    /// `(f₂, g₂) ∘ (f₁, g₁) = (λ ∘ f₁, g₂ ∘ ρ)` with `(λ, ρ)` the sides of
    /// the chosen square on `(g₁, f₂)`.
    pub fn compose(&self, second: Corner, first: Corner) -> Result<Corner> {
        let (v, h) = (self.x.vertical(), self.x.horizontal());
        if self.target(first) != self.source(second) {
            return Err(CodescentError::Double("corners are not composable".into()));
        }
        let (lambda, rho) = self.x.lambda_rho(first.horizontal, second.vertical).ok_or_else(|| {
            CodescentError::Double(format!("no chosen square on ({}, {})", first.horizontal, second.vertical))
        })?;
        Ok(Corner { vertical: v.compose(lambda, first.vertical), horizontal: h.compose(second.horizontal, rho) })
    }

    pub fn label(&self, c: Corner) -> String {
        format!("({}, {})", self.x.vertical().arrow(c.vertical).label, self.x.horizontal().arrow(c.horizontal).label)
    }

    /// The category of corners `a -> b` and 2-cells between them, with
    /// 2-cells composed by stacking squares.
    pub fn hom_category(&self, a: usize, b: usize) -> Result<FiniteCategory> {
        let (v, x) = (self.x.vertical(), self.x);
        let corners = self.hom(a, b);
        let mut cells: Vec<Corner2Cell> = self.cells(a, b).to_vec();
        cells.sort_by_key(|c| (self.position(c.source), self.position(c.target), c.vertical, c.square));
        let cell_index: HashMap<(usize, usize, usize), usize> =
            cells.iter().enumerate().map(|(i, c)| ((self.position(c.source), c.vertical, c.square), i)).collect();
        let mut by_source = vec![Vec::new(); corners.len()];
        for (i, c) in cells.iter().enumerate() {
            by_source[self.position(c.source)].push(i);
        }
        let mut identities = Vec::new();
        for &c in corners {
            let z = x.horizontal().arrow(c.horizontal).source;
            let key = (self.position(c), v.identity(z), x.vertical_identity(c.horizontal));
            identities.push(*cell_index.get(&key).ok_or_else(|| {
                CodescentError::Double(format!("identity 2-cell on corner {} is missing", self.label(c)))
            })?);
        }
        let arrows = cells
            .iter()
            .map(|c| Arrow {
                source: self.position(c.source),
                target: self.position(c.target),
                label: format!("({}, {})", v.arrow(c.vertical).label, x.square(c.square).label),
            })
            .collect();
        let objects = corners.iter().map(|&c| self.label(c)).collect();
        let mut table = Vec::new();
        for (i, first) in cells.iter().enumerate() {
            for &j in &by_source[self.position(first.target)] {
                let second = &cells[j];
                let alpha = v.compose(second.vertical, first.vertical);
                let square = x
                    .vcompose(first.square, second.square)
                    .ok_or_else(|| CodescentError::Double(format!("2-cells {i} and {j} do not stack")))?;
                let k = *cell_index.get(&(self.position(first.source), alpha, square)).ok_or_else(|| {
                    CodescentError::Double(format!("stacking 2-cells {i} and {j} leaves the corners"))
                })?;
                table.push((i, j, k));
            }
        }
        FiniteCategory::from_table(objects, arrows, identities, &table)
    }

    /// Checks the unit and associativity laws for corner composition and
    /// the category laws of every hom-category.
    pub fn check(&self) -> Result<()> {
        let n = self.x.n_objects();
        for a in 0..n {
            for &c in (0..n).flat_map(|b| self.hom(a, b)) {
                let t = self.target(c);
                if self.compose(c, self.identity(a))? != c || self.compose(self.identity(t), c)? != c {
                    return Err(CodescentError::Double(format!(
                        "identity corners are not neutral for {}",
                        self.label(c)
                    )));
                }
            }
        }
        let results = par::map_range(n * n, |i| -> Result<()> {
            let (a, b) = (i / n, i % n);
            self.hom_category(a, b)?.check_associativity()?;
            for cc in 0..n {
                for d in 0..n {
                    for &f in self.hom(a, b) {
                        for &g in self.hom(b, cc) {
                            let gf = self.compose(g, f)?;
                            for &k in self.hom(cc, d) {
                                if self.compose(k, gf)? != self.compose(self.compose(k, g)?, f)? {
                                    return Err(CodescentError::Double(format!(
                                        "corner composition is not associative on {}, {}, {}",
                                        self.label(f),
                                        self.label(g),
                                        self.label(k)
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
}

/// The codescent category: hom-sets are connected components of corners.
#[derive(Debug, Clone)]
pub struct Codescent {
    pub category: FiniteCategory,
    /// Arrow of `category` holding each corner.
    pub class_of: HashMap<Corner, usize>,
    /// The first corner of each class, in enumeration order.
    pub representatives: Vec<Corner>,
    /// Image of each vertical arrow `f`: the class of `(f, 1)`.
    pub q0: Vec<usize>,
    /// Image of each horizontal arrow `g`: the class of `(1, g)`.
    pub q1: Vec<usize>,
}

impl Codescent {
    /// Checks that every arrow is the composite of its representative's
    /// horizontal image after its vertical image.
    pub fn check_factorization(&self) -> Result<()> {
        for (i, c) in self.representatives.iter().enumerate() {
            if self.category.compose(self.q1[c.horizontal], self.q0[c.vertical]) != i {
                return Err(CodescentError::IllDefined(format!("arrow {i} does not factor through its corner")));
            }
        }
        Ok(())
    }
}

/// Quotients each hom of corners by the zig-zags of 2-cells and checks that
/// corner composition descends to the quotient.
pub fn pi0_codescent(x: &CrossedDoubleCategory) -> Result<Codescent> {
    let corners = corners_build(x)?;
    let n = x.n_objects();
    let partitions = par::map_range(n * n, |i| {
        let (a, b) = (i / n, i % n);
        let hom = corners.hom(a, b);
        let mut uf = UnionFind::new(hom.len());
        for cell in corners.cells(a, b) {
            uf.union(corners.position(cell.source), corners.position(cell.target));
        }
        let mut class_of_root = HashMap::new();
        let mut classes = Vec::with_capacity(hom.len());
        let mut reps = Vec::new();
        for (p, &c) in hom.iter().enumerate() {
            let next = class_of_root.len();
            let k = *class_of_root.entry(uf.find(p)).or_insert(next);
            if k == next {
                reps.push(c);
            }
            classes.push(k);
        }
        (classes, reps)
    });
    let mut class_of = HashMap::new();
    let mut representatives = Vec::new();
    let mut arrows = Vec::new();
    for (i, (classes, reps)) in partitions.iter().enumerate() {
        let offset = representatives.len();
        for &c in reps {
            arrows.push(Arrow { source: i / n, target: i % n, label: corners.label(c) });
        }
        representatives.extend(reps.iter().copied());
        for (&c, &k) in corners.hom(i / n, i % n).iter().zip(classes) {
            class_of.insert(c, offset + k);
        }
    }
    let class = |c: &Corner| class_of[c];

    let check = par::map_range(n * n, |i| -> Result<Vec<(usize, usize, usize)>> {
        let (a, b) = (i / n, i % n);
        let mut table = Vec::new();
        for cc in 0..n {
            let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
            for &f in corners.hom(a, b) {
                for &g in corners.hom(b, cc) {
                    let k = class(&corners.compose(g, f)?);
                    let key = (class(&f), class(&g));
                    match seen.get(&key) {
                        None => {
                            seen.insert(key, k);
                            table.push((key.0, key.1, k));
                        }
                        Some(&prev) if prev != k => {
                            return Err(CodescentError::IllDefined(format!(
                                "composing {} after {} lands in class {k}, another pair of the same classes in {prev}",
                                corners.label(g),
                                corners.label(f)
                            )))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(table)
    });
    let mut table = Vec::new();
    for t in check {
        table.extend(t?);
    }
    let objects = x.vertical().objects().to_vec();
    let identities = (0..n).map(|a| class(&corners.identity(a))).collect();
    let category = FiniteCategory::from_table(objects, arrows, identities, &table)?;
    let (v, h) = (x.vertical(), x.horizontal());
    let q0 =
        (0..v.n_arrows()).map(|f| class(&Corner { vertical: f, horizontal: h.identity(v.arrow(f).target) })).collect();
    let q1 =
        (0..h.n_arrows()).map(|g| class(&Corner { vertical: v.identity(h.arrow(g).source), horizontal: g })).collect();
    Ok(Codescent { category, class_of, representatives, q0, q1 })
}

/// Connected components of the hom-categories of a double category whose
/// vertical arrows are identities, computed directly on horizontal arrows.
/// Returns the quotient and the class of each horizontal arrow.
pub fn two_category_pi0(x: &CrossedDoubleCategory) -> Result<(FiniteCategory, Vec<usize>)> {
    let (v, h) = (x.vertical(), x.horizontal());
    if (0..v.n_arrows()).any(|f| !v.is_identity(f)) {
        return Err(CodescentError::Double("vertical arrows must all be identities".into()));
    }
    let n = x.n_objects();
    let mut uf = UnionFind::new(h.n_arrows());
    for s in x.squares() {
        uf.union(s.top, s.bottom);
    }
    let mut class = vec![usize::MAX; h.n_arrows()];
    let mut reps = Vec::new();
    let mut arrows = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let mut seen = HashMap::new();
            for &g in h.hom(a, b) {
                let k = *seen.entry(uf.find(g)).or_insert_with(|| {
                    reps.push(g);
                    arrows.push(Arrow { source: a, target: b, label: h.arrow(g).label.clone() });
                    reps.len() - 1
                });
                class[g] = k;
            }
        }
    }
    let mut table = Vec::new();
    for &f in &reps {
        let b = h.arrow(f).target;
        for c in 0..n {
            for &g in h.hom(b, c) {
                if reps[class[g]] == g {
                    table.push((class[f], class[g], class[h.compose(g, f)]));
                }
            }
        }
    }
    let identities = (0..n).map(|a| class[h.identity(a)]).collect();
    let category = FiniteCategory::from_table(h.objects().to_vec(), arrows, identities, &table)?;
    Ok((category, class))
}
