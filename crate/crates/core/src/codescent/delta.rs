use super::{CrossedDoubleCategory, CrossedReport};

pub type DeltaReport = CrossedReport;

/// Image of a morphism `(u, v, w, x)` of horizontal-then-vertical pairs:
/// `(u, δ, x, ε)` where `ε` has top `ρ_{f,g}`, left `δ` and right `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DeltaMorphism {
    pub u: usize,
    pub delta: usize,
    pub x: usize,
    pub epsilon: usize,
}

/// `(f, g) ↦ (λ_{f,g}, ρ_{f,g})`.
pub fn delta_object(x: &CrossedDoubleCategory, f: usize, g: usize) -> Option<(usize, usize)> {
    x.lambda_rho(f, g)
}

/// The image of `(u, v, w, xv)` from `(f, g)` to `(w.bottom, g2)`, where `w`
/// is a square with top `f`, left `u` and right `v`, and
/// `xv ∘ g = g2 ∘ v`. `ε` is the factorization of `κ_{f',g'} ∘_v w`
/// through `κ_{f,g}`.
pub fn delta_morphism(x: &CrossedDoubleCategory, g: usize, w: usize, g2: usize, xv: usize) -> Option<DeltaMorphism> {
    let sq = x.square(w);
    let beta = x.vcompose(w, x.kappa(sq.bottom, g2)?)?;
    let epsilon = x.opcartesian_factor(sq.top, g, xv, beta)?;
    Some(DeltaMorphism { u: sq.left, delta: x.square(epsilon).left, x: xv, epsilon })
}

/// Vertical arrows `x` out of `c` with `x ∘ g = g2 ∘ v`, paired with `g2`,
/// where `g` starts at the source of `v`.
fn completions(x: &CrossedDoubleCategory, g: usize, v: usize) -> Vec<(usize, usize)> {
    let vert = x.vertical();
    let (c, b2) = (vert.arrow(g).target, vert.arrow(v).target);
    let g2v_targets = (0..vert.n_objects()).flat_map(|c2| vert.hom(b2, c2).iter().map(move |&g2| (c2, g2)));
    let mut out = Vec::new();
    for (c2, g2) in g2v_targets {
        let rhs = vert.compose(g2, v);
        for &xv in vert.hom(c, c2) {
            if vert.compose(xv, g) == rhs {
                out.push((g2, xv));
            }
        }
    }
    out
}

/// Checks the two unit and two multiplication axioms of the distributive
/// law on objects and on every morphism of the comma categories.
pub fn check_delta_law(x: &CrossedDoubleCategory) -> DeltaReport {
    let mut report = DeltaReport::default();
    let (v, h) = (x.vertical(), x.horizontal());
    let n = x.n_objects();
    let verticals_from = |b: usize| (0..n).flat_map(move |c| v.hom(b, c).iter().copied());
    let horizontals_into = |b: usize| (0..n).flat_map(move |a| h.hom(a, b).iter().copied());
    let lr = |f: usize, g: usize| x.lambda_rho(f, g);
    let dm = |g, w, g2, xv| delta_morphism(x, g, w, g2, xv);

    report.law("chosen squares", |check| {
        for f in 0..h.n_arrows() {
            for g in verticals_from(h.arrow(f).target) {
                check(lr(f, g).is_some(), &|| format!("no chosen square on ({f}, {g})"));
            }
        }
    });
    if !report.passed() {
        return report;
    }

    report.law("delta unit (vertical)", |check| {
        for g in 0..v.n_arrows() {
            let b = v.arrow(g).source;
            let c = v.arrow(g).target;
            let got = lr(h.identity(b), g);
            check(got == Some((g, h.identity(c))), &|| format!("δ(1, {g}) = {got:?}"));
            for b2 in 0..n {
                for &vv in v.hom(b, b2) {
                    for (g2, xv) in completions(x, g, vv) {
                        let got = dm(g, x.horizontal_identity(vv), g2, xv);
                        let want = DeltaMorphism { u: vv, delta: xv, x: xv, epsilon: x.horizontal_identity(xv) };
                        check(got == Some(want), &|| format!("δ on ({vv}, {xv}) from vertical {g}: {got:?}"));
                    }
                }
            }
        }
    });

    report.law("delta unit (horizontal)", |check| {
        for f in 0..h.n_arrows() {
            let (a, b) = (h.arrow(f).source, h.arrow(f).target);
            let got = lr(f, v.identity(b));
            check(got == Some((v.identity(a), f)), &|| format!("δ({f}, 1) = {got:?}"));
            for &w in x.squares_with_top(f) {
                let s = x.square(w);
                let b2 = v.arrow(s.right).target;
                let got = dm(v.identity(b), w, v.identity(b2), s.right);
                let want = DeltaMorphism { u: s.left, delta: s.left, x: s.right, epsilon: w };
                check(got == Some(want), &|| format!("δ on square {w} with identity verticals: {got:?}"));
            }
        }
    });

    report.law("delta multiplication (vertical)", |check| {
        for f in 0..h.n_arrows() {
            for g in verticals_from(h.arrow(f).target) {
                let (l1, r1) = lr(f, g).expect("chosen squares exist");
                for hh in verticals_from(v.arrow(g).target) {
                    let (l2, r2) = lr(r1, hh).expect("chosen squares exist");
                    let got = lr(f, v.compose(hh, g));
                    check(got == Some((v.compose(l2, l1), r2)), &|| format!("δ({f}, {hh}∘{g}) = {got:?}"));
                }
            }
        }
        for w in 0..x.squares().len() {
            let (f, vv) = (x.square(w).top, x.square(w).right);
            for g in verticals_from(h.arrow(f).target) {
                for (g2, xv) in completions(x, g, vv) {
                    let first = dm(g, w, g2, xv);
                    for hh in verticals_from(v.arrow(g).target) {
                        for (h2, y) in completions(x, hh, xv) {
                            let second = first.and_then(|d1| dm(hh, d1.epsilon, h2, y));
                            let direct = dm(v.compose(hh, g), w, v.compose(h2, g2), y);
                            let ok = match (second, direct) {
                                (Some(s), Some(d)) => s.delta == d.delta && s.epsilon == d.epsilon,
                                _ => false,
                            };
                            check(ok, &|| format!("δ on square {w} through ({g}, {hh}) to ({g2}, {h2})"));
                        }
                    }
                }
            }
        }
    });

    report.law("delta multiplication (horizontal)", |check| {
        for f2 in 0..h.n_arrows() {
            for g in verticals_from(h.arrow(f2).target) {
                let (l2, r2) = lr(f2, g).expect("chosen squares exist");
                for f1 in horizontals_into(h.arrow(f2).source) {
                    let (l1, r1) = lr(f1, l2).expect("chosen squares exist");
                    let got = lr(h.compose(f2, f1), g);
                    check(got == Some((l1, h.compose(r2, r1))), &|| format!("δ({f2}∘{f1}, {g}) = {got:?}"));
                }
            }
        }
        for w2 in 0..x.squares().len() {
            let s2 = x.square(w2);
            for g in verticals_from(h.arrow(s2.top).target) {
                let l2 = lr(s2.top, g).expect("chosen squares exist").0;
                for (g2, xv) in completions(x, g, s2.right) {
                    let a = dm(g, w2, g2, xv);
                    let l2b = lr(s2.bottom, g2).map(|p| p.0);
                    for &w1 in x.squares_with_right(s2.left) {
                        let ok = (|| {
                            let (a, l2b) = (a?, l2b?);
                            let b = dm(l2, w1, l2b, a.delta)?;
                            let d = dm(g, x.hcompose(w1, w2)?, g2, xv)?;
                            Some(d.delta == b.delta && Some(d.epsilon) == x.hcompose(b.epsilon, a.epsilon))
                        })()
                        .unwrap_or(false);
                        check(ok, &|| format!("δ on squares {w1}, {w2} along {g} to {g2}"));
                    }
                }
            }
        }
    });

    report
}
