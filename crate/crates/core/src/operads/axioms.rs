//! Exhaustive checks of the operad and operad-morphism axioms up to an
//! arity bound.

use std::fmt;

use super::{cartesian, Action, Flavour, Operad, OperadMorphism, Operation, Result as OpResult};
use crate::braids::{braid_block_substitute, braid_compose, BraidWord};
use crate::finmaps::{block_substitute, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    Oracle,
    Profile,
    LeftUnit,
    RightUnit,
    Associativity,
    ActionIdentity,
    ActionComposition,
    Equivariance,
    MorphismUnit,
    MorphismComposition,
    MorphismAction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: Law,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.law, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    /// Number of equations evaluated.
    pub checked: usize,
    pub violation: Option<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

type Check = std::result::Result<(), Violation>;

fn oracle<T>(r: OpResult<T>, context: impl FnOnce() -> String) -> std::result::Result<T, Violation> {
    r.map_err(|e| Violation { law: Law::Oracle, detail: format!("{}: {e}", context()) })
}

fn expect_eq(law: Law, lhs: &Operation, rhs: &Operation, context: impl FnOnce() -> String) -> Check {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Violation { law, detail: format!("{}: {:?} != {:?}", context(), lhs, rhs) })
    }
}

/// All tuples choosing `pools[k]` at position `k` with total arity at most `budget`.
fn tuples(pools: &[&[Operation]], budget: usize) -> Vec<Vec<Operation>> {
    fn go(pools: &[&[Operation]], budget: usize, cur: &mut Vec<Operation>, out: &mut Vec<Vec<Operation>>) {
        let Some((first, rest)) = pools.split_first() else {
            out.push(cur.clone());
            return;
        };
        for op in first.iter().filter(|o| o.arity() <= budget) {
            cur.push(op.clone());
            go(rest, budget - op.arity(), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pools, budget, &mut Vec::new(), &mut out);
    out
}

/// Group elements used to test the action on arity `n`: every permutation,
/// or every braid word of length at most `max_len`.
fn actions(flavour: Flavour, n: usize, max_len: usize) -> Vec<Action> {
    match flavour {
        Flavour::Symmetric => Permutation::all(n).map(Action::Perm).collect(),
        Flavour::Nonsymmetric => vec![Action::Perm(Permutation::identity(n))],
        Flavour::Braided => braid_words(n, max_len).into_iter().map(Action::Braid).collect(),
    }
}

/// Every braid word on `n` strands of length at most `max_len`.
pub fn braid_words(n: usize, max_len: usize) -> Vec<BraidWord> {
    let letters: Vec<i32> = (1..n as i32).flat_map(|g| [g, -g]).collect();
    let mut out = vec![BraidWord::identity(n)];
    let mut frontier = vec![Vec::<i32>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                let mut v = w.clone();
                v.push(l);
                out.push(BraidWord::new(n, v.clone()).expect("letters in range"));
                next.push(v);
            }
        }
        frontier = next;
    }
    out
}

/// Substitutes group elements blockwise: `ρ(ρ_k)_k`.
fn substitute_actions(outer: &Action, blocks: &[Action]) -> OpResult<Action> {
    Ok(match outer {
        Action::Perm(p) => {
            let perms: Vec<Permutation> = blocks.iter().map(Action::underlying_perm).collect();
            Action::Perm(block_substitute(p, &perms)?)
        }
        Action::Braid(w) => {
            let words: Vec<BraidWord> = blocks
                .iter()
                .map(|b| match b {
                    Action::Braid(v) => v.clone(),
                    Action::Perm(p) => BraidWord::identity(p.arity()),
                })
                .collect();
            Action::Braid(braid_block_substitute(w, &words)?)
        }
    })
}

fn compose_actions(a: &Action, b: &Action) -> OpResult<Action> {
    Ok(match (a, b) {
        (Action::Braid(x), Action::Braid(y)) => Action::Braid(braid_compose(x, y)?),
        _ => Action::Perm(a.underlying_perm().compose(&b.underlying_perm())?),
    })
}

fn ops_upto(op: &dyn Operad, bound: usize) -> OpResult<Vec<Vec<Operation>>> {
    let bound = op.bound().map_or(bound, |b| b.min(bound));
    (0..op.colours().len())
        .map(|c| {
            let mut all = Vec::new();
            for n in 0..=bound {
                all.extend(op.ops(c, n)?);
            }
            Ok(all)
        })
        .collect()
}

const BRAID_OUTER_LEN: usize = 2;
const BRAID_INNER_LEN: usize = 1;

struct Checker<'a> {
    op: &'a dyn Operad,
    bound: usize,
    by_target: Vec<Vec<Operation>>,
    outer_actions: Vec<Vec<Action>>,
    inner_actions: Vec<Vec<Action>>,
    checked: usize,
}

impl Checker<'_> {
    fn all(&self) -> impl Iterator<Item = &Operation> {
        self.by_target.iter().flatten()
    }

    fn inner_tuples(&self, outer: &Operation) -> Vec<Vec<Operation>> {
        let pools: Vec<&[Operation]> = outer.sources.iter().map(|&c| self.by_target[c].as_slice()).collect();
        tuples(&pools, self.bound)
    }

    fn compose(&self, outer: &Operation, inner: &[Operation]) -> std::result::Result<Operation, Violation> {
        let r = oracle(self.op.compose(outer, inner), || format!("composing into {}", self.op.op_label(outer)))?;
        let sources: Vec<usize> = inner.iter().flat_map(|o| o.sources.iter().copied()).collect();
        if r.target != outer.target || r.sources != sources {
            return Err(Violation {
                law: Law::Profile,
                detail: format!("composite of {:?} has profile {:?}", outer, r),
            });
        }
        Ok(r)
    }

    fn act(&self, op: &Operation, g: &Action) -> std::result::Result<Operation, Violation> {
        let r = oracle(self.op.act(op, g), || format!("acting on {}", self.op.op_label(op)))?;
        let p = g.underlying_perm();
        let sources: Vec<usize> = (0..p.arity()).map(|k| op.sources[p.apply(k)]).collect();
        if r.target != op.target || r.sources != sources {
            return Err(Violation {
                law: Law::Profile,
                detail: format!("{:?} acted by {:?} has profile {:?}", op, g, r),
            });
        }
        Ok(r)
    }

    fn units(&mut self) -> Check {
        let all: Vec<Operation> = self.all().cloned().collect();
        for a in &all {
            let u = self.op.unit(a.target);
            let lhs = self.compose(&u, std::slice::from_ref(a))?;
            expect_eq(Law::LeftUnit, &lhs, a, || format!("1 ∘ ({})", self.op.op_label(a)))?;
            let units: Vec<Operation> = a.sources.iter().map(|&c| self.op.unit(c)).collect();
            let rhs = self.compose(a, &units)?;
            expect_eq(Law::RightUnit, &rhs, a, || format!("{} ∘ (1, ..., 1)", self.op.op_label(a)))?;
            self.checked += 2;
        }
        Ok(())
    }

    fn associativity(&mut self) -> Check {
        let all: Vec<Operation> = self.all().cloned().collect();
        for a in &all {
            for betas in self.inner_tuples(a) {
                let ab = self.compose(a, &betas)?;
                let pools: Vec<&[Operation]> = ab.sources.iter().map(|&c| self.by_target[c].as_slice()).collect();
                for gammas in tuples(&pools, self.bound) {
                    let lhs = self.compose(&ab, &gammas)?;
                    let mut offset = 0;
                    let mut inner = Vec::with_capacity(betas.len());
                    for b in &betas {
                        let block = &gammas[offset..offset + b.arity()];
                        inner.push(self.compose(b, block)?);
                        offset += b.arity();
                    }
                    let rhs = self.compose(a, &inner)?;
                    expect_eq(Law::Associativity, &lhs, &rhs, || {
                        format!(
                            "outer {} with inner ({})",
                            self.op.op_label(a),
                            betas.iter().map(|b| self.op.op_label(b)).collect::<Vec<_>>().join(", ")
                        )
                    })?;
                    self.checked += 1;
                }
            }
        }
        Ok(())
    }

    fn action_laws(&mut self) -> Check {
        let flavour = self.op.flavour();
        let all: Vec<Operation> = self.all().cloned().collect();
        for a in &all {
            let id = Action::identity(flavour, a.arity());
            let r = self.act(a, &id)?;
            expect_eq(Law::ActionIdentity, &r, a, || format!("{}·1", self.op.op_label(a)))?;
            let gs = &self.outer_actions[a.arity()];
            for g in gs {
                let ag = self.act(a, g)?;
                for h in gs {
                    let lhs = self.act(&ag, h)?;
                    let gh = oracle(compose_actions(g, h), || "composing group elements".into())?;
                    let rhs = self.act(a, &gh)?;
                    expect_eq(Law::ActionComposition, &lhs, &rhs, || {
                        format!("({}·{:?})·{:?}", self.op.op_label(a), g, h)
                    })?;
                    self.checked += 1;
                }
            }
        }
        Ok(())
    }

    fn equivariance(&mut self) -> Check {
        let flavour = self.op.flavour();
        if flavour == Flavour::Nonsymmetric {
            return Ok(());
        }
        let all: Vec<Operation> = self.all().cloned().collect();
        for a in &all {
            for betas in self.inner_tuples(a) {
                let ab = self.compose(a, &betas)?;
                for rho in &self.outer_actions[a.arity()] {
                    let p = rho.underlying_perm();
                    let a_rho = self.act(a, rho)?;
                    let pools: Vec<Vec<Action>> =
                        (0..a.arity()).map(|k| self.inner_actions[betas[p.apply(k)].arity()].clone()).collect();
                    for blocks in cartesian(&pools) {
                        let big = oracle(substitute_actions(rho, &blocks), || "substituting group elements".into())?;
                        let lhs = self.act(&ab, &big)?;
                        let inner = (0..a.arity())
                            .map(|k| self.act(&betas[p.apply(k)], &blocks[k]))
                            .collect::<std::result::Result<Vec<_>, _>>()?;
                        let rhs = self.compose(&a_rho, &inner)?;
                        expect_eq(Law::Equivariance, &lhs, &rhs, || {
                            format!(
                                "outer {} with inner ({}) acted by {:?} and blocks {:?}",
                                self.op.op_label(a),
                                betas.iter().map(|b| self.op.op_label(b)).collect::<Vec<_>>().join(", "),
                                rho,
                                blocks
                            )
                        })?;
                        self.checked += 1;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Verifies the unit, associativity, action and equivariance laws for all
/// data of total arity at most `bound`, stopping at the first violation.
/// Braided actions are sampled over short words.
pub fn check_operad_axioms(op: &dyn Operad, bound: usize) -> AxiomReport {
    let by_target = match ops_upto(op, bound) {
        Ok(v) => v,
        Err(e) => {
            return AxiomReport {
                checked: 0,
                violation: Some(Violation { law: Law::Oracle, detail: format!("enumeration failed: {e}") }),
            }
        }
    };
    let bound = op.bound().map_or(bound, |b| b.min(bound));
    let flavour = op.flavour();
    let outer_actions = (0..=bound).map(|n| actions(flavour, n, BRAID_OUTER_LEN)).collect();
    let inner_actions = (0..=bound).map(|n| actions(flavour, n, BRAID_INNER_LEN)).collect();
    let mut c = Checker { op, bound, by_target, outer_actions, inner_actions, checked: 0 };
    let result = c.units().and_then(|_| c.associativity()).and_then(|_| c.action_laws()).and_then(|_| c.equivariance());
    AxiomReport { checked: c.checked, violation: result.err() }
}

/// Verifies that `F` preserves units, composition and the action for all
/// source data of total arity at most `bound`.
pub fn check_morphism(f: &OperadMorphism, bound: usize) -> AxiomReport {
    let s = f.source().as_ref();
    let t = f.target().as_ref();
    let mut checked = 0;
    let result = (|| -> Check {
        let by_target = oracle(ops_upto(s, bound), || "enumerating source".into())?;
        let bound = s.bound().map_or(bound, |b| b.min(bound));
        let image = |o: &Operation| oracle(f.apply(o), || format!("applying {} to {}", f.name(), s.op_label(o)));
        for c in 0..s.colours().len() {
            let lhs = image(&s.unit(c))?;
            expect_eq(Law::MorphismUnit, &lhs, &t.unit(f.map_colour(c)), || format!("unit of colour {c}"))?;
            checked += 1;
        }
        for a in by_target.iter().flatten() {
            let fa = image(a)?;
            let pools: Vec<&[Operation]> = a.sources.iter().map(|&c| by_target[c].as_slice()).collect();
            for betas in tuples(&pools, bound) {
                let lhs = image(&oracle(s.compose(a, &betas), || "source composite".into())?)?;
                let fb = betas.iter().map(&image).collect::<std::result::Result<Vec<_>, _>>()?;
                let rhs = oracle(t.compose(&fa, &fb), || "target composite".into())?;
                expect_eq(Law::MorphismComposition, &lhs, &rhs, || format!("F({} ∘ ...)", s.op_label(a)))?;
                checked += 1;
            }
            for g in actions(s.flavour(), a.arity(), BRAID_OUTER_LEN) {
                let lhs = image(&oracle(s.act(a, &g), || "source action".into())?)?;
                let rhs = oracle(t.act(&fa, &f.map_action(&g)), || "target action".into())?;
                expect_eq(Law::MorphismAction, &lhs, &rhs, || format!("F({}·{:?})", s.op_label(a), g))?;
                checked += 1;
            }
        }
        Ok(())
    })();
    AxiomReport { checked, violation: result.err() }
}
