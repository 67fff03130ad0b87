use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use opclass::operads::{
    builtin_operad, check_morphism, check_operad_axioms, fc_apply, fl_apply, morphism_from_spec, tabulate, Action, Ass,
    AssNS, BCom, Com, CompositionSpec, Flavour, LabelledCorolla, Law, Operad, OperadError, OperadMorphism, Operation,
    OperationSpec, TabulatedOperad, TabulatedSpec,
};
use opclass::Permutation;
use proptest::prelude::*;

fn perm(images: &[usize]) -> Permutation {
    Permutation::new(images.to_vec()).unwrap()
}

/// Free-monoid model of `Ass`: an operation evaluates a tuple of words by
/// concatenating them in the order it lists.
fn eval(op: &Operation, xs: &[String]) -> String {
    let p = Ass::perm(op).inverse();
    (0..p.arity()).map(|k| xs[p.apply(k)].as_str()).collect()
}

fn letters(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

#[test]
fn builtin_operation_counts() {
    for n in 0..=5 {
        assert_eq!(Com.ops(0, n).unwrap().len(), 1);
        assert_eq!(AssNS.ops(0, n).unwrap().len(), 1);
        assert_eq!(BCom.ops(0, n).unwrap().len(), 1);
        assert_eq!(Ass.ops(0, n).unwrap().len(), (1..=n).product::<usize>());
    }
    assert_eq!(Ass.ops(0, 3).unwrap().len(), 6);
    assert!(Com.ops_profile(1, &[0]).unwrap().is_empty());
}

#[test]
fn builtin_lookup() {
    for name in ["Com", "Ass", "AssNS", "BCom"] {
        assert_eq!(builtin_operad(name).unwrap().name(), name);
    }
    assert!(matches!(builtin_operad("Lie"), Err(OperadError::UnknownOperad(_))));
}

#[test]
fn builtins_satisfy_axioms() {
    for (op, bound) in [(&Com as &dyn Operad, 4), (&Ass, 3), (&AssNS, 4), (&BCom, 3)] {
        let report = check_operad_axioms(op, bound);
        assert!(report.passed(), "{}: {:?}", op.name(), report.violation);
        assert!(report.checked > 0);
    }
}

#[test]
fn ass_matches_free_monoid() {
    let all: Vec<Vec<Operation>> = (0..=3).map(|n| Ass.ops(0, n).unwrap()).collect();
    for outer in all.iter().flatten() {
        let pools: Vec<Vec<Operation>> = vec![all.iter().flatten().cloned().collect(); outer.arity()];
        for inner in opclass::operads::cartesian(&pools) {
            let total: usize = inner.iter().map(Operation::arity).sum();
            if total > 4 {
                continue;
            }
            let xs = letters(total);
            let mut offset = 0;
            let blocks: Vec<String> = inner
                .iter()
                .map(|b| {
                    let w = eval(b, &xs[offset..offset + b.arity()]);
                    offset += b.arity();
                    w
                })
                .collect();
            let composite = Ass.compose(outer, &inner).unwrap();
            assert_eq!(eval(&composite, &xs), eval(outer, &blocks));
        }
        for g in Permutation::all(outer.arity()) {
            let xs = letters(outer.arity());
            let acted = Ass.act(outer, &Action::Perm(g.clone())).unwrap();
            // Input k of the acted operation is input g(k) of the original.
            let mut moved = vec![String::new(); xs.len()];
            for (k, x) in xs.iter().enumerate() {
                moved[g.apply(k)] = x.clone();
            }
            assert_eq!(eval(&acted, &xs), eval(outer, &moved));
        }
    }
}

#[test]
fn wrong_actions_are_rejected() {
    let m = Com.ops(0, 2).unwrap().remove(0);
    let braid = Action::Braid(opclass::braids::BraidWord::new(2, vec![1]).unwrap());
    assert!(matches!(Com.act(&m, &braid), Err(OperadError::WrongAction { .. })));
    let swap = Action::Perm(perm(&[1, 0]));
    assert!(matches!(AssNS.act(&m, &swap), Err(OperadError::WrongAction { .. })));
    assert!(AssNS.act(&m, &Action::Perm(Permutation::identity(2))).is_ok());
    assert!(matches!(BCom.act(&m, &swap), Err(OperadError::WrongAction { .. })));
    assert!(matches!(Com.act(&m, &Action::Perm(Permutation::identity(3))), Err(OperadError::ArityMismatch { .. })));
}

#[test]
fn composition_checks_profiles() {
    let m = Ass::op(&Permutation::identity(2));
    let u = Ass.unit(0);
    assert!(matches!(
        Ass.compose(&m, std::slice::from_ref(&u)),
        Err(OperadError::ArityMismatch { expected: 2, found: 1 })
    ));
    assert_eq!(Ass.compose(&m, &[u.clone(), u]).unwrap(), m);
}

#[test]
fn tabulated_fixture_round_trips() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/ass3.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let spec: TabulatedSpec = serde_json::from_str(&text).unwrap();
    assert_eq!(spec, tabulate(&Ass, 3).unwrap());

    let op = TabulatedOperad::load(&path).unwrap();
    assert_eq!(op.bound(), Some(3));
    assert_eq!(op.ops(0, 3).unwrap().len(), 6);
    assert!(check_operad_axioms(&op, 3).passed());

    let a = op.parse_op(0, &[0, 0], "[2,1]").unwrap();
    let b = op.parse_op(0, &[0, 0], "[1,2]").unwrap();
    let u = op.unit(0);
    let c = op.compose(&a, &[b, u]).unwrap();
    let direct = Ass.compose(&Ass::op(&perm(&[1, 0])), &[Ass::op(&Permutation::identity(2)), Ass.unit(0)]).unwrap();
    assert_eq!(op.op_label(&c), Ass.op_label(&direct));

    let big = op.ops(0, 2).unwrap();
    let inner = [big[0].clone(), big[0].clone()];
    assert!(matches!(op.compose(&big[0], &inner), Err(OperadError::BeyondBound { arity: 4, bound: 3 })));
}

/// `Ass` up to arity 3, with the arity-2 action replaced by the trivial one.
/// The action laws still hold; equivariance does not.
fn sabotaged_ass() -> TabulatedSpec {
    let mut spec = tabulate(&Ass, 3).unwrap();
    for entry in spec.action.iter_mut().filter(|e| e.perm.arity() == 2) {
        entry.result = entry.op.clone();
    }
    spec
}

#[test]
fn sabotaged_equivariance_is_detected() {
    let spec = sabotaged_ass();
    let op = TabulatedOperad::from_spec_unchecked(&spec).unwrap();
    let report = check_operad_axioms(&op, 3);
    let v = report.violation.expect("violation");
    assert_eq!(v.law, Law::Equivariance, "{v}");
    assert!(matches!(TabulatedOperad::from_spec(&spec), Err(OperadError::AxiomFailure(_))));
    let text = serde_json::to_string(&spec).unwrap();
    assert!(matches!(TabulatedOperad::from_json(&text), Err(OperadError::AxiomFailure(_))));
}

#[test]
fn malformed_tables_are_rejected() {
    let mut spec = tabulate(&Com, 2).unwrap();
    spec.units.clear();
    assert!(matches!(TabulatedOperad::from_spec_unchecked(&spec), Err(OperadError::Invalid(_))));

    let mut spec = tabulate(&Com, 2).unwrap();
    spec.composition.push(CompositionSpec { outer: "c2".into(), inner: vec!["zz".into()], result: "c2".into() });
    assert!(matches!(TabulatedOperad::from_spec_unchecked(&spec), Err(OperadError::UnknownOperation(_))));

    let mut spec = tabulate(&Com, 2).unwrap();
    spec.operations.push(OperationSpec { name: "c3".into(), target: "*".into(), sources: vec!["*".into(); 3] });
    assert!(matches!(TabulatedOperad::from_spec_unchecked(&spec), Err(OperadError::BeyondBound { .. })));

    let mut spec = tabulate(&Com, 2).unwrap();
    spec.flavour = Flavour::Braided;
    assert!(TabulatedOperad::from_spec_unchecked(&spec).is_err());
    assert!(tabulate(&BCom, 2).is_err());
}

/// Two colours and a single non-unit operation `f: a -> b`.
fn arrow_operad() -> TabulatedOperad {
    let op = |name: &str, target: &str, sources: &[&str]| OperationSpec {
        name: name.into(),
        target: target.into(),
        sources: sources.iter().map(|s| s.to_string()).collect(),
    };
    let spec = TabulatedSpec {
        name: "arrow".into(),
        flavour: Flavour::Symmetric,
        colours: vec!["a".into(), "b".into()],
        bound: 1,
        operations: vec![op("1a", "a", &["a"]), op("1b", "b", &["b"]), op("f", "b", &["a"])],
        units: BTreeMap::from([("a".into(), "1a".into()), ("b".into(), "1b".into())]),
        composition: Vec::new(),
        action: Vec::new(),
    };
    TabulatedOperad::from_spec(&spec).unwrap()
}

#[test]
fn multicoloured_tabulation() {
    let op = arrow_operad();
    assert_eq!(op.colour_index("b").unwrap(), 1);
    assert!(matches!(op.colour_index("c"), Err(OperadError::UnknownColour(_))));
    assert_eq!(op.ops(1, 1).unwrap().len(), 2);
    let spec = tabulate(&op, 1).unwrap();
    assert!(spec.operations.iter().any(|o| o.name == "b:f"));
    assert!(TabulatedOperad::from_spec(&spec).is_ok());
}

#[test]
fn morphisms_from_names() {
    for name in ["Ass->Com", "id:Ass", "Com->Com", "AssNS->AssNS", "BCom->BCom", "BCom->Com"] {
        let f = morphism_from_spec(name).unwrap();
        assert!(check_morphism(&f, 3).passed(), "{name}");
    }
    assert_eq!(morphism_from_spec("Ass->Com").unwrap().name(), "Ass->Com");
    assert!(matches!(morphism_from_spec("Com->Ass"), Err(OperadError::UnknownMorphism(_))));
    assert!(matches!(morphism_from_spec("Ass->AssNS"), Err(OperadError::FlavourMismatch(..))));
    assert!(matches!(morphism_from_spec("Ass"), Err(OperadError::UnknownMorphism(_))));
}

#[test]
fn broken_morphism_is_detected() {
    let f = OperadMorphism::new("collapse", Arc::new(Ass), Arc::new(Ass), vec![0], |_, o| {
        Ok(Ass::op(&Permutation::identity(o.arity())))
    })
    .unwrap();
    let v = check_morphism(&f, 3).violation.expect("violation");
    assert_eq!(v.law, Law::MorphismAction);

    assert!(matches!(
        OperadMorphism::new("bad", Arc::new(Com), Arc::new(AssNS), vec![0], |_, o| Ok(o.clone())),
        Err(OperadError::FlavourMismatch(..))
    ));
    assert!(OperadMorphism::new("bad", Arc::new(Com), Arc::new(Com), vec![1], |_, o| Ok(o.clone())).is_err());
}

#[test]
fn corolla_functors_on_ass_to_com() {
    let f = morphism_from_spec("Ass->Com").unwrap();
    let alpha = Ass::op(&perm(&[1, 0]));
    let corolla = LabelledCorolla::new(alpha, vec!['x', 'y'], |_| 0).unwrap();
    let fc = fc_apply(&f, &corolla, |_| 0).unwrap();
    assert_eq!(Com.op_label(&fc.op), "c2");
    assert_eq!(fc.labels, vec![(0, 'x'), (0, 'y')]);
    let fl = fl_apply(&f, &corolla, |_| 0).unwrap();
    assert_eq!(fl.labels, vec!['x', 'y']);
    assert_eq!(fl.op, fc.op);

    assert!(LabelledCorolla::new(Ass::op(&perm(&[1, 0])), vec!['x'], |_| 0).is_err());
    assert!(matches!(
        LabelledCorolla::new(Ass::op(&perm(&[1, 0])), vec!['x', 'y'], |_| 1),
        Err(OperadError::ProfileMismatch { index: 0, .. })
    ));
}

#[test]
fn corolla_functors_across_colours() {
    let op: Arc<dyn Operad> = Arc::new(arrow_operad());
    let f = OperadMorphism::terminal(op.clone(), Flavour::Symmetric).unwrap();
    let arrow = op.parse_op(1, &[0], "f").unwrap();
    // Labels lie over source colours for fc, and over image colours for fl.
    let c = LabelledCorolla::new(arrow.clone(), vec![("p", 0)], |l| l.1).unwrap();
    let fc = fc_apply(&f, &c, |l| l.1).unwrap();
    assert_eq!(fc.labels, vec![(0, ("p", 0))]);
    assert!(fc_apply(&f, &c, |_| 1).is_err());
    let fl = fl_apply(&f, &LabelledCorolla { op: arrow, labels: vec!["q"] }, |_| 0).unwrap();
    assert_eq!(fl.op, Com.ops(0, 1).unwrap()[0]);
}

fn arb_ass_op() -> impl Strategy<Value = Operation> {
    (0usize..=4).prop_flat_map(|n| Just(Permutation::all(n).collect::<Vec<_>>())).prop_flat_map(|ps| {
        let len = ps.len();
        (0..len).prop_map(move |i| Ass::op(&ps[i]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn fc_is_natural_in_labels(alpha in arb_ass_op(), seed in any::<u64>()) {
        let f = morphism_from_spec("Ass->Com").unwrap();
        let labels: Vec<u64> = (0..alpha.arity() as u64).map(|k| seed.wrapping_mul(k + 7)).collect();
        let corolla = LabelledCorolla::new(alpha, labels, |_| 0).unwrap();
        let g = |x: &u64| x % 5;
        let lhs = fc_apply(&f, &corolla.relabel(g), |_| 0).unwrap();
        let rhs = fc_apply(&f, &corolla, |_| 0).unwrap().relabel(|(c, x)| (*c, g(x)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn forgetting_labels_recovers_the_morphism(alpha in arb_ass_op()) {
        let f = morphism_from_spec("Ass->Com").unwrap();
        let corolla = LabelledCorolla::new(alpha.clone(), vec![(); alpha.arity()], |_| 0).unwrap();
        let fc = fc_apply(&f, &corolla, |_| 0).unwrap();
        let fl = fl_apply(&f, &corolla, |_| 0).unwrap();
        prop_assert_eq!(&fc.op, &f.apply(&alpha).unwrap());
        prop_assert_eq!(fc.relabel(|_| ()), fl);
    }
}
