use std::sync::Arc;

use itertools::Itertools;

use opclass::braids::Vine;
use opclass::classifier::{
    action_from_word, classifier_category, Classifier, ClassifierError, ClassifierMorphism, ClassifierObject, Indexing,
};
use opclass::operads::{morphism_from_spec, Action, Ass, Com, Flavour, Operad, OperadMorphism, Operation};
use opclass::{FinFunction, MonotoneMap, Permutation};
use proptest::prelude::*;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn cls(spec: &str) -> Classifier {
    Classifier::new(morphism_from_spec(spec).unwrap()).unwrap()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn rising(m: usize, n: usize) -> usize {
    (0..n).map(|i| m + i).product()
}

/// Objects of a single-coloured classifier with the given size.
fn of_size(c: &Classifier, n: usize) -> Vec<ClassifierObject> {
    c.objects(0, n).unwrap().into_iter().filter(|x| x.size() == n).collect()
}

fn all_morphisms(c: &Classifier, max: usize) -> Vec<ClassifierMorphism> {
    let objects = c.objects(0, max).unwrap();
    let mut out = Vec::new();
    for a in &objects {
        for b in &objects {
            out.extend(c.hom(a, b, None).unwrap());
        }
    }
    out
}

#[test]
fn identities_validate() {
    for spec in ["Com->Com", "Ass->Com", "id:Ass", "id:AssNS", "BCom->BCom"] {
        let c = cls(spec);
        for x in c.objects(0, 3).unwrap() {
            let id = c.identity(&x);
            assert!(c.validate(&id).unwrap(), "{spec}: {}", c.object_label(&x));
            c.check(&id).unwrap();
        }
    }
}

#[test]
fn object_counts() {
    assert_eq!(cls("Com->Com").objects(0, 4).unwrap().len(), 5);
    assert_eq!(cls("Ass->Com").objects(0, 4).unwrap().len(), 5);
    assert_eq!(cls("id:Ass").objects(0, 4).unwrap().len(), 1 + 1 + 2 + 6 + 24);
    let c = cls("Com->Com");
    let x = &c.objects(0, 2).unwrap()[2];
    assert_eq!(c.object_label(x), "(*,*; c2)");
    assert!(c.object(vec![0, 0], Com.ops(0, 3).unwrap().remove(0)).is_err());
}

#[test]
fn ass_to_com_accepts_every_aligned_morphism() {
    let c = cls("Ass->Com");
    for m in 0..=3 {
        for n in 0..=3 {
            let (a, b) = (&of_size(&c, m)[0], &of_size(&c, n)[0]);
            let hom = c.hom(a, b, None).unwrap();
            // A function with a linear order on each fibre.
            let expected = if n == 0 { usize::from(m == 0) } else { rising(n, m) };
            assert_eq!(hom.len(), expected, "{m} -> {n}");
        }
    }
}

#[test]
fn com_hom_counts() {
    let c = cls("Com->Com");
    let (a, b) = (&of_size(&c, 2)[0], &of_size(&c, 3)[0]);
    assert_eq!(c.hom(a, b, None).unwrap().len(), 9);
    for m in 0..=3 {
        for n in 0..=3 {
            let (a, b) = (&of_size(&c, m)[0], &of_size(&c, n)[0]);
            assert_eq!(c.hom(a, b, None).unwrap().len(), n.pow(m as u32));
        }
    }
}

#[test]
fn id_ass_homs_count_monotone_maps() {
    let c = cls("id:Ass");
    for m in 0..=3 {
        for n in 0..=3 {
            for a in of_size(&c, m) {
                for b in of_size(&c, n) {
                    let hom = c.hom(&a, &b, None).unwrap();
                    let expected = if n == 0 { usize::from(m == 0) } else { binomial(m + n - 1, m) };
                    assert_eq!(hom.len(), expected, "{} -> {}", c.object_label(&a), c.object_label(&b));
                }
            }
        }
    }
    let (a, b) = (&of_size(&c, 2)[1], &of_size(&c, 2)[0]);
    assert_eq!(c.hom(a, b, None).unwrap().len(), 3);
}

#[test]
fn id_ass_between_identity_objects() {
    let c = cls("id:Ass");
    let id_obj = |n: usize| ClassifierObject { colours: vec![0; n], op: Ass::op(&Permutation::identity(n)) };
    for m in 0..=3 {
        for n in 1..=3 {
            let (a, b) = (id_obj(m), id_obj(n));
            for h in FinFunction::all(m, n) {
                let decorations: Vec<Operation> =
                    (0..n).map(|k| Ass::op(&Permutation::identity(h.fibre(k).len()))).collect();
                let mor = ClassifierMorphism {
                    source: a.clone(),
                    target: b.clone(),
                    indexing: Indexing::Function(h.clone()),
                    decorations,
                };
                assert_eq!(c.validate(&mor).unwrap(), h.is_monotone(), "{h}");
            }
        }
    }
}

#[test]
fn misaligned_morphisms_are_profile_errors() {
    let c = cls("Com->Com");
    let (a, b) = (of_size(&c, 2).remove(0), of_size(&c, 1).remove(0));
    let wrong_kind = ClassifierMorphism {
        source: a.clone(),
        target: b.clone(),
        indexing: Indexing::Monotone(MonotoneMap::terminal(2)),
        decorations: Com.ops(0, 2).unwrap(),
    };
    assert!(matches!(c.validate(&wrong_kind), Err(ClassifierError::IndexingKind { .. })));
    let wrong_decoration = ClassifierMorphism {
        source: a,
        target: b,
        indexing: Indexing::Function(FinFunction::terminal(2)),
        decorations: Com.ops(0, 1).unwrap(),
    };
    assert!(matches!(c.validate(&wrong_decoration), Err(ClassifierError::Profile(_))));
}

#[test]
fn identity_is_neutral() {
    for spec in ["Ass->Com", "id:Ass", "id:AssNS"] {
        let c = cls(spec);
        for m in all_morphisms(&c, 2) {
            assert_eq!(c.compose(&c.identity(&m.source), &m).unwrap(), m, "{spec}");
            assert_eq!(c.compose(&m, &c.identity(&m.target)).unwrap(), m, "{spec}");
        }
    }
}

#[test]
fn composition_follows_functions() {
    let c = cls("Ass->Com");
    let objects = c.objects(0, 3).unwrap();
    for a in &objects {
        for b in &objects {
            for f in c.hom(a, b, None).unwrap() {
                for d in &objects {
                    for g in c.hom(b, d, None).unwrap() {
                        let gf = c.compose(&f, &g).unwrap();
                        assert!(c.validate(&gf).unwrap());
                        let expected = g.indexing.function().compose(&f.indexing.function()).unwrap();
                        assert_eq!(gf.indexing.function(), expected);
                    }
                }
            }
        }
    }
}

#[test]
fn composition_rejects_mismatched_objects() {
    let c = cls("Com->Com");
    let (a, b) = (of_size(&c, 1).remove(0), of_size(&c, 2).remove(0));
    assert!(matches!(c.compose(&c.identity(&a), &c.identity(&b)), Err(ClassifierError::ObjectMismatch(_))));
}

fn check_associativity(c: &Classifier, max: usize) {
    let objects = c.objects(0, max).unwrap();
    let homs: Vec<Vec<Vec<ClassifierMorphism>>> =
        objects.iter().map(|a| objects.iter().map(|b| c.hom(a, b, None).unwrap()).collect()).collect();
    let n = objects.len();
    for (a, b, x, d) in itertools::iproduct!(0..n, 0..n, 0..n, 0..n) {
        for f in &homs[a][b] {
            for g in &homs[b][x] {
                let gf = c.compose(f, g).unwrap();
                for h in &homs[x][d] {
                    let lhs = c.compose(&gf, h).unwrap();
                    let rhs = c.compose(f, &c.compose(g, h).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn composition_is_associative() {
    check_associativity(&cls("Com->Com"), 3);
    check_associativity(&cls("Ass->Com"), 2);
    check_associativity(&cls("id:Ass"), 2);
}

#[test]
fn tensor_with_the_unit_is_trivial() {
    let c = cls("Ass->Com");
    let u = Com.unit(0);
    for x in c.objects(0, 3).unwrap() {
        assert_eq!(c.tensor_objects(&u, std::slice::from_ref(&x)).unwrap(), x);
    }
    for m in all_morphisms(&c, 2) {
        assert_eq!(c.tensor_morphisms(&u, std::slice::from_ref(&m)).unwrap(), m);
    }
}

#[test]
fn binary_tensor_is_ordinal_sum() {
    let c = cls("Com->Com");
    let mu = Com.ops(0, 2).unwrap().remove(0);
    let ms = all_morphisms(&c, 2);
    for f in &ms {
        for g in &ms {
            let t = c.tensor_morphisms(&mu, &[f.clone(), g.clone()]).unwrap();
            assert!(c.validate(&t).unwrap());
            assert_eq!(t.indexing.function(), f.indexing.function().ordinal_sum(&g.indexing.function()));
            assert_eq!(t.source.size(), f.source.size() + g.source.size());
        }
    }
    assert!(matches!(c.tensor_objects(&mu, &[]), Err(ClassifierError::Profile(_))));
}

#[test]
fn tensor_is_functorial() {
    let c = cls("Ass->Com");
    let objects = c.objects(0, 2).unwrap();
    let mu = Com.ops(0, 2).unwrap().remove(0);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pick = |rng: &mut ChaCha8Rng| loop {
        let (a, b, d) = (objects.choose(rng).unwrap(), objects.choose(rng).unwrap(), objects.choose(rng).unwrap());
        let (fs, gs) = (c.hom(a, b, None).unwrap(), c.hom(b, d, None).unwrap());
        if let (Some(f), Some(g)) = (fs.choose(rng), gs.choose(rng)) {
            return (f.clone(), g.clone());
        }
    };
    for _ in 0..30 {
        let (f1, g1) = pick(&mut rng);
        let (f2, g2) = pick(&mut rng);
        let lhs = c.tensor_morphisms(&mu, &[c.compose(&f1, &g1).unwrap(), c.compose(&f2, &g2).unwrap()]).unwrap();
        let rhs = c
            .compose(&c.tensor_morphisms(&mu, &[f1, f2]).unwrap(), &c.tensor_morphisms(&mu, &[g1, g2]).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        assert!(c.validate(&lhs).unwrap());
    }
}

#[test]
fn trivial_symmetry_is_the_identity() {
    let c = cls("id:Ass");
    for gamma in Ass.ops(0, 2).unwrap() {
        for x in c.objects(0, 2).unwrap() {
            for y in c.objects(0, 2).unwrap() {
                let xs = [x.clone(), y];
                let s = c.symmetry(&gamma, &Action::Perm(Permutation::identity(2)), &xs).unwrap();
                assert_eq!(s, c.identity(&c.tensor_objects(&gamma, &xs).unwrap()));
            }
        }
    }
}

#[test]
fn symmetry_moves_blocks() {
    let c = cls("Com->Com");
    let mu = Com.ops(0, 2).unwrap().remove(0);
    let (x, y) = (of_size(&c, 1).remove(0), of_size(&c, 2).remove(0));
    let s = c.symmetry(&mu, &Action::Perm(Permutation::new(vec![1, 0]).unwrap()), &[x, y]).unwrap();
    assert!(c.validate(&s).unwrap());
    // Source blocks (y, x) land on target blocks (x, y).
    assert_eq!(s.indexing.function().images(), &[1, 2, 0]);
}

#[test]
fn symmetry_is_natural() {
    let c = cls("id:Ass");
    let objects = c.objects(0, 2).unwrap();
    for p in 1..=3 {
        for gamma in Ass.ops(0, p).unwrap() {
            for rho in Permutation::all(p) {
                let rho = Action::Perm(rho);
                let pr = rho.underlying_perm();
                for xs in itertools::repeat_n(objects.iter(), p).multi_cartesian_product().take(30) {
                    let xs: Vec<ClassifierObject> = xs.into_iter().cloned().collect();
                    let ms: Vec<ClassifierMorphism> =
                        xs.iter().map(|x| c.hom(x, x, None).unwrap().into_iter().last().unwrap()).collect();
                    let ys: Vec<ClassifierObject> = ms.iter().map(|m| m.target.clone()).collect();
                    let gamma_rho = Ass.act(&gamma, &rho).unwrap();
                    let permuted: Vec<ClassifierMorphism> = (0..p).map(|k| ms[pr.apply(k)].clone()).collect();
                    let top = c.tensor_morphisms(&gamma_rho, &permuted).unwrap();
                    let lhs = c.compose(&top, &c.symmetry(&gamma, &rho, &ys).unwrap()).unwrap();
                    let rhs = c
                        .compose(&c.symmetry(&gamma, &rho, &xs).unwrap(), &c.tensor_morphisms(&gamma, &ms).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs);
                    assert!(c.validate(&lhs).unwrap());
                }
            }
        }
    }
}

#[test]
fn symmetry_spot_check() {
    let c = cls("id:Ass");
    let gamma = Ass::op(&Permutation::identity(3));
    let xs: Vec<ClassifierObject> = [1usize, 1, 2].iter().map(|&n| of_size(&c, n).remove(0)).collect();
    let rho = Action::Perm(Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap());
    let s = c.symmetry(&gamma, &rho, &xs).unwrap();
    assert!(c.validate(&s).unwrap());
    // Source blocks (x1, x2, x0) of sizes (1, 2, 1) move back to (x0, x1, x2).
    assert_eq!(s.indexing.function().images(), &[1, 2, 3, 0]);
    let gamma_rho = Ass.act(&gamma, &rho).unwrap();
    let permuted = [xs[1].clone(), xs[2].clone(), xs[0].clone()];
    assert_eq!(s.source, c.tensor_objects(&gamma_rho, &permuted).unwrap());
}

#[test]
fn universal_algebra_laws() {
    for spec in ["Com->Com", "id:AssNS", "Ass->Com", "id:Ass"] {
        let c = cls(spec);
        let s = c.morphism().source().clone();
        let unit = &c.universal_algebra().objects[0];
        let eta = c.structure_morphism(&s.unit(0)).unwrap();
        assert_eq!(eta, c.identity(unit), "{spec}");
        let ops: Vec<Operation> = (0..=2).flat_map(|n| s.ops(0, n).unwrap()).collect();
        for alpha in &ops {
            assert!(c.validate(&c.structure_morphism(alpha).unwrap()).unwrap());
            let pools = vec![ops.clone(); alpha.arity()];
            for betas in opclass::operads::cartesian(&pools) {
                assert!(c.algebra_law_holds(alpha, &betas).unwrap(), "{spec}: {}", s.op_label(alpha));
            }
        }
    }
}

#[test]
fn braided_homs() {
    let c = cls("BCom->BCom");
    let (one, two) = (of_size(&c, 1).remove(0), of_size(&c, 2).remove(0));
    for len in 0..=4 {
        assert_eq!(c.hom(&two, &one, Some(len)).unwrap().len(), 1);
        // Powers of the generator on the bijection, plus two collapsing maps.
        let hom = c.hom(&two, &two, Some(len)).unwrap();
        assert_eq!(hom.len(), 2 * len + 3);
        for m in &hom {
            assert!(c.validate(m).unwrap());
        }
    }
    let twist = Vine::from_braid(&opclass::braids::BraidWord::new(2, vec![1]).unwrap());
    let m = ClassifierMorphism {
        source: two.clone(),
        target: two.clone(),
        indexing: Indexing::Vine(twist),
        decorations: vec![c.morphism().source().unit(0); 2],
    };
    let mm = c.compose(&m, &m).unwrap();
    assert!(c.validate(&mm).unwrap());
    assert_eq!(mm.indexing.function(), FinFunction::identity(2));
    assert!(!mm.indexing.is_monotone());
    assert!(matches!(classifier_category(&c, 0, 2), Err(ClassifierError::Unbounded)));
}

#[test]
fn braided_to_symmetric_is_rejected() {
    let f = morphism_from_spec("BCom->Com").unwrap();
    assert!(matches!(Classifier::new(f), Err(ClassifierError::FlavourMismatch(..))));
    let g = OperadMorphism::new("id", Arc::new(Com), Arc::new(Com), vec![0], |_, o| Ok(o.clone())).unwrap();
    assert!(Classifier::new(g).is_ok());
}

#[test]
fn actions_from_words() {
    let a = action_from_word(Flavour::Symmetric, 3, &[1, 2]).unwrap();
    assert!(matches!(a, Action::Perm(_)));
    let b = action_from_word(Flavour::Braided, 3, &[1, -2]).unwrap();
    assert!(matches!(b, Action::Braid(_)));
    assert!(action_from_word(Flavour::Braided, 2, &[3]).is_err());
}

#[test]
fn category_of_com() {
    let c = cls("Com->Com");
    let cat = classifier_category(&c, 0, 3).unwrap();
    let counts = cat.category.hom_counts();
    for (m, row) in counts.iter().enumerate() {
        for (n, &k) in row.iter().enumerate() {
            assert_eq!(k, n.pow(m as u32));
        }
    }
    for f in 0..cat.morphisms.len() {
        assert_eq!(cat.index_of(&cat.morphisms[f]), Some(f));
    }
    assert_eq!(cat.object_index(&cat.objects[2]), Some(2));
    cat.category.check_associativity().unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn composites_validate(seed in any::<u64>()) {
        let c = cls("id:Ass");
        let objects = c.objects(0, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, d) = (objects.choose(&mut rng).unwrap(), objects.choose(&mut rng).unwrap(), objects.choose(&mut rng).unwrap());
        let (fs, gs) = (c.hom(a, b, None).unwrap(), c.hom(b, d, None).unwrap());
        if let (Some(f), Some(g)) = (fs.choose(&mut rng), gs.choose(&mut rng)) {
            let gf = c.compose(f, g).unwrap();
            prop_assert!(c.validate(&gf).unwrap());
            prop_assert!(c.hom(a, d, None).unwrap().contains(&gf));
        }
    }
}
