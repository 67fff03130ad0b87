use std::collections::HashMap;

use opclass::braids::{
    braid_block_substitute, braid_cable, braid_compose, braid_eq, braid_nf, braid_restrict, render_diagram,
    underlying_perm, vine_compose, vine_normalize, vine_underlying_fn, BraidError, BraidWord, Vine,
};
use opclass::finmaps::block_substitute;
use opclass::{BlockProfile, FinFunction, MonotoneMap, Permutation};
use proptest::prelude::*;

fn w(n: usize, letters: &[i32]) -> BraidWord {
    BraidWord::new(n, letters.to_vec()).unwrap()
}

/// Reduced words in the free group on `x_1, ..., x_n`; letter `±i` is `x_i^{±1}`.
fn reduce(word: impl IntoIterator<Item = i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn invert(word: &[i32]) -> Vec<i32> {
    word.iter().rev().map(|l| -l).collect()
}

/// Image of a free-group word under the Artin automorphism of one letter.
fn artin_letter(letter: i32, word: &[i32]) -> Vec<i32> {
    let i = letter.abs();
    let image = |x: i32| -> Vec<i32> {
        match (letter > 0, x) {
            (true, x) if x == i => vec![i, i + 1, -i],
            (true, x) if x == i + 1 => vec![i],
            (false, x) if x == i => vec![i + 1],
            (false, x) if x == i + 1 => vec![-(i + 1), i, i + 1],
            (_, x) => vec![x],
        }
    };
    reduce(word.iter().flat_map(|&l| if l > 0 { image(l) } else { invert(&image(-l)) }))
}

/// The automorphism of the free group attached to a braid word, as the
/// images of the generators. The action is faithful, so two words are equal
/// braids exactly when these agree.
fn artin(b: &BraidWord) -> Vec<Vec<i32>> {
    (1..=b.strands() as i32).map(|x| b.letters().iter().rev().fold(vec![x], |acc, &l| artin_letter(l, &acc))).collect()
}

fn all_words(n: usize, max_len: usize) -> Vec<BraidWord> {
    let gens: Vec<i32> = (1..n as i32).flat_map(|g| [g, -g]).collect();
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|p: &Vec<i32>| {
                gens.iter().map(move |&g| {
                    let mut v = p.clone();
                    v.push(g);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out.into_iter().map(|l| w(n, &l)).collect()
}

#[test]
fn invalid_letters_are_rejected() {
    assert_eq!(BraidWord::new(3, vec![0]), Err(BraidError::ZeroGenerator));
    assert_eq!(BraidWord::new(3, vec![3]), Err(BraidError::GeneratorOutOfRange { generator: 3, strands: 3 }));
    assert!(braid_compose(&w(2, &[]), &w(3, &[])).is_err());
}

#[test]
fn composition_examples() {
    let e = BraidWord::identity(3);
    assert_eq!(braid_compose(&e, &e).unwrap(), e);
    assert!(braid_nf(&w(2, &[1, -1])).is_identity());
    assert!(braid_eq(&w(3, &[1, 2, 1]), &w(3, &[2, 1, 2])));
}

#[test]
fn normal_form_examples() {
    assert!(braid_nf(&BraidWord::identity(4)).is_identity());
    assert_eq!(braid_nf(&w(3, &[1, 2, 1])), braid_nf(&w(3, &[2, 1, 2])));
    assert_eq!(braid_nf(&w(4, &[1, 3])), braid_nf(&w(4, &[3, 1])));
    assert_ne!(braid_nf(&w(3, &[1, 2])), braid_nf(&w(3, &[2, 1])));
    let nf = braid_nf(&w(3, &[1, 2, 1]));
    assert_eq!((nf.delta_power(), nf.factors().len()), (1, 0));
}

#[test]
fn normal_form_agrees_with_free_group_action() {
    for n in [2, 3] {
        let words = all_words(n, 4);
        let mut by_action: HashMap<Vec<Vec<i32>>, Vec<usize>> = HashMap::new();
        let mut by_nf: HashMap<_, Vec<usize>> = HashMap::new();
        for (i, b) in words.iter().enumerate() {
            by_action.entry(artin(b)).or_default().push(i);
            by_nf.entry(braid_nf(b)).or_default().push(i);
        }
        let mut a: Vec<Vec<usize>> = by_action.into_values().collect();
        let mut b: Vec<Vec<usize>> = by_nf.into_values().collect();
        a.sort();
        b.sort();
        assert_eq!(a, b, "{n} strands");
    }
}

#[test]
fn underlying_perm_examples() {
    assert!(underlying_perm(&BraidWord::identity(3)).is_identity());
    assert_eq!(underlying_perm(&w(2, &[1])), Permutation::from_one_based(&[2, 1]).unwrap());
    // σ_2 acts first: strand 1 ends at 2, strand 2 at 3, strand 3 at 1.
    assert_eq!(underlying_perm(&w(3, &[1, 2])).one_based(), vec![2, 3, 1]);
}

#[test]
fn cable_examples() {
    assert!(braid_cable(&BraidWord::identity(2), &BlockProfile(vec![3, 1])).unwrap().is_empty());
    let c = braid_cable(&w(2, &[1]), &BlockProfile(vec![2, 1])).unwrap();
    assert_eq!(c.strands(), 3);
    let swap = Permutation::from_one_based(&[2, 1]).unwrap();
    let want = block_substitute(&swap, &[Permutation::identity(2), Permutation::identity(1)]).unwrap();
    assert_eq!(c.underlying_perm(), want);
    assert_eq!(c.exponent_sum(), 2);
    let x = w(3, &[1, -2, 1]);
    assert!(braid_eq(&braid_cable(&x, &BlockProfile(vec![1, 1, 1])).unwrap(), &x));
    assert!(braid_cable(&x, &BlockProfile(vec![1, 1])).is_err());
}

#[test]
fn block_substitution_covers_permutations() {
    for n in 1..=3 {
        for outer in all_words(n, 3) {
            for sizes in [vec![1; n], (0..n).map(|k| k % 3).collect::<Vec<_>>(), vec![2; n]] {
                let blocks: Vec<BraidWord> = sizes
                    .iter()
                    .enumerate()
                    .map(
                        |(k, &s)| {
                            if s >= 2 {
                                w(s, &[if k % 2 == 0 { 1 } else { -1 }])
                            } else {
                                BraidWord::identity(s)
                            }
                        },
                    )
                    .collect();
                let sub = braid_block_substitute(&outer, &blocks).unwrap();
                let perms: Vec<Permutation> = blocks.iter().map(BraidWord::underlying_perm).collect();
                assert_eq!(sub.underlying_perm(), block_substitute(&outer.underlying_perm(), &perms).unwrap());
                let identities: Vec<BraidWord> = sizes.iter().map(|&s| BraidWord::identity(s)).collect();
                assert_eq!(
                    braid_block_substitute(&outer, &identities).unwrap(),
                    braid_cable(&outer, &BlockProfile(sizes.clone())).unwrap()
                );
            }
        }
    }
    let e = braid_block_substitute(&BraidWord::identity(2), &[BraidWord::identity(2), BraidWord::identity(1)]).unwrap();
    assert!(braid_nf(&e).is_identity());
}

#[test]
fn restriction_examples() {
    let x = w(3, &[1, 2]);
    assert_eq!(braid_restrict(&x, &[0, 1, 2]).unwrap(), x);
    assert!(braid_eq(&braid_restrict(&x, &[0, 2]).unwrap(), &w(2, &[1])));
    assert!(braid_restrict(&x, &[1, 2]).unwrap().is_empty());
    assert!(braid_restrict(&x, &[3]).is_err());
    let profile = BlockProfile(vec![2, 3]);
    let c = braid_cable(&w(2, &[1, 1, -1, 1]), &profile).unwrap();
    let ends = c.underlying_perm();
    for (start, size) in [(0, 2), (2, 3)] {
        let keep: Vec<usize> = (start..start + size).map(|s| ends.apply(s)).collect();
        assert!(braid_nf(&braid_restrict(&c, &keep).unwrap()).is_identity());
    }
}

#[test]
fn vine_normalization_examples() {
    let trivial = vine_normalize(&w(3, &[2]), &MonotoneMap::new(vec![1, 1, 1])).unwrap();
    assert_eq!(trivial.braid_word(), w(3, &[2]));
    let merge = MonotoneMap::terminal(2);
    let twice = vine_normalize(&w(2, &[1, 1]), &merge).unwrap();
    let once = vine_normalize(&w(2, &[1]), &merge).unwrap();
    assert!(twice.braid().is_identity());
    assert!(once.braid().is_identity());
    assert_eq!(twice, Vine::from_monotone(&merge));
    assert!(vine_normalize(&w(2, &[1]), &MonotoneMap::terminal(3)).is_err());
}

#[test]
fn vine_composition_examples() {
    let v = vine_normalize(&w(3, &[1, -2]), &MonotoneMap::new(vec![1, 2])).unwrap();
    assert_eq!(vine_compose(&Vine::identity(3), &v).unwrap(), v);
    assert_eq!(vine_compose(&v, &Vine::identity(2)).unwrap(), v);
    let to_point = |m: usize, word: &[i32]| vine_normalize(&w(m, word), &MonotoneMap::terminal(m)).unwrap();
    let a = vine_compose(&v, &to_point(2, &[1, 1, 1])).unwrap();
    let b = to_point(3, &[2, -1]);
    assert_eq!(a, b);
    assert!(vine_compose(&v, &Vine::identity(3)).is_err());
}

#[test]
fn vine_underlying_examples() {
    for n in 0..4 {
        assert_eq!(vine_underlying_fn(&Vine::identity(n)), FinFunction::identity(n));
    }
    assert_eq!(vine_underlying_fn(&Vine::from_monotone(&MonotoneMap::terminal(2))), FinFunction::terminal(2));
    let v = Vine::from_braid(&w(2, &[1]));
    assert_eq!(vine_underlying_fn(&v), Permutation::from_one_based(&[2, 1]).unwrap().to_function());
}

#[test]
fn serde_round_trips() {
    let b = w(3, &[1, -2]);
    let text = serde_json::to_string(&b).unwrap();
    assert_eq!(text, r#"{"strands":3,"word":[1,-2]}"#);
    assert_eq!(serde_json::from_str::<BraidWord>(&text).unwrap(), b);
    assert!(serde_json::from_str::<BraidWord>(r#"{"strands":2,"word":[2]}"#).is_err());
    let v = vine_normalize(&w(3, &[1, -2, 1]), &MonotoneMap::new(vec![2, 1])).unwrap();
    let back: Vine = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(back, v);
}

#[test]
fn diagrams_mark_crossings() {
    let d = render_diagram(&w(3, &[1, -2])).unwrap();
    assert!(d.lines().count() > 1);
    assert!(render_diagram(&w(2, &vec![1; 500])).is_none());
}

fn word(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |n| {
        prop::collection::vec((1..n as i32, any::<bool>()), 0..=max_len)
            .prop_map(move |ls| w(n, &ls.iter().map(|&(g, s)| if s { g } else { -g }).collect::<Vec<_>>()))
    })
}

fn word_pair(max_strands: usize, max_len: usize) -> impl Strategy<Value = (BraidWord, BraidWord)> {
    (2..=max_strands).prop_flat_map(move |n| {
        let one = prop::collection::vec((1..n as i32, any::<bool>()), 0..=max_len)
            .prop_map(move |ls| w(n, &ls.iter().map(|&(g, s)| if s { g } else { -g }).collect::<Vec<_>>()));
        (one.clone(), one)
    })
}

fn vine(m: usize, n: usize) -> impl Strategy<Value = Vine> {
    let braid = if m < 2 {
        Just(BraidWord::identity(m)).boxed()
    } else {
        prop::collection::vec((1..m as i32, any::<bool>()), 0..=6)
            .prop_map(move |ls| w(m, &ls.iter().map(|&(g, s)| if s { g } else { -g }).collect::<Vec<_>>()))
            .boxed()
    };
    let fibres = prop::collection::vec(0..n.max(1), m).prop_map(move |targets| {
        let mut fibres = vec![0; n];
        for t in targets {
            fibres[t] += 1;
        }
        MonotoneMap::new(fibres)
    });
    (braid, fibres).prop_map(|(b, f)| vine_normalize(&b, &f).unwrap())
}

fn composable_vines() -> impl Strategy<Value = (Vine, Vine, Vine)> {
    (0..=4usize, 1..=4usize, 1..=4usize, 1..=4usize).prop_flat_map(|(a, b, c, d)| (vine(a, b), vine(b, c), vine(c, d)))
}

proptest! {
    #[test]
    fn normal_form_is_canonical(b in word(5, 10)) {
        let nf = braid_nf(&b);
        prop_assert_eq!(braid_nf(&nf.to_word()), nf.clone());
        prop_assert_eq!(artin(&nf.to_word()), artin(&b));
        prop_assert!(braid_nf(&braid_compose(&b, &b.inverse()).unwrap()).is_identity());
    }

    #[test]
    fn equality_matches_free_group_action((a, b) in word_pair(4, 5)) {
        prop_assert_eq!(braid_eq(&a, &b), artin(&a) == artin(&b));
    }

    #[test]
    fn underlying_perm_is_a_homomorphism((a, b) in word_pair(5, 8)) {
        let ab = braid_compose(&a, &b).unwrap();
        prop_assert_eq!(ab.underlying_perm(), a.underlying_perm().compose(&b.underlying_perm()).unwrap());
    }

    #[test]
    fn equal_braids_share_invariants((a, b) in word_pair(3, 4)) {
        if braid_eq(&a, &b) {
            prop_assert_eq!(a.underlying_perm(), b.underlying_perm());
            prop_assert_eq!(a.exponent_sum(), b.exponent_sum());
        }
    }

    #[test]
    fn cable_of_product_is_product_of_cables((a, b) in word_pair(4, 5), sizes in prop::collection::vec(0..3usize, 4)) {
        let profile = BlockProfile(sizes[..a.strands()].to_vec());
        let moved: Vec<usize> = {
            let p = b.underlying_perm();
            let mut v = vec![0; a.strands()];
            for k in 0..a.strands() {
                v[p.apply(k)] = profile.sizes()[k];
            }
            v
        };
        let lhs = braid_cable(&braid_compose(&a, &b).unwrap(), &profile).unwrap();
        let rhs = braid_compose(&braid_cable(&a, &BlockProfile(moved)).unwrap(), &braid_cable(&b, &profile).unwrap()).unwrap();
        prop_assert!(braid_eq(&lhs, &rhs));
    }

    #[test]
    fn vine_normalization_is_idempotent(v in (0..=5usize, 1..=4usize).prop_flat_map(|(m, n)| vine(m, n))) {
        prop_assert_eq!(vine_normalize(&v.braid_word(), v.monotone()).unwrap(), v);
    }

    #[test]
    fn vine_composition_is_associative((v1, v2, v3) in composable_vines()) {
        let left = vine_compose(&vine_compose(&v1, &v2).unwrap(), &v3).unwrap();
        let right = vine_compose(&v1, &vine_compose(&v2, &v3).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn underlying_function_is_functorial((v1, v2, _) in composable_vines()) {
        let fused = vine_underlying_fn(&vine_compose(&v1, &v2).unwrap());
        prop_assert_eq!(fused, vine_underlying_fn(&v2).compose(&vine_underlying_fn(&v1)).unwrap());
    }

    #[test]
    fn vines_to_a_point_coincide(v in (0..=5usize).prop_flat_map(|m| vine(m, 1))) {
        prop_assert_eq!(v.clone(), Vine::from_monotone(&MonotoneMap::terminal(v.source())));
    }
}
