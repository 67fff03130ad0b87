//! Named verification suites with timed pass/fail reports.
//!
//! Each suite rebuilds its inputs from scratch and compares them against
//! closed forms or exhaustive searches. Random samples use fixed seeds.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::braids::{braid_eq, braid_nf, vine_compose, vine_normalize, vine_underlying_fn, BraidWord, Vine};
use crate::classifier::{classifier_category, Classifier, ClassifierMorphism, ClassifierObject, Indexing};
use crate::codescent::{
    bar_build, check_crossed_axioms, check_delta_law, check_isomorphism, pi0_codescent, quotient_identify_isos,
    BarConstruction, Codescent,
};
use crate::finmaps::{block_decompose, block_substitute, BlockProfile, FinFunction, MonotoneMap, Permutation};
use crate::operads::{builtin_operad, check_operad_axioms, morphism_from_spec};

pub const SUITES: &[&str] =
    &["smc", "deltaplus", "equivalence", "assass", "idempotent", "vines", "noncatead", "axioms", "braids", "all"];

/// Saturation budget for iso quotients.
const QUOTIENT_PASSES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?}; available suites: {suites}", suites = SUITES.join(", "))]
    UnknownSuite(String),
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn elapsed(&self) -> Duration {
        self.checks.iter().map(|c| c.elapsed).sum()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "{status}  {}  ({:.2} s)", c.name, c.elapsed.as_secs_f64())?;
            if !c.detail.is_empty() {
                write!(f, "  {}", c.detail)?;
            }
            writeln!(f)?;
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        write!(
            f,
            "suite {}: {passed}/{} checks passed in {:.2} s",
            self.suite,
            self.checks.len(),
            self.elapsed().as_secs_f64()
        )
    }
}

type Outcome = std::result::Result<String, String>;

fn timed(name: &str, check: impl FnOnce() -> Outcome) -> CheckOutcome {
    let start = Instant::now();
    let result = check();
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckOutcome { name: name.to_string(), passed, detail, elapsed }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Runs a named suite.
pub fn run_suite(name: &str) -> std::result::Result<SuiteReport, VerifyError> {
    let checks = match name {
        "smc" => smc(),
        "deltaplus" => deltaplus(),
        "equivalence" => equivalence(),
        "assass" => assass(),
        "idempotent" => idempotent(),
        "vines" => vines(),
        "noncatead" => noncatead(),
        "axioms" => axioms(),
        "braids" => braids(),
        "all" => SUITES[..SUITES.len() - 1].iter().flat_map(|s| run_suite(s).expect("listed suite").checks).collect(),
        other => return Err(VerifyError::UnknownSuite(other.to_string())),
    };
    Ok(SuiteReport { suite: name.to_string(), checks })
}

pub fn classifier(spec: &str) -> std::result::Result<Classifier, String> {
    Classifier::new(morphism_from_spec(spec).map_err(err)?).map_err(err)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Number of order-preserving maps `m -> n`.
pub fn monotone_count(m: usize, n: usize) -> usize {
    if n == 0 {
        usize::from(m == 0)
    } else {
        binomial(m + n - 1, m)
    }
}

/// The codescent category of a bar construction with the underlying
/// function of each arrow.
fn codescent_functions(
    spec: &str,
    bound: usize,
) -> std::result::Result<(BarConstruction, Codescent, Vec<FinFunction>), String> {
    let cls = classifier(spec)?;
    let bar = bar_build(&cls, 0, bound).map_err(err)?;
    let q = pi0_codescent(&bar.double).map_err(err)?;
    q.check_factorization().map_err(err)?;
    let functions = q
        .representatives
        .iter()
        .map(|&c| bar.corner_morphism(c).map(|m| m.indexing.function()))
        .collect::<std::result::Result<_, _>>()
        .map_err(err)?;
    Ok((bar, q, functions))
}

/// Hom counts against `expected`, hom-sets against the functions accepted
/// by `keep`, and composition against function composition.
fn matches_functions(
    spec: &str,
    bound: usize,
    expected: impl Fn(usize, usize) -> usize,
    keep: impl Fn(&FinFunction) -> bool,
) -> Outcome {
    let (bar, q, functions) = codescent_functions(spec, bound)?;
    let c = &q.category;
    let sizes: Vec<usize> = bar.objects.iter().map(ClassifierObject::size).collect();
    for a in 0..c.n_objects() {
        for b in 0..c.n_objects() {
            let (m, n) = (sizes[a], sizes[b]);
            let hom = c.hom(a, b);
            if hom.len() != expected(m, n) {
                return Err(format!("|hom({m},{n})| = {}, expected {}", hom.len(), expected(m, n)));
            }
            let mut seen: Vec<&FinFunction> = hom.iter().map(|&f| &functions[f]).collect();
            if let Some(f) = seen.iter().find(|f| !keep(f)) {
                return Err(format!("arrow {m} -> {n} has underlying function {f}, outside the expected class"));
            }
            seen.sort();
            seen.dedup();
            if seen.len() != hom.len() {
                return Err(format!("two arrows {m} -> {n} share an underlying function"));
            }
        }
    }
    for f in 0..c.n_arrows() {
        let b = c.arrow(f).target;
        for x in 0..c.n_objects() {
            for &g in c.hom(b, x) {
                let want = functions[g].compose(&functions[f]).map_err(err)?;
                if functions[c.compose(g, f)] != want {
                    return Err(format!("composite of {} after {} is not {want}", functions[g], functions[f]));
                }
            }
        }
    }
    Ok(format!("{} objects, {} arrows", c.n_objects(), c.n_arrows()))
}

fn smc() -> Vec<CheckOutcome> {
    vec![timed("commutative bar, sizes <= 4: arrows are all functions", || {
        matches_functions("Com->Com", 4, |m, n| n.pow(m as u32), |_| true)
    })]
}

fn deltaplus() -> Vec<CheckOutcome> {
    vec![timed("nonsymmetric bar, sizes <= 4: arrows are monotone maps", || {
        matches_functions("AssNS->AssNS", 4, monotone_count, FinFunction::is_monotone)
    })]
}

/// Builds the isomorphism from the codescent category of the bar
/// construction to the bounded classifier category.
pub fn codescent_matches_classifier(spec: &str, bound: usize) -> Outcome {
    let cls = classifier(spec)?;
    let bar = bar_build(&cls, 0, bound).map_err(err)?;
    let q = pi0_codescent(&bar.double).map_err(err)?;
    let cc = classifier_category(&cls, 0, bound).map_err(err)?;
    if bar.objects != cc.objects {
        return Err("object lists differ".into());
    }
    let objects: Vec<usize> = (0..cc.objects.len()).collect();
    let arrows = q
        .representatives
        .iter()
        .map(|&c| {
            let m = bar.corner_morphism(c).map_err(err)?;
            cc.index_of(&m).ok_or_else(|| format!("corner {} is not a classifier morphism", cls.morphism_label(&m)))
        })
        .collect::<std::result::Result<Vec<_>, String>>()?;
    check_isomorphism(&q.category, &cc.category, &objects, &arrows).map_err(err)?;
    Ok(format!("{} objects, {} arrows", objects.len(), arrows.len()))
}

fn equivalence() -> Vec<CheckOutcome> {
    ["id:Com", "Ass->Com", "id:Ass", "id:AssNS"]
        .iter()
        .map(|spec| {
            timed(&format!("codescent of {spec} equals its classifier, sizes <= 3"), || {
                codescent_matches_classifier(spec, 3)
            })
        })
        .collect()
}

fn assass() -> Vec<CheckOutcome> {
    let start = Instant::now();
    let cc = classifier("id:Ass").and_then(|cls| classifier_category(&cls, 0, 4).map_err(err));
    let cc = match cc {
        Ok(cc) => cc,
        Err(e) => return vec![timed("associative classifier, sizes <= 4", || Err(e))],
    };
    let by_size = |n: usize| -> Vec<usize> { (0..cc.objects.len()).filter(|&a| cc.objects[a].size() == n).collect() };
    let mut out = Vec::new();
    out.push(timed("objects of arity n number n!", || {
        for n in 0..=4 {
            if by_size(n).len() != factorial(n) {
                return Err(format!("{} objects of arity {n}", by_size(n).len()));
            }
        }
        Ok(String::new())
    }));
    out[0].elapsed = start.elapsed();
    out.push(timed("exactly one morphism between arity-n objects (all morphisms)", || {
        let mut worst = Vec::new();
        for n in 0..=4 {
            let counts: Vec<usize> = by_size(n)
                .iter()
                .flat_map(|&a| by_size(n).into_iter().map(move |b| (a, b)))
                .map(|(a, b)| cc.category.hom(a, b).len())
                .collect();
            let max = counts.iter().copied().max().unwrap_or(0);
            let min = counts.iter().copied().min().unwrap_or(0);
            if (min, max) != (1, 1) {
                worst.push(format!("arity {n}: {min}..{max}"));
            }
        }
        if worst.is_empty() {
            Ok(String::new())
        } else {
            Err(format!(
                "hom-set sizes between arity-n objects are {}; non-bijective endomaps with nullary decorations exist",
                worst.join(", ")
            ))
        }
    }));
    out.push(timed("exactly one invertible morphism between arity-n objects", || {
        for n in 0..=4 {
            for &a in &by_size(n) {
                for &b in &by_size(n) {
                    let isos = cc.category.hom(a, b).iter().filter(|&&f| cc.category.inverse(f).is_some()).count();
                    if isos != 1 {
                        return Err(format!(
                            "{isos} isomorphisms {} -> {}",
                            cc.category.objects()[a],
                            cc.category.objects()[b]
                        ));
                    }
                }
            }
        }
        Ok(String::new())
    }));
    out.push(timed("identifying isomorphisms leaves the monotone maps", || {
        let iq = quotient_identify_isos(&cc.category, QUOTIENT_PASSES).map_err(err)?;
        let sizes: Vec<usize> = iq.representatives.iter().map(|&r| cc.objects[r].size()).collect();
        compare_counts(&iq.category.hom_counts(), &sizes, monotone_count)?;
        Ok(format!("{} passes", iq.passes))
    }));
    out
}

fn compare_counts(
    counts: &[Vec<usize>],
    sizes: &[usize],
    expected: impl Fn(usize, usize) -> usize,
) -> std::result::Result<(), String> {
    let mut bad = Vec::new();
    for (a, row) in counts.iter().enumerate() {
        for (b, &k) in row.iter().enumerate() {
            let want = expected(sizes[a], sizes[b]);
            if k != want {
                bad.push(format!("|hom({},{})| = {k}, expected {want}", sizes[a], sizes[b]));
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad.join("; "))
    }
}

/// Zero arrows from a nonempty object to the empty one, one otherwise.
pub fn idempotent_count(m: usize, n: usize) -> usize {
    usize::from(m == 0 || n > 0)
}

/// A morphism of the `Ass -> Com` classifier between objects of a single
/// colour, decorated by the first operation of each fibre's arity.
pub fn plain_morphism(cls: &Classifier, h: FinFunction) -> std::result::Result<ClassifierMorphism, String> {
    let object = |n: usize| -> std::result::Result<ClassifierObject, String> {
        let op = cls.target().ops(0, n).map_err(err)?.into_iter().next().ok_or("no target operation")?;
        cls.object(vec![0; n], op).map_err(err)
    };
    let decorations = h
        .fibre_sizes()
        .iter()
        .map(|&k| {
            cls.source().ops(0, k).map_err(err)?.into_iter().next().ok_or_else(|| format!("no operation of arity {k}"))
        })
        .collect::<std::result::Result<_, _>>()?;
    let m = ClassifierMorphism {
        source: object(h.source())?,
        target: object(h.target())?,
        indexing: Indexing::Function(h),
        decorations,
    };
    cls.check(&m).map_err(err)?;
    Ok(m)
}

/// `d ∘ c = 1_n` and `d ∘ σ ∘ c` is constant, for the bottom inclusion
/// `c: n -> n+n`, the half swap `σ` and the retraction `d` collapsing the
/// top half onto the last element. Any functor killing isomorphisms
/// therefore identifies `1_n` with a non-bijective map, through an object
/// of size `2n`.
pub fn collapse_through_double(cls: &Classifier, n: usize) -> std::result::Result<(), String> {
    let bottom = FinFunction::new((0..n).collect(), 2 * n).map_err(err)?;
    let swap = FinFunction::new((0..2 * n).map(|i| (i + n) % (2 * n)).collect(), 2 * n).map_err(err)?;
    let retract = FinFunction::new((0..2 * n).map(|i| i.min(n - 1)).collect(), n).map_err(err)?;
    let (c, s, d) = (plain_morphism(cls, bottom)?, plain_morphism(cls, swap)?, plain_morphism(cls, retract)?);
    let dc = cls.compose(&c, &d).map_err(err)?;
    if dc != cls.identity(&c.source) {
        return Err(format!("retraction after inclusion is {}", cls.morphism_label(&dc)));
    }
    let dsc = cls.compose(&cls.compose(&c, &s).map_err(err)?, &d).map_err(err)?;
    if dsc.indexing.function().images().iter().any(|&i| i != n - 1) {
        return Err(format!("swapped composite is {}", cls.morphism_label(&dsc)));
    }
    Ok(())
}

fn idempotent() -> Vec<CheckOutcome> {
    let bound = 4;
    let start = Instant::now();
    let built = classifier("Ass->Com").and_then(|cls| {
        let cc = classifier_category(&cls, 0, bound).map_err(err)?;
        let iq = quotient_identify_isos(&cc.category, QUOTIENT_PASSES).map_err(err)?;
        Ok((cls, cc, iq))
    });
    let (cls, cc, iq) = match built {
        Ok(x) => x,
        Err(e) => return vec![timed("monoid-to-commutative classifier, sizes <= 4", || Err(e))],
    };
    let sizes: Vec<usize> = iq.representatives.iter().map(|&r| cc.objects[r].size()).collect();
    let counts = iq.category.hom_counts();
    let mut out = Vec::new();
    out.push(timed("iso quotient, sizes <= 4: empty from nonempty to 0, singleton otherwise", || {
        compare_counts(&counts, &sizes, idempotent_count)?;
        Ok(format!("{} passes", iq.passes))
    }));
    out[0].elapsed = start.elapsed();
    out.push(timed("iso quotient, sizes <= 3 inside the size-4 truncation", || {
        let inner: Vec<usize> = (0..sizes.len()).filter(|&a| sizes[a] < bound).collect();
        let sub: Vec<Vec<usize>> = inner.iter().map(|&a| inner.iter().map(|&b| counts[a][b]).collect()).collect();
        let sub_sizes: Vec<usize> = inner.iter().map(|&a| sizes[a]).collect();
        compare_counts(&sub, &sub_sizes, idempotent_count)?;
        Ok(String::new())
    }));
    out.push(timed("size-4 endomorphisms split into bijections and the rest", || {
        let top = sizes.iter().position(|&s| s == bound).ok_or("no object of the top size")?;
        let rep = iq.representatives[top];
        let hom = cc.category.hom(rep, rep);
        let class_of = |f: usize| iq.arrow_image(&cc.category, f);
        let id_class = class_of(cc.category.identity(rep));
        for &f in hom {
            let bijective = cc.morphisms[f].indexing.is_bijective();
            if bijective != (class_of(f) == id_class) {
                return Err(format!("{} is in the wrong class", cls.morphism_label(&cc.morphisms[f])));
            }
        }
        Ok(format!("{} endomorphisms", hom.len()))
    }));
    out.push(timed("identity on 4 meets a constant map through size 8", || {
        collapse_through_double(&cls, bound)?;
        Ok(String::new())
    }));
    out
}

pub fn random_word(rng: &mut impl Rng, strands: usize, max_len: usize) -> BraidWord {
    let len = rng.random_range(0..=max_len);
    let letters = if strands < 2 {
        Vec::new()
    } else {
        (0..len)
            .map(|_| {
                let g = rng.random_range(1..strands as i32);
                if rng.random_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect()
    };
    BraidWord::new(strands, letters).expect("letters in range")
}

pub fn random_monotone(rng: &mut impl Rng, m: usize, n: usize) -> MonotoneMap {
    let mut fibres = vec![0; n];
    if n > 0 {
        for _ in 0..m {
            fibres[rng.random_range(0..n)] += 1;
        }
    }
    MonotoneMap::new(fibres)
}

pub fn random_vine(rng: &mut impl Rng, m: usize, n: usize, max_len: usize) -> Vine {
    vine_normalize(&random_word(rng, m, max_len), &random_monotone(rng, m, n)).expect("matching arities")
}

fn vines() -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    out.push(timed("normalization is idempotent on 200 raw pairs", || {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..200 {
            let m = rng.random_range(0..=5);
            let n = if m == 0 { rng.random_range(0..=2) } else { rng.random_range(1..=5) };
            let (w, f) = (random_word(&mut rng, m, 6), random_monotone(&mut rng, m, n));
            let v = vine_normalize(&w, &f).map_err(err)?;
            let again = vine_normalize(&v.braid_word(), v.monotone()).map_err(err)?;
            if again != v {
                return Err(format!("{w:?} over {f}: {v} then {again}"));
            }
        }
        Ok(String::new())
    }));
    out.push(timed("all vines to 1 coincide", || {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for m in 0..=5 {
            let merge = Vine::from_monotone(&MonotoneMap::terminal(m));
            for _ in 0..50 {
                let v = vine_normalize(&random_word(&mut rng, m, 6), &MonotoneMap::terminal(m)).map_err(err)?;
                if v != merge {
                    return Err(format!("{v} differs from {merge}"));
                }
            }
        }
        Ok(String::new())
    }));
    out.push(timed("composition is associative on 50 triples", || {
        let mut rng = ChaCha8Rng::seed_from_u64(62);
        for _ in 0..50 {
            let a = rng.random_range(0..=5);
            let b = rng.random_range(usize::from(a > 0)..=5);
            let c = rng.random_range(usize::from(b > 0)..=5);
            let d = rng.random_range(usize::from(c > 0)..=5);
            let (v1, v2, v3) =
                (random_vine(&mut rng, a, b, 6), random_vine(&mut rng, b, c, 6), random_vine(&mut rng, c, d, 6));
            let left = vine_compose(&vine_compose(&v1, &v2).map_err(err)?, &v3).map_err(err)?;
            let right = vine_compose(&v1, &vine_compose(&v2, &v3).map_err(err)?).map_err(err)?;
            if left != right {
                return Err(format!("({v3} . {v2}) . {v1} = {left}, {v3} . ({v2} . {v1}) = {right}"));
            }
        }
        Ok(String::new())
    }));
    out.push(timed("underlying functions are functorial", || {
        let mut rng = ChaCha8Rng::seed_from_u64(63);
        for _ in 0..100 {
            let a = rng.random_range(0..=5);
            let b = rng.random_range(usize::from(a > 0)..=5);
            let c = rng.random_range(usize::from(b > 0)..=5);
            let (v1, v2) = (random_vine(&mut rng, a, b, 6), random_vine(&mut rng, b, c, 6));
            let fused = vine_underlying_fn(&vine_compose(&v1, &v2).map_err(err)?);
            let split = vine_underlying_fn(&v2).compose(&vine_underlying_fn(&v1)).map_err(err)?;
            if fused != split {
                return Err(format!("{v2} . {v1}: {fused} vs {split}"));
            }
        }
        for n in 0..=5 {
            if vine_underlying_fn(&Vine::identity(n)) != FinFunction::identity(n) {
                return Err(format!("identity on {n}"));
            }
        }
        Ok(String::new())
    }));
    out
}

fn noncatead() -> Vec<CheckOutcome> {
    let psi = Permutation::from_cycles(4, &[&[1, 2, 4]]).expect("valid cycle");
    let profile = BlockProfile(vec![2, 2]);
    vec![
        timed("block decomposition of (124) over (2,2) is absent", || {
            match block_decompose(&psi, &profile).map_err(err)? {
                None => Ok(String::new()),
                Some((rho, blocks)) => Err(format!("found {rho} with {} blocks", blocks.len())),
            }
        }),
        timed("no substitution of two 2-blocks gives (124)", || {
            let mut tried = 0;
            for rho in Permutation::all(2) {
                for b1 in Permutation::all(2) {
                    for b2 in Permutation::all(2) {
                        tried += 1;
                        if block_substitute(&rho, &[b1.clone(), b2.clone()]).map_err(err)? == psi {
                            return Err(format!("{rho} with {b1}, {b2}"));
                        }
                    }
                }
            }
            Ok(format!("{tried} candidates"))
        }),
    ]
}

fn axioms() -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for name in ["Com", "Ass", "AssNS", "BCom"] {
        out.push(timed(&format!("operad axioms for {name} up to arity 4"), || {
            let op = builtin_operad(name).map_err(err)?;
            let report = check_operad_axioms(op.as_ref(), 4);
            match report.violation {
                None => Ok(format!("{} equations", report.checked)),
                Some(v) => Err(v.to_string()),
            }
        }));
    }
    for spec in ["id:Com", "Ass->Com", "id:Ass", "id:AssNS"] {
        for bound in 1..=3 {
            out.push(timed(&format!("crossed and distributive-law axioms, bar of {spec}, sizes <= {bound}"), || {
                let bar = bar_build(&classifier(spec)?, 0, bound).map_err(err)?;
                let crossed = check_crossed_axioms(&bar.double);
                if !crossed.passed() {
                    return Err(crossed.to_string());
                }
                let delta = check_delta_law(&bar.double);
                if !delta.passed() {
                    return Err(delta.to_string());
                }
                let total: usize = crossed.checked.iter().chain(&delta.checked).map(|(_, k)| k).sum();
                Ok(format!("{} squares, {total} equations", bar.double.squares().len()))
            }));
        }
    }
    out
}

fn word(n: usize, parts: &[&[i32]]) -> BraidWord {
    BraidWord::new(n, parts.concat()).expect("letters in range")
}

fn braids() -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    out.push(timed("normal forms identify both relation types in 100 contexts", || {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let n = rng.random_range(3..=5);
            let (u, v) = (random_word(&mut rng, n, 6), random_word(&mut rng, n, 6));
            let (u, v) = (u.letters(), v.letters());
            let i = rng.random_range(1..n as i32 - 1);
            let s = if rng.random_bool(0.5) { 1 } else { -1 };
            let (a, b) = ([s * i, s * (i + 1), s * i], [s * (i + 1), s * i, s * (i + 1)]);
            if braid_nf(&word(n, &[u, &a, v])) != braid_nf(&word(n, &[u, &b, v])) {
                return Err(format!("braid relation at {i} in context {u:?} / {v:?}"));
            }
            if n >= 4 {
                let i = rng.random_range(1..n as i32 - 2);
                let j = rng.random_range(i + 2..n as i32);
                let (si, sj) =
                    (i * if rng.random_bool(0.5) { 1 } else { -1 }, j * if rng.random_bool(0.5) { 1 } else { -1 });
                if braid_nf(&word(n, &[u, &[si, sj], v])) != braid_nf(&word(n, &[u, &[sj, si], v])) {
                    return Err(format!("far commutation of {si}, {sj} in context {u:?} / {v:?}"));
                }
            }
        }
        Ok(String::new())
    }));
    out.push(timed("normal forms separate different permutations or crossing signs", || {
        let mut rng = ChaCha8Rng::seed_from_u64(91);
        let mut separated = 0;
        for _ in 0..2000 {
            let n = rng.random_range(2..=5);
            let (a, b) = (random_word(&mut rng, n, 6), random_word(&mut rng, n, 6));
            if a.underlying_perm() != b.underlying_perm() || a.exponent_sum() != b.exponent_sum() {
                separated += 1;
                if braid_eq(&a, &b) {
                    return Err(format!("{:?} and {:?} identified", a.letters(), b.letters()));
                }
            }
        }
        Ok(format!("{separated} distinguishable pairs"))
    }));
    out
}
