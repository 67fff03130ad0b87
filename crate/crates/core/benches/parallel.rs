use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use opclass::classifier::{classifier_category, Classifier};
use opclass::codescent::{bar_build, check_crossed_axioms, pi0_codescent};
use opclass::operads::morphism_from_spec;
use opclass::par;

fn classifier(spec: &str) -> Classifier {
    Classifier::new(morphism_from_spec(spec).unwrap()).unwrap()
}

fn modes() -> [(&'static str, bool); 2] {
    [("parallel", false), ("sequential", true)]
}

fn bench_bar(c: &mut Criterion) {
    let mut group = c.benchmark_group("bar_build");
    group.sample_size(10);
    for spec in ["id:Com", "Ass->Com"] {
        let cls = classifier(spec);
        for (mode, sequential) in modes() {
            par::set_sequential(sequential);
            group.bench_with_input(BenchmarkId::new(mode, spec), &cls, |b, cls| {
                b.iter(|| bar_build(cls, 0, 3).unwrap())
            });
        }
    }
    par::set_sequential(false);
    group.finish();
}

fn bench_codescent(c: &mut Criterion) {
    let mut group = c.benchmark_group("pi0_codescent");
    group.sample_size(10);
    let bar = bar_build(&classifier("id:Com"), 0, 4).unwrap();
    for (mode, sequential) in modes() {
        par::set_sequential(sequential);
        group.bench_function(mode, |b| b.iter(|| pi0_codescent(&bar.double).unwrap()));
    }
    par::set_sequential(false);
    group.finish();
}

fn bench_axioms(c: &mut Criterion) {
    let mut group = c.benchmark_group("crossed_axioms");
    group.sample_size(10);
    let bar = bar_build(&classifier("Ass->Com"), 0, 3).unwrap();
    for (mode, sequential) in modes() {
        par::set_sequential(sequential);
        group.bench_function(mode, |b| b.iter(|| check_crossed_axioms(&bar.double)));
    }
    par::set_sequential(false);
    group.finish();
}

fn bench_category(c: &mut Criterion) {
    let mut group = c.benchmark_group("classifier_category");
    group.sample_size(10);
    let cls = classifier("id:Ass");
    for (mode, sequential) in modes() {
        par::set_sequential(sequential);
        group.bench_function(mode, |b| b.iter(|| classifier_category(&cls, 0, 3).unwrap()));
    }
    par::set_sequential(false);
    group.finish();
}

criterion_group!(benches, bench_bar, bench_codescent, bench_axioms, bench_category);
criterion_main!(benches);
