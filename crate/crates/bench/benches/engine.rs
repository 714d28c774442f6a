use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use stickforge_bench::{chain, sample_notations};
use stickforge_core::builder::fixtures::fixture;
use stickforge_core::builder::{build, BuildParams};
use stickforge_core::conway::parse;
use stickforge_core::invariants::{bracket, bracket_state_sum, canonical_diagram, verify, CompareMode};

fn brackets(c: &mut Criterion) {
    let mut g = c.benchmark_group("bracket");
    for crossings in [10, 20, 30] {
        let d = canonical_diagram(&chain(crossings));
        g.bench_with_input(BenchmarkId::new("pairing", d.crossing_count()), &d, |b, d| {
            b.iter(|| bracket(black_box(d)))
        });
    }
    let d = canonical_diagram(&chain(12));
    g.bench_function("state_sum/12", |b| b.iter(|| bracket_state_sum(black_box(&d))));
    g.finish();
}

fn builds(c: &mut Criterion) {
    let mut g = c.benchmark_group("build");
    g.sample_size(10);
    let params = BuildParams { use_fixtures: false, ..BuildParams::default() };
    for n in sample_notations() {
        g.bench_with_input(BenchmarkId::from_parameter(&n), &n, |b, n| b.iter(|| build(black_box(n), &params)));
    }
    g.finish();
}

fn verification(c: &mut Criterion) {
    let n = parse("2,3,2").unwrap();
    let f = fixture(&n).unwrap();
    c.bench_function("verify/fixture (2,3,2)", |b| {
        b.iter(|| verify(black_box(&f.components), &n, CompareMode::MirrorTolerant, 0))
    });
}

criterion_group!(benches, brackets, builds, verification);
criterion_main!(benches);
