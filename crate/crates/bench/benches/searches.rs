use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use turan_bench::construction;
use turan_core::constructions::{build_template, TemplateSpec};
use turan_core::detect::{find_biclique, find_complete_multipartite};
use turan_core::ex::{ex_exact, ExInstance};
use turan_core::stability::{closest_template, AnalysisParams};
use turan_core::zar::{z_exact, ZarKey};
use turan_core::{Budget, ForbiddenPattern};

fn detectors(c: &mut Criterion) {
    let g = construction(32, 3, 5);
    c.bench_function("k4(2) on basic r=3 k=5 n=32", |b| {
        b.iter(|| find_complete_multipartite(black_box(&g), 4, 2, Budget::unlimited()))
    });
    let all = g.universe();
    c.bench_function("biclique t=3 on basic r=3 k=5 n=32", |b| {
        b.iter(|| find_biclique(black_box(&g), &all, 3, Budget::unlimited()))
    });
}

fn exact(c: &mut Criterion) {
    let key = ZarKey::bipartite(6, 6, 2).unwrap();
    c.bench_function("z_2(6,6)", |b| b.iter(|| z_exact(black_box(&key), Budget::default())));
    let key = ZarKey::bipartite(5, 5, 3).unwrap();
    c.bench_function("z_3(5,5)", |b| b.iter(|| z_exact(black_box(&key), Budget::default())));
    let inst = ExInstance::balanced(3, 2, ForbiddenPattern::CompleteMultipartite { q: 3, t: 1 }, Budget::default());
    c.bench_function("ex_3(2, K_3)", |b| b.iter(|| ex_exact(black_box(&inst))));
}

fn stability(c: &mut Criterion) {
    let spec = TemplateSpec::standard(2, 5, 10).unwrap();
    let g = build_template(&spec).unwrap();
    let params = AnalysisParams::new(2, 5, 10, 2).unwrap();
    c.bench_function("closest template r=2 k=5 n=10", |b| {
        b.iter(|| closest_template(black_box(&g), &params))
    });
}

criterion_group!(benches, detectors, exact, stability);
criterion_main!(benches);
