use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rilab_bench::{katsura, mystery_pair};
use rilab_core::groebner::{groebner_basis, GbBudget};
use rilab_core::module::FiniteLengthGradedModule;
use rilab_core::residual::{duality_suite, make_setup, DualityOptions};
use rilab_core::resolution::GradedResolution;

fn groebner(c: &mut Criterion) {
    let mut g = c.benchmark_group("groebner");
    for n in [3, 4] {
        let gens = katsura(n);
        let ring = gens[0].ring().clone();
        g.bench_function(format!("katsura-{n}"), |b| {
            b.iter(|| groebner_basis(&ring, black_box(&gens), GbBudget::default()).unwrap())
        });
    }
    g.finish();
}

fn homology(c: &mut Criterion) {
    let (i, j) = mystery_pair();
    let k = j.colon(&i).unwrap();
    c.bench_function("resolution/colon-ideal", |b| {
        b.iter(|| GradedResolution::of_quotient(black_box(&k), 3, GbBudget::default()).unwrap())
    });
    c.bench_function("module/quotient-and-dual", |b| {
        b.iter(|| FiniteLengthGradedModule::quotient_ring(black_box(&k), GbBudget::default()).unwrap().matlis_dual())
    });
}

fn residual(c: &mut Criterion) {
    let (i, j) = mystery_pair();
    let setup = make_setup(&i, &j, false).unwrap();
    let mut g = c.benchmark_group("residual");
    g.sample_size(20);
    g.bench_function("setup", |b| b.iter(|| make_setup(black_box(&i), black_box(&j), false).unwrap()));
    g.bench_function("duality-suite", |b| {
        b.iter(|| duality_suite(black_box(&setup), GbBudget::default(), &DualityOptions::default()).unwrap())
    });
    g.finish();
}

criterion_group!(benches, groebner, homology, residual);
criterion_main!(benches);
