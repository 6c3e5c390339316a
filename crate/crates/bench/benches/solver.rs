use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dwlab::decomp;
use dwlab::game::{self, solve_explicit, Generator, Mode, Outcome, TerritorySolver, DEFAULT_BUDGET};
use dwlab::logic::{self, Method, VerifyOptions};
use dwlab::measures;
use dwlab_bench::{gadget, random_digraph, three_level_qbf, upclosure};

fn territory_vs_explicit(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_k2_random");
    for n in [6, 8, 10] {
        let g = random_digraph(n, 0.3, n as u64);
        group.bench_with_input(BenchmarkId::new("territory", n), &g, |b, g| {
            b.iter(|| TerritorySolver::new(g, 2, DEFAULT_BUDGET).solve().unwrap())
        });
        group.bench_with_input(BenchmarkId::new("explicit", n), &g, |b, g| {
            b.iter(|| solve_explicit(g, 2, Generator::Pruned, Mode::Monotone, DEFAULT_BUDGET).unwrap())
        });
    }
    group.finish();
}

fn width(c: &mut Criterion) {
    let mut group = c.benchmark_group("dag_width");
    group.sample_size(10);
    for h in [3, 4] {
        let g = upclosure(h);
        group.bench_with_input(BenchmarkId::new("upclosure", h), &g, |b, g| b.iter(|| game::dag_width(g, h + 1).unwrap()));
    }
    let g = gadget(6);
    group.bench_function("gadget_6", |b| b.iter(|| game::dag_width(&g, 6).unwrap()));
    group.finish();
}

fn decompositions(c: &mut Criterion) {
    let g = upclosure(4);
    let Outcome::CopsWin(table) = TerritorySolver::new(&g, 4, DEFAULT_BUDGET).solve().unwrap() else {
        panic!("4 cops win on the height-4 tree")
    };
    let dec = decomp::decomposition_from_strategy(&g, &table, 4).unwrap();
    c.bench_function("strategy_to_decomp", |b| b.iter(|| decomp::decomposition_from_strategy(&g, &table, 4).unwrap()));
    c.bench_function("validate_decomp", |b| b.iter(|| decomp::validate(&g, black_box(&dec)).unwrap()));
}

fn kelly(c: &mut Criterion) {
    let mut group = c.benchmark_group("kelly_width");
    for n in [10, 14, 18] {
        let g = random_digraph(n, 0.2, 7 + n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| b.iter(|| measures::kelly_width(g).unwrap()));
    }
    group.finish();
}

fn reduction(c: &mut Criterion) {
    let phi = three_level_qbf();
    c.bench_function("build_s_phi", |b| b.iter(|| logic::build_s_phi(black_box(&phi)).unwrap()));
    c.bench_function("qbf_eval", |b| b.iter(|| logic::qbf_eval(black_box(&phi)).unwrap()));
    let opts = VerifyOptions { method: Method::Scripted, ..VerifyOptions::default() };
    c.bench_function("verify_scripted", |b| b.iter(|| logic::verify_reduction(&phi, &opts).unwrap()));
}

criterion_group!(benches, territory_vs_explicit, width, decompositions, kelly, reduction);
criterion_main!(benches);
