use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use homlie_bench::{heisenberg, ns, random_cochain};
use homlie_core::deriv::solve_class;
use homlie_core::{Bounds, DerClass};
use std::hint::black_box;

fn axioms(c: &mut Criterion) {
    let a = ns();
    c.bench_function("hom-jacobi ns", |b| b.iter(|| black_box(a.check_hom_jacobi())));
    c.bench_function("axiom suite ns", |b| b.iter(|| black_box(a.axiom_suite())));
}

fn differential(c: &mut Criterion) {
    let a = ns();
    let mut g = c.benchmark_group("d squared ns");
    for arity in 0..=2 {
        let gamma = random_cochain(&a, arity, 3);
        g.bench_with_input(BenchmarkId::from_parameter(arity), &gamma, |b, gamma| {
            b.iter(|| black_box(gamma.differential().and_then(|d| d.differential()).expect("differential")))
        });
    }
    g.finish();
}

fn solve(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve");
    g.sample_size(10);
    let a = ns();
    for w in [1, 2] {
        g.bench_with_input(BenchmarkId::new("der ns", w), &w, |b, &w| {
            b.iter(|| black_box(solve_class(&a, DerClass::Der, 0, Bounds::new(w, w)).expect("solve")))
        });
    }
    let h = heisenberg();
    g.bench_function("gder heisenberg", |b| {
        b.iter(|| black_box(solve_class(&h, DerClass::GDer, 1, Bounds::new(1, 1)).expect("solve")))
    });
    g.finish();
}

criterion_group!(benches, axioms, differential, solve);
criterion_main!(benches);
