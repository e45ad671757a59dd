use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use codiff_core::cohomology::{lie_cohomology, Coefficients};
use codiff_core::fixtures;
use codiff_core::par;
use codiff_core::duality::Convention;
use codiff_core::structures::{check_structure, AlgebraStructure, StructureKind};

fn modes() -> [(&'static str, bool); 2] {
    [("parallel", true), ("sequential", false)]
}

fn cohomology(c: &mut Criterion) {
    let mut group = c.benchmark_group("lie_cohomology");
    group.sample_size(10);
    for (name, l) in [("sl2", fixtures::sl2()), ("gl2", fixtures::gl2()), ("osp12", fixtures::osp12())] {
        for (mode, on) in modes() {
            group.bench_with_input(BenchmarkId::new(mode, name), &l, |b, l| {
                par::set_parallel(on);
                b.iter(|| lie_cohomology(l, &Coefficients::Adjoint, 3).unwrap());
            });
        }
    }
    group.finish();
}

fn relations(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_structure");
    group.sample_size(10);
    let s = AlgebraStructure::new(StructureKind::LInf, fixtures::dgla(), Convention::LsLm).unwrap();
    for (mode, on) in modes() {
        group.bench_function(BenchmarkId::new(mode, "dgla"), |b| {
            par::set_parallel(on);
            b.iter(|| check_structure(&s, 5));
        });
    }
    group.finish();
    par::set_parallel(true);
}

criterion_group!(benches, cohomology, relations);
criterion_main!(benches);
