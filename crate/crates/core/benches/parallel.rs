use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hopfcert::gfp::Prime;
use hopfcert::loopfib::{CotensorFibre, LoopFibreProblem};
use hopfcert::tensor::{free_on_check_with, loop_homology_families};
use hopfcert::Exec;

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn cotensor_dims(c: &mut Criterion) {
    let mut group = c.benchmark_group("cotensor_dims");
    group.sample_size(10);
    for (m, r, cutoff) in [(3, 6, 36), (5, 7, 40)] {
        let fibre = CotensorFibre::new(LoopFibreProblem::new(m, r, 2, cutoff).unwrap()).unwrap();
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, format!("m{m}_r{r}_c{cutoff}")), &exec, |b, &exec| {
                b.iter(|| fibre.dims(exec).unwrap())
            });
        }
    }
    group.finish();
}

fn free_check_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("free_check");
    group.sample_size(10);
    let p = Prime::new(5).unwrap();
    let families: Vec<_> =
        [(2, 0), (3, 1), (4, 1)].into_iter().flat_map(|(n, k)| loop_homology_families(n, k, p).unwrap()).collect();
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::new(name, "cutoff30"), |b| {
            b.iter(|| families.iter().all(|f| free_on_check_with(&f.algebra, &f.gens, 30, exec).unwrap().is_free()))
        });
    }
    group.finish();
}

criterion_group!(benches, cotensor_dims, free_check_grid);
criterion_main!(benches);
