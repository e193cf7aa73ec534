use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cubex::simplicial::{arr, is_kan, is_resolution};
use cubex::theorems::{search_maltsev_counterexample, SearchDomain};
use cubex::{compute_kernel, compute_pullback, is_extension_inductive, is_extension_limitwise, ExtensionClass};
use cubex_bench::{group_squares, resolutions, set_cubes};

const S: ExtensionClass = ExtensionClass::Surjections;

fn limits(c: &mut Criterion) {
    let squares = group_squares(20);
    c.bench_function("pullback/group squares", |b| {
        b.iter(|| {
            for sq in &squares {
                compute_pullback(&sq.f0, &sq.b).unwrap();
            }
        })
    });
    c.bench_function("kernel/group squares", |b| {
        b.iter(|| {
            for sq in &squares {
                compute_kernel(&sq.a).unwrap();
            }
        })
    });
}

fn checkers(c: &mut Criterion) {
    let mut g = c.benchmark_group("extension");
    for dim in [2, 3] {
        let cubes = set_cubes(dim, 20);
        g.bench_with_input(BenchmarkId::new("limitwise", dim), &cubes, |b, cubes| {
            b.iter(|| cubes.iter().filter(|c| is_extension_limitwise(c, S).unwrap()).count())
        });
        g.bench_with_input(BenchmarkId::new("inductive", dim), &cubes, |b, cubes| {
            b.iter(|| cubes.iter().filter(|c| is_extension_inductive(c, S).unwrap()).count())
        });
    }
    g.finish();
}

fn simplicial(c: &mut Criterion) {
    let ss = resolutions(3);
    c.bench_function("simplicial/is_resolution", |b| {
        b.iter(|| ss.iter().all(|s| is_resolution(s, S).unwrap()))
    });
    c.bench_function("simplicial/is_kan", |b| b.iter(|| ss.iter().all(|s| is_kan(s, S).unwrap())));
    c.bench_function("simplicial/arr_4 limitwise", |b| {
        b.iter(|| ss.iter().all(|s| is_extension_limitwise(&arr(s, 4).unwrap(), S).unwrap()))
    });
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    g.bench_function("sets <= 3", |b| b.iter(|| search_maltsev_counterexample(SearchDomain::Sets(3)).unwrap()));
    g.bench_function("groups <= 6", |b| b.iter(|| search_maltsev_counterexample(SearchDomain::Groups(6)).unwrap()));
    g.finish();
}

criterion_group!(benches, limits, checkers, simplicial, search);
criterion_main!(benches);
