//! Benchmarks for the hot paths: the branch-decomposition solver across cut
//! kinds, direct decomposition evaluation, exact treewidth, and the
//! decomposition-to-tree-decomposition compiler.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use widthforge_core::treedec::exact_treewidth;
use widthforge_core::{
    compile, generate, rook_caterpillar_bd, solve_branchwidth, width_of, CompileOptions, CutKind,
    Family, FamilySpec, Graph, SolveOptions,
};

fn family(f: Family, params: Vec<u32>) -> Graph {
    generate(&FamilySpec::new(f, params)).expect("benchmark families are well-formed")
}

fn bench_solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    let cases: Vec<(CutKind, Graph, &str)> = vec![
        (CutKind::Eta, family(Family::Complete, vec![6]), "eta/K6"),
        (CutKind::Mm, family(Family::Rook, vec![3, 3]), "mm/rook-3x3"),
        (CutKind::Mim, family(Family::Grid, vec![3, 4]), "mim/grid-3x4"),
        (CutKind::Sim, family(Family::Cycle, vec![12]), "sim/C12"),
        (CutKind::Rank, family(Family::Biclique, vec![4, 5]), "rank/K45"),
    ];
    for (kind, g, label) in &cases {
        group.bench_with_input(BenchmarkId::from_parameter(label), g, |b, g| {
            b.iter(|| {
                solve_branchwidth(black_box(g), *kind, &SolveOptions::default())
                    .expect("within caps")
                    .value
            })
        });
    }
    group.finish();
}

fn bench_evaluation(c: &mut Criterion) {
    let mut group = c.benchmark_group("width_of");
    group.sample_size(10);
    for n in [4u32, 5, 6] {
        let g = family(Family::Rook, vec![n, n]);
        let bd = rook_caterpillar_bd(n, n).expect("square boards are valid");
        group.bench_with_input(BenchmarkId::new("sim/rook-caterpillar", n), &n, |b, _| {
            b.iter(|| width_of(black_box(&g), black_box(&bd), CutKind::Sim).expect("same ground").value)
        });
    }
    group.finish();
}

fn bench_treewidth(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_treewidth");
    group.sample_size(10);
    for n in [3u32, 4] {
        let g = family(Family::Grid, vec![n, n]);
        group.bench_with_input(BenchmarkId::new("grid", n), &n, |b, _| {
            b.iter(|| exact_treewidth(black_box(&g), None).expect("within caps").0)
        });
    }
    group.finish();
}

fn bench_compiler(c: &mut Criterion) {
    let mut group = c.benchmark_group("compile");
    group.sample_size(10);
    for (f, params, label) in [
        (Family::Grid, vec![3u32, 4], "grid-3x4"),
        (Family::Cycle, vec![12], "C12"),
        (Family::RandomChordal, vec![12], "chordal-12"),
    ] {
        let g = match f {
            Family::RandomChordal => generate(&FamilySpec::seeded(f, params, 1)).unwrap(),
            _ => family(f, params),
        };
        let bd = solve_branchwidth(&g, CutKind::Mim, &SolveOptions::default())
            .expect("within caps")
            .decomposition;
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| {
                compile(black_box(&g), black_box(&bd), &CompileOptions::default())
                    .expect("solver decompositions compile")
                    .stats
                    .steps
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_solver, bench_evaluation, bench_treewidth, bench_compiler);
criterion_main!(benches);
