use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use quiddity::{
    classify_irreducibles, enumerate_quiddities, find_decomposition, is_evenly_reducible,
    ClassifySpec, DecompositionQuery, EnumSpec, EvenMode, Generator, WorkLimit,
};
use quiddity_bench::{generators, sample};

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(20);
    for gen in generators() {
        let spec = EnumSpec::new(gen, 7, 3);
        group.bench_with_input(BenchmarkId::new("size7_bound3", gen), &spec, |b, spec| {
            b.iter(|| {
                enumerate_quiddities(spec, WorkLimit::default())
                    .unwrap()
                    .len()
            })
        });
    }
    group.finish();
}

fn decomposition(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose");
    let inputs = sample(Generator::integers(), 8, 2);
    group.bench_function("z_size8_all_classes", |b| {
        b.iter(|| {
            inputs
                .iter()
                .filter(|q| {
                    find_decomposition(q, &DecompositionQuery::default())
                        .unwrap()
                        .is_some()
                })
                .count()
        })
    });
    let even_inputs = sample(Generator::integers(), 8, 2);
    group.bench_function("z_size8_even_equiv", |b| {
        b.iter(|| {
            even_inputs
                .iter()
                .filter(|q| is_evenly_reducible(q, EvenMode::UpToEquivalence).unwrap())
                .count()
        })
    });
    group.finish();
}

fn classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    group.sample_size(10);
    for gen in [Generator::integers(), Generator::sqrt(3)] {
        let spec = ClassifySpec {
            gen,
            min_size: 3,
            max_size: 7,
            bound: 2,
        };
        group.bench_with_input(
            BenchmarkId::new("sizes3to7_bound2", gen),
            &spec,
            |b, spec| {
                b.iter(|| {
                    classify_irreducibles(spec, WorkLimit::default())
                        .unwrap()
                        .irreducibles
                        .len()
                })
            },
        );
    }
    group.finish();
}

criterion_group!(benches, enumeration, decomposition, classification);
criterion_main!(benches);
