use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use prymlab::corr::make_d;
use prymlab::lattice::snf;
use prymlab::prym::{prym_tyurin_lattice, scenario_spec};
use prymlab::{induce, induced_map, random_simple, verify_scenario, HomologyModel, OrbitKind};

fn homology(c: &mut Criterion) {
    let mut group = c.benchmark_group("homology_build");
    for (n, ds, dl) in [(3, 4, 6), (4, 4, 8)] {
        let cover = induce(&random_simple(n, ds, dl, 0).unwrap(), OrbitKind::Spinor).unwrap();
        group.bench_with_input(
            BenchmarkId::new("spinor", format!("B{n}")),
            &cover,
            |b, cover| b.iter(|| HomologyModel::build(black_box(cover)).unwrap()),
        );
    }
    group.finish();
}

fn correspondence(c: &mut Criterion) {
    let d = random_simple(4, 4, 8, 0).unwrap();
    let x = HomologyModel::build(&induce(&d, OrbitKind::Spinor).unwrap()).unwrap();
    let delta = make_d(4);
    c.bench_function("induced_map delta B4", |b| {
        b.iter(|| induced_map(black_box(&x), &x, &delta).unwrap())
    });
    c.bench_function("snf H1(X) gram B4", |b| b.iter(|| snf(black_box(&x.gram))));
    c.bench_function("prym_tyurin_lattice B4", |b| {
        b.iter(|| prym_tyurin_lattice(black_box(&x)).unwrap())
    });
}

fn scenarios(c: &mut Criterion) {
    let mut group = c.benchmark_group("scenario");
    group.sample_size(10);
    for name in ["theorem2_b3", "recillas_a3", "b4_structure"] {
        let input = scenario_spec(name).unwrap().default_input(0);
        group.bench_with_input(BenchmarkId::from_parameter(name), &input, |b, input| {
            b.iter(|| verify_scenario(name, black_box(input)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, homology, correspondence, scenarios);
criterion_main!(benches);
