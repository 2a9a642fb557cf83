use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use descent_bench::{dihedral_instance, quaternion_instance};
use descent_core::braid::{elliptic_scenario, even_kernel};
use descent_core::cohomology::{definability_test, GModule, ObstructionSetup};
use descent_core::curves::conj_descent_check;
use descent_core::permgroup::FinGroup;

fn words(c: &mut Criterion) {
    c.bench_function("even_kernel_rs/6", |b| {
        b.iter(|| {
            even_kernel(black_box(6))
                .unwrap()
                .reidemeister_schreier()
                .unwrap()
        })
    });
    c.bench_function("elliptic_scenario", |b| {
        b.iter(|| elliptic_scenario().unwrap())
    });
}

fn cohomology(c: &mut Criterion) {
    let c2xc2 = FinGroup::direct_product(&FinGroup::cyclic(2), &FinGroup::cyclic(2));
    let m = GModule::trivial(c2xc2, FinGroup::cyclic(4)).unwrap();
    c.bench_function("h2/C2xC2,C4", |b| {
        b.iter(|| black_box(&m).h2().unwrap().order)
    });

    let mut g = c.benchmark_group("definability");
    for (name, (ext, psi)) in [
        ("Q8/C4", quaternion_instance()),
        ("D4/C4", dihedral_instance()),
    ] {
        g.bench_function(name, |b| {
            b.iter(|| {
                let st = ObstructionSetup::new(&ext, &psi).unwrap();
                definability_test(&st).unwrap().definable
            })
        });
    }
    g.finish();
}

fn curves(c: &mut Criterion) {
    let mut g = c.benchmark_group("conj_descent");
    g.sample_size(10);
    g.bench_function("3,2,2", |b| b.iter(|| conj_descent_check(3, 2, 2).unwrap()));
    g.finish();
}

criterion_group!(benches, words, cohomology, curves);
criterion_main!(benches);
