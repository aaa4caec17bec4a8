use std::hint::black_box;

use bruhat_core::bruhat::{consistent_sets, enumerate_bruhat_with, to_poset_with};
use bruhat_core::homology::reduced_homology_with;
use bruhat_core::lemma::{bruhat_instance, carrier_cone_check_with};
use bruhat_core::poset::{order_complex, proper_part};
use bruhat_core::{BruhatOrderKind, EnumerationLimits, EnumerationMethod, Exec, GroundParams};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];
const BUDGET: u64 = 2_000_000;

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    for (n, k, method) in [
        (6, 2, EnumerationMethod::Bruteforce),
        (6, 1, EnumerationMethod::Bfs),
        (7, 3, EnumerationMethod::Bfs),
    ] {
        let params = GroundParams::new(n, k).unwrap();
        for (name, exec) in MODES {
            let id = BenchmarkId::new(format!("{method:?} B({n},{k})"), name);
            g.bench_function(id, |b| {
                b.iter(|| {
                    consistent_sets(
                        black_box(params),
                        method,
                        EnumerationLimits::default(),
                        exec,
                    )
                    .unwrap()
                })
            });
        }
    }
    g.finish();
}

fn chains_and_homology(c: &mut Criterion) {
    let mut g = c.benchmark_group("homology");
    g.sample_size(10);
    for (n, k) in [(5, 2), (5, 1)] {
        let params = GroundParams::new(n, k).unwrap();
        let order = enumerate_bruhat_with(
            params,
            BruhatOrderKind::SingleStep,
            EnumerationMethod::Bfs,
            EnumerationLimits::default(),
            Exec::Sequential,
        )
        .unwrap();
        let pp = proper_part(&to_poset_with(&order, Exec::Sequential).unwrap());
        let complex = order_complex(&pp.poset, BUDGET, Exec::Sequential).unwrap();
        for (name, exec) in MODES {
            g.bench_function(BenchmarkId::new(format!("chains B({n},{k})"), name), |b| {
                b.iter(|| pp.poset.chains(BUDGET, exec).unwrap())
            });
            g.bench_function(
                BenchmarkId::new(format!("reduced homology B({n},{k})"), name),
                |b| b.iter(|| reduced_homology_with(&complex, BUDGET, exec).unwrap()),
            );
        }
    }
    g.finish();
}

fn carriers(c: &mut Criterion) {
    let mut g = c.benchmark_group("carriers");
    g.sample_size(10);
    let inst = bruhat_instance(
        GroundParams::new(5, 2).unwrap(),
        BruhatOrderKind::Inclusion,
        EnumerationLimits::default(),
        Exec::Sequential,
    )
    .unwrap()
    .instance;
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new("carrier cones B(5,2)", name), |b| {
            b.iter(|| carrier_cone_check_with(&inst, 50_000, 0, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, enumeration, chains_and_homology, carriers);
criterion_main!(benches);
