use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qalg::duality::pairing_matrix;
use qalg::limit::{pi, Lifter};
use qalg::quotients::{basis, AlgebraId};
use qalg::verify::run_suite;
use qalg::{Element, Exec, Sequence};

const STRATEGIES: [(&str, Exec); 2] = [
    ("parallel", Exec::Parallel),
    ("sequential", Exec::Sequential),
];

fn lifting_inputs() -> Vec<(usize, Sequence)> {
    let mut out = Vec::new();
    for k in 1..=4 {
        for d in 1..=24 {
            out.extend(
                basis(AlgebraId::R, d, Some(k))
                    .unwrap()
                    .into_iter()
                    .map(|s| (k, s)),
            );
        }
    }
    out
}

fn lifting(c: &mut Criterion) {
    let inputs = lifting_inputs();
    let lifter = Lifter::default();
    let mut group = c.benchmark_group("lifting sweep");
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| {
            b.iter(|| {
                let ok = exec.map(&inputs, |(k, s)| {
                    let lift = lifter.lift(*k, s).unwrap();
                    pi(*k, &lift.element).unwrap() == Element::monomial(s.clone())
                });
                assert!(ok.iter().all(|&v| v));
            })
        });
    }
    group.finish();
}

fn pairing(c: &mut Criterion) {
    let mut group = c.benchmark_group("pairing matrix");
    group.sample_size(10);
    for (k, d) in [(4, 8), (5, 8)] {
        for (name, exec) in STRATEGIES {
            group.bench_with_input(
                BenchmarkId::new(name, format!("k{k}d{d}")),
                &(k, d),
                |b, &(k, d)| b.iter(|| pairing_matrix(k, d, exec).unwrap()),
            );
        }
    }
    group.finish();
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify suites");
    group.sample_size(10);
    for id in [7u8, 8] {
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, id), &id, |b, &id| {
                b.iter(|| run_suite(id, exec))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, lifting, pairing, suites);
criterion_main!(benches);
