use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hk_core::closedform::{reference_poly, CubicFamily};
use hk_core::properties::{run_property_suite, SuiteConfig};
use hk_core::{hk_profile_with, EngineOptions, Execution, RankStrategy};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn engine(c: &mut Criterion) {
    let mut group = c.benchmark_group("hk_profile");
    group.sample_size(10);
    let cases = [
        ("elliptic_p5_q25_direct", CubicFamily::EllipticOdd, 5, 25, RankStrategy::Direct),
        ("elliptic_p11_q121_normalized", CubicFamily::EllipticOdd, 11, 121, RankStrategy::Normalized),
        ("cayley_p3_q6_direct", CubicFamily::Cayley, 3, 6, RankStrategy::Direct),
    ];
    for (name, family, p, q, strategy) in cases {
        let f = reference_poly(family, p).unwrap();
        for (mode, execution) in MODES {
            let opts = EngineOptions::new(strategy, execution);
            group.bench_with_input(BenchmarkId::new(name, mode), &opts, |b, opts| {
                b.iter(|| hk_profile_with(&f, q, opts).unwrap().hk_value)
            });
        }
    }
    group.finish();
}

fn suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("property_suite");
    group.sample_size(10);
    for (mode, execution) in MODES {
        // one prime and q <= 5 keeps a sample under a second
        let cfg = SuiteConfig { primes: vec![3], qs: vec![3, 5], execution, ..SuiteConfig::default() };
        group.bench_function(mode, |b| b.iter(|| run_property_suite(&cfg).unwrap().instances.len()));
    }
    group.finish();
}

criterion_group!(benches, engine, suite);
criterion_main!(benches);
