use criterion::{black_box, criterion_group, criterion_main, Criterion};
use fakeherm_bench::{database, pair};
use fakeherm_core::bounds::large_dk_report;
use fakeherm_core::classify::{division_t_enumeration, hermitian_t_scan, small_dk_reports, PRIME_CAP};
use fakeherm_core::zeta::script_r;
use fakeherm_core::NumericConfig;

fn script_r_paths(c: &mut Criterion) {
    let db = database();
    let cfg = NumericConfig::default();
    let mut g = c.benchmark_group("script_r");
    for label in ["C1", "Q(sqrt-47)", "k5.1025.1"] {
        let p = pair(&db, label);
        g.bench_function(label, |b| b.iter(|| script_r(black_box(p), &cfg).unwrap()));
    }
    g.finish();
}

fn bounds(c: &mut Criterion) {
    let db = database();
    let mut g = c.benchmark_group("bounds");
    g.sample_size(10);
    g.bench_function("small base fields", |b| b.iter(|| small_dk_reports(black_box(&db)).unwrap()));
    g.bench_function("large base fields", |b| b.iter(|| large_dk_report(black_box(&db.martinet)).unwrap()));
    g.finish();
}

fn search(c: &mut Criterion) {
    let db = database();
    let cfg = NumericConfig::default();
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    let c1 = pair(&db, "C1");
    let r1 = script_r(c1, &cfg).unwrap().value;
    g.bench_function("hermitian scan C1", |b| b.iter(|| hermitian_t_scan(black_box(c1), &r1).unwrap()));
    let q7 = pair(&db, "Q(sqrt-7)");
    let r7 = script_r(q7, &cfg).unwrap().value;
    g.bench_function("division degree 4 Q(sqrt-7)", |b| {
        b.iter(|| division_t_enumeration(black_box(q7), &r7, 4, PRIME_CAP).unwrap())
    });
    g.finish();
}

criterion_group!(benches, script_r_paths, bounds, search);
criterion_main!(benches);
