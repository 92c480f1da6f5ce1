use criterion::{black_box, criterion_group, criterion_main, Criterion};

use hlgeo_core::{
    build, connection_general, connection_orthonormal, full_report, ledger, riemann, CatalogName,
};

fn bench_connection(c: &mut Criterion) {
    let spec = build(CatalogName::Sl2C);
    c.bench_function("connection_orthonormal sl2_c", |b| {
        b.iter(|| connection_orthonormal(black_box(&spec.alg), black_box(&spec.metric)).unwrap())
    });
    c.bench_function("connection_general sl2_c", |b| {
        b.iter(|| connection_general(black_box(&spec.alg), black_box(&spec.metric)).unwrap())
    });
}

fn bench_curvature(c: &mut Criterion) {
    let spec = build(CatalogName::Sl2C);
    let conn = connection_general(&spec.alg, &spec.metric).unwrap();
    c.bench_function("riemann sl2_c", |b| {
        b.iter(|| riemann(black_box(&conn), black_box(&spec.alg)))
    });
}

fn bench_full_report(c: &mut Criterion) {
    let spec = build(CatalogName::NSl2);
    c.bench_function("full_report n_sl2", |b| b.iter(|| full_report(black_box(&spec))));
}

fn bench_ledger(c: &mut Criterion) {
    let spec = build(CatalogName::Sl2C);
    c.bench_function("ledger sl2_c", |b| {
        b.iter(|| ledger(black_box(&spec), CatalogName::Sl2C))
    });
}

criterion_group!(benches, bench_connection, bench_curvature, bench_full_report, bench_ledger);
criterion_main!(benches);
