//! Hot paths: exact series products, window stabilization, the full
//! route-checking report, and module quotients.

use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use sncurve_core::analysis::{snc_check, subset_sweep};
use sncurve_core::differentials::{regular_forms, sigma0};
use sncurve_core::families::Family;
use sncurve_core::ideal::FracIdeal;
use sncurve_core::ring::{CurveRing, StabilizeOpts};
use sncurve_core::series::{q, LaurentSeries};

fn dense_series(len: i64, salt: i64) -> LaurentSeries {
    let mut acc = LaurentSeries::exact_zero();
    for k in 1..=len {
        acc = acc.add(&LaurentSeries::monomial(q(salt * k + 1, k), k));
    }
    acc
}

fn ring_of(f: Family) -> Arc<CurveRing> {
    CurveRing::analyze(f.generate().expect("family generates"), StabilizeOpts::default())
        .expect("family stabilizes")
}

fn series_mul(c: &mut Criterion) {
    let a = dense_series(64, 3);
    let b = dense_series(64, -5);
    c.bench_function("series_mul_64x64", |bench| bench.iter(|| a.mul(&b)));
}

fn stabilize(c: &mut Criterion) {
    let spec = Family::AxesPlusDiagonal(3).generate().expect("family generates");
    c.bench_function("stabilize_axes_plus_diagonal_3", |bench| {
        bench.iter_batched(
            || spec.clone(),
            |s| CurveRing::analyze(s, StabilizeOpts::default()).expect("stabilizes"),
            BatchSize::SmallInput,
        )
    });
}

fn full_report(c: &mut Criterion) {
    let ring = ring_of(Family::ConcurrentLines(4));
    c.bench_function("snc_check_lines_4", |bench| {
        bench.iter(|| snc_check(&ring).expect("report"))
    });
}

fn residue_module_quotient(c: &mut Criterion) {
    let ring = ring_of(Family::Ak(4));
    let w1 = regular_forms(&ring).expect("regular forms");
    c.bench_function("sigma0_quotient_a4", |bench| {
        bench.iter(|| sigma0(&ring, &w1).expect("residue module"))
    });
}

fn ideal_quotient(c: &mut Criterion) {
    let ring = ring_of(Family::ContactPair(3));
    let unit = FracIdeal::unit(ring.clone()).expect("unit module");
    let j = FracIdeal::jacobian_ideal(&ring)
        .expect("jacobian computes")
        .expect("plane curve has one");
    c.bench_function("ideal_quotient_contact_3", |bench| {
        bench.iter(|| FracIdeal::quotient(&unit, &j).expect("quotient"))
    });
}

fn sweep(c: &mut Criterion) {
    let ring = ring_of(Family::AxesPlusDiagonal(3));
    c.bench_function("subset_sweep_axes_plus_diagonal_3", |bench| {
        bench.iter(|| subset_sweep(&ring, 5).expect("sweep"))
    });
}

criterion_group!(
    benches,
    series_mul,
    stabilize,
    full_report,
    residue_module_quotient,
    ideal_quotient,
    sweep
);
criterion_main!(benches);
