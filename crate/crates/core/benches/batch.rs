use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use umrow_core::coeff_rings::RingDescriptor;
use umrow_core::corpus::{self, item_rng};
use umrow_core::geometry::AffineMonoid;
use umrow_core::groups::FormKind;
use umrow_core::monoid_ring::MonoidRing;
use umrow_core::par;
use umrow_core::reduction::{bounded_orbit_search, monomial_pool, poly_cost, reduce_semilocal, SearchBudget};

fn semilocal_batch(c: &mut Criterion) {
    let r = RingDescriptor::integers_mod(360).unwrap();
    let form = FormKind::symplectic(3);
    let rows: Vec<_> = (0..256).map(|k| corpus::unimodular_row(&mut item_rng(42, k), &r, form)).collect();
    let reduce = |u: &Vec<_>| reduce_semilocal(&r, form, u).unwrap().word.items.len();

    let mut g = c.benchmark_group("semilocal_z360_sp6");
    g.bench_function(BenchmarkId::new("map", rows.len()), |b| b.iter(|| par::map(&rows, reduce)));
    g.bench_function(BenchmarkId::new("map_sequential", rows.len()), |b| {
        b.iter(|| par::map_sequential(&rows, reduce))
    });
    g.finish();
}

fn search_batch(c: &mut Criterion) {
    let mr = MonoidRing::new(RingDescriptor::integers_mod(2).unwrap(), AffineMonoid::new(vec![vec![2], vec![3]]).unwrap())
        .unwrap();
    let form = FormKind::symplectic(2);
    let rows: Vec<_> = (0..16)
        .filter_map(|k| corpus::orbit_monoid_ring_row(&mut item_rng(7, k), &mr, form, 3, None))
        .collect();
    let pool = monomial_pool(&mr, 3).unwrap();
    let search = |u: &Vec<_>| {
        bounded_orbit_search(&mr, form, u, &pool, &poly_cost, SearchBudget::default())
            .unwrap()
            .found()
            .is_some()
    };

    let mut g = c.benchmark_group("search_f2_cusp_sp4");
    g.sample_size(10);
    g.bench_function(BenchmarkId::new("map", rows.len()), |b| b.iter(|| par::map(&rows, search)));
    g.bench_function(BenchmarkId::new("map_sequential", rows.len()), |b| {
        b.iter(|| par::map_sequential(&rows, search))
    });
    g.finish();
}

criterion_group!(benches, semilocal_batch, search_batch);
criterion_main!(benches);
