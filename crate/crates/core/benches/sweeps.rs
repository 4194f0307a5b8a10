use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use framedcb::canonical::{seeded_falg, CBType};
use framedcb::cartan::{CartanDatum, Weight};
use framedcb::framed::verify_cb_correspondence;
use framedcb::par::{par_map, seq_map};
use framedcb::tensor::TensorModule;
use std::hint::black_box;
use std::sync::Arc;

fn diamond_count(m: i64, n: i64) -> usize {
    let f = Arc::new(seeded_falg(CBType::A1, CartanDatum::a1()).unwrap());
    let t = TensorModule::new(f, Weight::new(vec![m]), Weight::new(vec![n])).unwrap();
    t.diamond_basis().unwrap().len()
}

fn sweep_grid(max: u32) -> Vec<(u32, u32)> {
    (0..=max).flat_map(|m| (0..=max).map(move |n| (m, n))).collect()
}

fn diamond_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("diamond sweep");
    g.sample_size(10);
    for max in [2u32, 4] {
        let grid = sweep_grid(max);
        g.bench_with_input(BenchmarkId::new("parallel", max), &grid, |b, grid| {
            b.iter(|| par_map(grid, |&(m, n)| diamond_count(m as i64, n as i64)))
        });
        g.bench_with_input(BenchmarkId::new("sequential", max), &grid, |b, grid| {
            b.iter(|| seq_map(grid, |&(m, n)| diamond_count(m as i64, n as i64)))
        });
    }
    g.finish();
}

fn correspondence_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("framed correspondence sweep");
    g.sample_size(10);
    let grid = sweep_grid(3);
    g.bench_function("parallel", |b| {
        b.iter(|| par_map(&grid, |&(m, n)| black_box(verify_cb_correspondence(m, n).unwrap().is_perfect())))
    });
    g.bench_function("sequential", |b| {
        b.iter(|| seq_map(&grid, |&(m, n)| black_box(verify_cb_correspondence(m, n).unwrap().is_perfect())))
    });
    g.finish();
}

fn gram_fill(c: &mut Criterion) {
    // the Gram table fill uses the crate-level map, so this measures the active mode
    let mut g = c.benchmark_group("gram fill");
    g.sample_size(10);
    g.bench_function(framedcb::par::mode(), |b| {
        b.iter(|| {
            let f = framedcb::falg::FAlg::new(CartanDatum::a2());
            black_box(f.gram(&[3, 3]).rank)
        })
    });
    g.finish();
}

criterion_group!(benches, diamond_sweep, correspondence_sweep, gram_fill);
criterion_main!(benches);
