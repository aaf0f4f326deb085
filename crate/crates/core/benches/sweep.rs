use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use bridgesynth::par::Exec;
use bridgesynth::region::{region_sweep_with, RegionSpec};

fn region(c: &mut Criterion) {
    let mut g = c.benchmark_group("region_sweep");
    g.sample_size(10);
    for grid in [50usize, 200] {
        let spec = RegionSpec {
            w: 2.0,
            u_range: (0.0, 5.0),
            v_range: (0.0, 5.0),
            grid,
        };
        for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::default())] {
            g.bench_with_input(BenchmarkId::new(name, grid), &spec, |b, s| {
                b.iter(|| region_sweep_with(exec, black_box(*s)).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, region);
criterion_main!(benches);
