//! Compares the data-parallel default against single-threaded execution on
//! the three heaviest reporting pipelines. With the default `parallel`
//! feature the "serial" variants run on a one-thread rayon pool; built with
//! `--no-default-features` everything is the plain sequential fallback and
//! the two variants coincide.

use approx_incidences::pairs::Mode;
use approx_incidences::planar::point_line as pl2;
use approx_incidences::spatial::{congruent as congruent3, point_plane};
use approx_incidences::{gen, geom};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

struct Inputs {
    pts2: Vec<geom::Point2>,
    lines2: Vec<geom::Line2>,
    pts3: Vec<geom::Point3>,
    planes: Vec<geom::Plane3>,
    q3: Vec<geom::Point3>,
}

fn inputs() -> Inputs {
    let mut rng = gen::rng(99);
    Inputs {
        pts2: gen::points_2d(4000, &mut rng),
        lines2: gen::lines_2d(4000, &mut rng),
        pts3: gen::points_3d(2000, &mut rng),
        planes: gen::planes_3d(2000, &mut rng),
        q3: gen::points_3d(2000, &mut rng),
    }
}

#[cfg(feature = "parallel")]
fn serial_pool() -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
}

fn bench(c: &mut Criterion) {
    let inp = inputs();

    let mut g = c.benchmark_group("point_line_2d_4000");
    g.sample_size(10);
    g.bench_function("parallel", |b| {
        b.iter(|| {
            black_box(
                pl2::report(&inp.pts2, &inp.lines2, 0.002, Mode::Count)
                    .unwrap()
                    .count,
            )
        })
    });
    #[cfg(feature = "parallel")]
    g.bench_function("single_thread", |b| {
        let pool = serial_pool();
        b.iter(|| {
            pool.install(|| {
                black_box(
                    pl2::report(&inp.pts2, &inp.lines2, 0.002, Mode::Count)
                        .unwrap()
                        .count,
                )
            })
        })
    });
    g.finish();

    let mut g = c.benchmark_group("point_plane_3d_2000");
    g.sample_size(10);
    g.bench_function("parallel", |b| {
        b.iter(|| {
            black_box(
                point_plane::report(&inp.pts3, &inp.planes, 0.002, Mode::Count)
                    .unwrap()
                    .count,
            )
        })
    });
    #[cfg(feature = "parallel")]
    g.bench_function("single_thread", |b| {
        let pool = serial_pool();
        b.iter(|| {
            pool.install(|| {
                black_box(
                    point_plane::report(&inp.pts3, &inp.planes, 0.002, Mode::Count)
                        .unwrap()
                        .count,
                )
            })
        })
    });
    g.finish();

    let mut g = c.benchmark_group("congruent_pairs_3d_2000");
    g.sample_size(10);
    g.bench_function("parallel", |b| {
        b.iter(|| {
            black_box(
                congruent3::report(&inp.pts3, &inp.q3, 0.25, 0.004, Mode::Count)
                    .unwrap()
                    .count,
            )
        })
    });
    #[cfg(feature = "parallel")]
    g.bench_function("single_thread", |b| {
        let pool = serial_pool();
        b.iter(|| {
            pool.install(|| {
                black_box(
                    congruent3::report(&inp.pts3, &inp.q3, 0.25, 0.004, Mode::Count)
                        .unwrap()
                        .count,
                )
            })
        })
    });
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
