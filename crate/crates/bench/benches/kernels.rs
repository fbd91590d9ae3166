use criterion::{black_box, criterion_group, criterion_main, Criterion};

use polyineq_core::bernstein::ellipse_bernstein_bound;
use polyineq_core::chebyshev::cheb_t;
use polyineq_core::geometry::random::random_hpolytope;
use polyineq_core::minkowski::alpha;
use polyineq_core::polarization::{product_sup, FunctionalConfig};
use polyineq_core::potential::{harris_constant, l_integral, rendezvous_estimate};
use polyineq_core::sampling::rng;
use polyineq_core::{ConvexBody, Direction, Field};

fn chebyshev(c: &mut Criterion) {
    c.bench_function("cheb_t n=40", |b| b.iter(|| cheb_t(40, black_box(1.37))));
}

fn minkowski(c: &mut Criterion) {
    let tri = ConvexBody::simplex(2).unwrap();
    c.bench_function("alpha simplex2", |b| b.iter(|| alpha(&tri, black_box(&[1.5, -0.4])).unwrap()));
    let mut r = rng(3);
    let poly = random_hpolytope(&mut r, 3, 12);
    c.bench_function("alpha random 3-polytope", |b| b.iter(|| alpha(&poly, black_box(&[2.0, 1.0, -1.0])).unwrap()));
}

fn bernstein(c: &mut Criterion) {
    let tri = ConvexBody::simplex(2).unwrap();
    let y = Direction::axis(2, 0);
    c.bench_function("ellipse bound simplex2", |b| {
        b.iter(|| ellipse_bernstein_bound(&tri, black_box(&[0.2, 0.3]), &y).unwrap())
    });
}

fn polarization(c: &mut Criterion) {
    let vs: Vec<Vec<f64>> = (0..4)
        .map(|k| {
            let t = std::f64::consts::PI * k as f64 / 4.0;
            vec![t.cos(), t.sin()]
        })
        .collect();
    let cfg = FunctionalConfig::new(Field::Real, 2, vs).unwrap();
    c.bench_function("product_sup real n=4", |b| b.iter(|| product_sup(black_box(&cfg)).unwrap()));
}

fn potential(c: &mut Criterion) {
    let mut g = c.benchmark_group("potential");
    g.sample_size(10);
    g.bench_function("harris m=10", |b| b.iter(|| harris_constant(black_box(10), 1).unwrap()));
    g.bench_function("l_integral d=3 complex", |b| b.iter(|| l_integral(black_box(3), Field::Complex).unwrap()));
    g.bench_function("rendezvous circle", |b| b.iter(|| rendezvous_estimate(1, black_box(48)).unwrap()));
    g.finish();
}

criterion_group!(benches, chebyshev, minkowski, bernstein, polarization, potential);
criterion_main!(benches);
