//! Checks that tie separate modules together.

use polyineq_core::bernstein::{best_ellipse, ellipse_bernstein_bound, krs_bound};
use polyineq_core::chebyshev::{cheb_t, extremal_polynomial, green_value, RidgePolynomial};
use polyineq_core::geometry::io::parse_body;
use polyineq_core::geometry::random::random_hpolytope;
use polyineq_core::geometry::sample_body;
use polyineq_core::minkowski::alpha;
use polyineq_core::polarization::{growth_root_sequence, metric_chebyshev};
use polyineq_core::potential::{asymptotic_polarization, rendezvous_estimate};
use polyineq_core::sampling::{random_unit, rng};
use polyineq_core::{ConvexBody, Direction, Field};

/// A Chebyshev ridge polynomial of a supporting layer has sup-norm exactly 1
/// on K, so the ellipse inequality applies to it without sampling error.
#[test]
fn ridge_polynomials_obey_the_ellipse_inequality() {
    let mut r = rng(101);
    for _ in 0..12 {
        let k = random_hpolytope(&mut r, 2, 6);
        let c = k.interior_point();
        let u = random_unit(&mut r, 2);
        let x: Vec<f64> = c.iter().zip(&u).map(|(a, b)| a + 0.6 * k.ray_exit(&c, &u) * b).collect();
        let y = Direction::new(random_unit(&mut r, 2)).unwrap();
        let bound = ellipse_bernstein_bound(&k, &x, &y).unwrap();
        assert!(bound <= krs_bound(&k, &x, &y).unwrap() + 1e-6);
        for n in 1..=7u32 {
            for j in 0..16 {
                let v = Direction::from_angle(std::f64::consts::PI * j as f64 / 16.0);
                let p = RidgePolynomial::for_layer(&k, &v, n).to_polynomial();
                let px = p.eval(&x);
                let dev = (1.0 - px * px).max(0.0).sqrt();
                let lhs = p.gradient(&x).iter().zip(y.as_slice()).map(|(g, yi)| g * yi).sum::<f64>().abs();
                assert!(lhs <= n as f64 * bound * dev + 1e-9, "n={n}: {lhs} > {}", n as f64 * bound * dev);
            }
        }
    }
}

#[test]
fn extremal_polynomial_attains_the_envelope_and_green_value() {
    let k = parse_body(r#"{"type":"vpoly","vertices":[[0,0],[2,0],[2,1],[0.5,1.5]]}"#).unwrap();
    let sample = sample_body(&k, 20_000);
    for x in [[3.0, 0.5], [-1.0, -1.0], [1.0, 4.0]] {
        let a = alpha(&k, &x).unwrap();
        for n in [1u32, 3, 6] {
            let p = extremal_polynomial(&k, &x, n).unwrap();
            assert!((p.eval(&x) / cheb_t(n, a) - 1.0).abs() < 1e-9);
            let sup = sample.iter().map(|z| p.eval(z).abs()).fold(0.0, f64::max);
            assert!(sup <= 1.0 + 1e-9);
        }
        let g = green_value(&k, &x).unwrap();
        assert!((g - (a + (a * a - 1.0).sqrt()).ln()).abs() < 1e-12);
    }
}

#[test]
fn real_plane_sequence_meets_its_limit() {
    let seq = growth_root_sequence(2, Field::Real, 6).unwrap();
    for (i, v) in seq.iter().enumerate() {
        let n = (i + 1) as f64;
        assert!((v - 2f64.powf((n - 1.0) / n)).abs() < 1e-3, "n={n}: {v}");
    }
    let limit = asymptotic_polarization(2, Field::Real).unwrap();
    assert!((limit - 2.0).abs() < 1e-4);
    assert!(seq.windows(2).all(|w| w[1] >= w[0] * 0.99));
}

#[test]
fn sphere_chebyshev_constants_are_monotone() {
    let vals: Vec<f64> = (1..=5).map(|n| metric_chebyshev(n, 2).unwrap().value).collect();
    // M_1 = M_2 = 2 (antipodal pair), M_3 = 2√2 (equatorial triangle)
    assert!((vals[0] - 2.0).abs() < 1e-9);
    assert!((vals[1] - 2.0).abs() < 1e-6);
    assert!((vals[2] - 8f64.sqrt()).abs() < 1e-4);
    for n in 1..5 {
        let c_prev = 2f64.powi(n as i32) / vals[n - 1];
        let c_next = 2f64.powi(n as i32 + 1) / vals[n];
        assert!(c_next >= c_prev * 0.99);
    }
}

#[test]
fn rendezvous_of_two_points_and_circle() {
    assert!((rendezvous_estimate(0, 2).unwrap().value - 1.0).abs() < 1e-9);
    let r = rendezvous_estimate(1, 48).unwrap();
    assert!(r.min_max - r.max_min <= 1e-6);
    assert!((r.value - 4.0 / std::f64::consts::PI).abs() < 2e-3);
}

#[test]
fn ellipse_in_disk_matches_closed_form() {
    let disk = ConvexBody::ball(vec![0.0, 0.0], 2.0).unwrap();
    let fit = best_ellipse(&disk, &[1.0, 0.0], &Direction::axis(2, 0)).unwrap();
    assert!((fit.b_lower - 3f64.sqrt()).abs() < 1e-6);
    assert!(fit.residual <= 1e-7, "residual {}", fit.residual);
}
