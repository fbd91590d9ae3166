//! Randomized properties checked against closed forms.

use proptest::prelude::*;

use polyineq_core::bernstein::best_ellipse;
use polyineq_core::chebyshev::cheb_t;
use polyineq_core::minkowski::alpha;
use polyineq_core::polarization::{product_sup, FunctionalConfig};
use polyineq_core::{ConvexBody, Direction, Field};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn alpha_on_boxes_is_the_weighted_max_norm(
        h in prop::collection::vec(0.2f64..3.0, 2..=3),
        t in prop::collection::vec(-4.0f64..4.0, 3),
    ) {
        let d = h.len();
        let k = ConvexBody::axis_box(h.iter().map(|v| -v).collect(), h.clone()).unwrap();
        let x: Vec<f64> = t[..d].to_vec();
        let want = x.iter().zip(&h).map(|(a, b)| a.abs() / b).fold(0.0, f64::max);
        prop_assert!((alpha(&k, &x).unwrap() - want).abs() < 1e-9);
    }

    #[test]
    fn alpha_on_the_triangle(x1 in -2.0f64..3.0, x2 in -2.0f64..3.0) {
        // supporting layers 0 ≤ z1 ≤ 1, 0 ≤ z2 ≤ 1, 0 ≤ z1 + z2 ≤ 1
        let want = (2.0 * x1 - 1.0).abs().max((2.0 * x2 - 1.0).abs()).max((2.0 * (x1 + x2) - 1.0).abs());
        let k = ConvexBody::simplex(2).unwrap();
        prop_assert!((alpha(&k, &[x1, x2]).unwrap() - want).abs() < 1e-9);
    }

    #[test]
    fn chebyshev_trigonometric_forms(n in 0u32..40, th in 0.0f64..std::f64::consts::PI, s in 0.0f64..2.0) {
        prop_assert!((cheb_t(n, th.cos()) - (n as f64 * th).cos()).abs() < 1e-11);
        let want = (n as f64 * s).cosh();
        prop_assert!((cheb_t(n, s.cosh()) - want).abs() <= 1e-11 * want);
    }

    #[test]
    fn ellipse_along_a_box_side(a in 0.5f64..3.0, c in 0.5f64..3.0, u in -0.95f64..0.95) {
        let k = ConvexBody::axis_box(vec![-a, -c], vec![a, c]).unwrap();
        let s = u * a;
        let fit = best_ellipse(&k, &[s, 0.0], &Direction::axis(2, 0)).unwrap();
        prop_assert!((fit.b_lower - (a * a - s * s).sqrt()).abs() < 1e-7);
    }

    #[test]
    fn product_sup_ignores_signs_and_is_at_most_one(
        angles in prop::collection::vec(0.0f64..std::f64::consts::TAU, 1..6),
        flips in prop::collection::vec(any::<bool>(), 6),
    ) {
        let vs: Vec<Vec<f64>> = angles.iter().map(|t| vec![t.cos(), t.sin()]).collect();
        let flipped: Vec<Vec<f64>> = vs
            .iter()
            .zip(&flips)
            .map(|(v, &f)| if f { v.iter().map(|c| -c).collect() } else { v.clone() })
            .collect();
        let a = product_sup(&FunctionalConfig::new(Field::Real, 2, vs).unwrap()).unwrap();
        let b = product_sup(&FunctionalConfig::new(Field::Real, 2, flipped).unwrap()).unwrap();
        prop_assert!(a.inner_value <= 1.0 + 1e-12);
        prop_assert!((a.inner_value - b.inner_value).abs() < 1e-12);
    }
}
