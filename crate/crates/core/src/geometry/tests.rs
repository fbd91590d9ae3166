use super::random::{random_hpolytope, random_symmetric_body, random_vpolytope};
use super::*;
use crate::sampling::{dot, norm, rng};

const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn dir(v: &[f64]) -> Direction {
    Direction::normalize(v).unwrap()
}

fn square() -> ConvexBody {
    ConvexBody::cube(2, 1.0).unwrap()
}

fn simplex2() -> ConvexBody {
    ConvexBody::simplex(2).unwrap()
}

#[test]
fn support_examples() {
    assert!(close(square().support(&dir(&[1.0, 0.0])), 1.0, 1e-15));
    let tri = ConvexBody::vpolytope(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
    assert!(close(tri.support(&dir(&[1.0, 1.0])), S, 1e-15));
    let ball = ConvexBody::ball(vec![0.0, 0.0], 2.0).unwrap();
    assert!(close(ball.support(&dir(&[0.3, -0.7])), 2.0, 1e-15));
}

#[test]
fn width_examples() {
    assert!(close(square().width(&dir(&[1.0, 0.0])), 2.0, 1e-15));
    assert!(close(simplex2().width(&dir(&[1.0, 0.0])), 1.0, 1e-15));
    assert!(close(simplex2().width(&dir(&[1.0, 1.0])), S, 1e-15));
}

#[test]
fn minimal_width_examples() {
    let ball = ConvexBody::ball(vec![0.0, 0.0], 1.0).unwrap();
    assert!(close(ball.minimal_width().0, 2.0, 1e-8));
    assert!(close(simplex2().minimal_width().0, S, 1e-8));
    let rect = ConvexBody::axis_box(vec![-1.0, -2.0], vec![1.0, 2.0]).unwrap();
    assert!(close(rect.minimal_width().0, 2.0, 1e-8));
}

#[test]
fn minimal_width_in_three_dimensions() {
    let simplex3 = ConvexBody::simplex(3).unwrap();
    // width of conv{0, e_i} is attained by (1,1,1)/√3 or by e_i−e_j type directions
    let w = simplex3.minimal_width().0;
    let grid_min = crate::sampling::sphere_points(3, 20000)
        .iter()
        .map(|u| simplex3.width_vec(u))
        .fold(f64::INFINITY, f64::min);
    assert!(w <= grid_min + 1e-8, "{w} vs {grid_min}");
    assert!(w >= grid_min - 1e-2);
}

#[test]
fn maximal_chord_examples() {
    let ball = ConvexBody::ball(vec![0.0, 0.0], 1.0).unwrap();
    assert!(close(ball.maximal_chord(&dir(&[0.2, 0.9])).unwrap(), 2.0, 1e-12));
    assert!(close(square().maximal_chord(&dir(&[1.0, 0.0])).unwrap(), 2.0, 1e-9));
    assert!(close(simplex2().maximal_chord(&dir(&[1.0, -1.0])).unwrap(), 2f64.sqrt(), 1e-8));
}

#[test]
fn gauge_and_contains_examples() {
    let ball = ConvexBody::ball(vec![0.0, 0.0], 1.0).unwrap();
    assert!(close(ball.gauge(&[0.3, 0.4]).unwrap(), 0.5, 1e-10));
    assert!(close(square().gauge(&[2.0, 0.0]).unwrap(), 2.0, 1e-10));
    assert!(!square().contains(&[2.0, 0.0]));
    let e = ConvexBody::ellipsoid(vec![0.0, 0.0], vec![vec![4.0, 0.0], vec![0.0, 1.0]]).unwrap();
    assert!(close(e.gauge(&[2.0, 0.0]).unwrap(), 1.0, 1e-10));
}

#[test]
fn gauge_rejects_asymmetric_body() {
    assert!(matches!(simplex2().gauge(&[0.1, 0.1]), Err(crate::Error::Precondition(_))));
}

#[test]
fn ellipse_fits_examples() {
    let sq = square().h_representation().unwrap();
    let mut e = InscribedEllipse {
        anchor: vec![0.0, 0.0],
        direction: dir(&[0.0, 1.0]),
        offset: vec![0.0, 0.0],
        minor: 1.0,
    };
    assert!(ellipse_fits(&sq, &e));
    e.minor = 1.5;
    assert!(!ellipse_fits(&sq, &e));
    let tri = simplex2().h_representation().unwrap();
    // centered at the centroid (offset 0): a segment of half-length 0.2 along e₁
    let c = vec![1.0 / 3.0, 1.0 / 3.0];
    let mut e = InscribedEllipse { anchor: c.clone(), direction: dir(&[1.0, 0.0]), offset: vec![0.0, 0.0], minor: 0.2 };
    assert!(ellipse_fits(&tri, &e));
    // offset = x puts the center at the origin vertex, and r(π) = −x leaves the simplex
    e.offset = c;
    assert!(!ellipse_fits(&tri, &e));
}

#[test]
fn invalid_bodies_are_rejected() {
    // half-plane
    assert!(ConvexBody::hpolytope(vec![vec![1.0, 0.0]], vec![1.0]).is_err());
    // empty
    assert!(ConvexBody::hpolytope(vec![vec![1.0], vec![-1.0]], vec![-1.0, -1.0]).is_err());
    // flat
    assert!(ConvexBody::hpolytope(vec![vec![1.0], vec![-1.0]], vec![0.0, 0.0]).is_err());
    // collinear vertices
    assert!(ConvexBody::vpolytope(vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]]).is_err());
    assert!(ConvexBody::ellipsoid(vec![0.0, 0.0], vec![vec![1.0, 2.0], vec![2.0, 1.0]]).is_err());
    assert!(ConvexBody::ball(vec![0.0], 0.0).is_err());
    assert!(Direction::new(vec![1.0, 1.0]).is_err());
}

#[test]
fn width_is_positive_and_support_is_additive() {
    let mut r = rng(11);
    for _ in 0..20 {
        let a = random_vpolytope(&mut r, 2, 6);
        let b = random_vpolytope(&mut r, 2, 5);
        let va = a.vertices().unwrap();
        let vb = b.vertices().unwrap();
        let sum: Vec<Point> = va
            .iter()
            .flat_map(|p| vb.iter().map(move |q| vec![p[0] + q[0], p[1] + q[1]]))
            .collect();
        let s = ConvexBody::vpolytope(sum).unwrap();
        for u in crate::sampling::sphere_points(2, 17) {
            assert!(a.width_vec(&u) > 0.0);
            assert!(close(s.support_vec(&u), a.support_vec(&u) + b.support_vec(&u), 1e-12));
            let u3: Vec<f64> = u.iter().map(|c| 3.0 * c).collect();
            assert!(close(a.support_vec(&u3), 3.0 * a.support_vec(&u), 1e-12));
        }
    }
}

#[test]
fn hpolytope_support_matches_lp() {
    let mut r = rng(3);
    for d in 2..=4 {
        let k = random_hpolytope(&mut r, d, 2 * d + 3);
        let h = k.h_representation().unwrap();
        for u in crate::sampling::sphere_points(d, 12) {
            let lp = h.support_lp(&u).unwrap();
            assert!(close(k.support_vec(&u), lp, 1e-7), "d={d}");
        }
    }
}

#[test]
fn chords_lie_between_minimal_width_and_diameter() {
    let mut r = rng(5);
    for _ in 0..10 {
        let k = random_hpolytope(&mut r, 2, 7);
        let w = k.minimal_width().0;
        let diam = k.diameter();
        for u in crate::sampling::sphere_points(2, 9) {
            let t = k.maximal_chord(&Direction::new(u).unwrap()).unwrap();
            assert!(t <= diam + 1e-7 && t >= w - 1e-7, "{w} {t} {diam}");
        }
    }
}

#[test]
fn vpolytope_chord_lp_matches_facets() {
    let mut r = rng(8);
    let k = random_vpolytope(&mut r, 3, 9);
    let ConvexBody::VPolytope(p) = &k else { unreachable!() };
    for u in crate::sampling::sphere_points(3, 10) {
        let via_facets = k.maximal_chord(&Direction::new(u.clone()).unwrap()).unwrap();
        let via_lp = p.maximal_chord_lp_for_tests(&u);
        assert!(close(via_facets, via_lp, 1e-7));
    }
}

#[test]
fn gauge_agrees_with_membership() {
    let mut r = rng(21);
    for d in 2..=3 {
        for _ in 0..10 {
            let k = random_symmetric_body(&mut r, d);
            for _ in 0..10 {
                let x: Vec<f64> = (0..d).map(|_| 2.0 * crate::sampling::gaussian(&mut r)).collect();
                let g = k.gauge(&x).unwrap();
                if (g - 1.0).abs() > 1e-8 {
                    assert_eq!(g <= 1.0, k.contains(&x), "gauge {g}");
                }
            }
        }
    }
}

#[test]
fn ellipse_fits_matches_sampling() {
    let mut r = rng(33);
    use rand::Rng;
    for _ in 0..30 {
        let k = random_hpolytope(&mut r, 2, 6);
        let h = k.h_representation().unwrap();
        let x: Vec<f64> = (0..2).map(|_| r.gen_range(-0.3..0.3)).collect();
        let e = InscribedEllipse {
            anchor: x.clone(),
            direction: Direction::new(crate::sampling::random_unit(&mut r, 2)).unwrap(),
            offset: (0..2).map(|_| r.gen_range(-0.3..0.3)).collect(),
            minor: r.gen_range(0.05..0.8),
        };
        let sampled = (0..10_000).all(|i| {
            let t = 2.0 * std::f64::consts::PI * i as f64 / 10_000.0;
            k.contains(&e.point(t))
        });
        let v = ellipse_violation(&h, &e);
        // sampling can only miss violations smaller than the discretisation error
        if v.abs() > 1e-6 {
            assert_eq!(ellipse_fits(&h, &e), sampled, "violation {v}");
        }
    }
}

#[test]
fn affine_image_maps_support() {
    let mut r = rng(2);
    let k = random_hpolytope(&mut r, 3, 9);
    let (m, c) = random::random_affine(&mut r, 3);
    let tk = k.affine_image(&m, &c).unwrap();
    for u in crate::sampling::sphere_points(3, 10) {
        // h(MK + c, u) = h(K, Mᵀu) + ⟨u, c⟩
        let mtu = m.transpose() * nalgebra::DVector::from_column_slice(&u);
        let want = k.support_vec(mtu.as_slice()) + dot(&u, &c);
        assert!(close(tk.support_vec(&u), want, 1e-8));
    }
    let e = random::random_ellipsoid(&mut r, 2, false);
    let (m, c) = random::random_affine(&mut r, 2);
    let te = e.affine_image(&m, &c).unwrap();
    let mtu = m.transpose() * nalgebra::DVector::from_column_slice(&[S, S]);
    assert!(close(te.support_vec(&[S, S]), e.support_vec(mtu.as_slice()) + dot(&[S, S], &c), 1e-10));
}

#[test]
fn samples_stay_in_body() {
    for k in [simplex2(), square(), ConvexBody::ball(vec![1.0, 0.0, 0.0], 0.5).unwrap()] {
        let pts = sample_body(&k, 2000);
        assert!(pts.len() >= 2000);
        assert!(pts.iter().all(|p| k.contains(p)));
        assert!(pts.iter().all(|p| norm(p).is_finite()));
    }
}
