//! Random bodies and affine maps for property tests and the acceptance suite.

use nalgebra::DMatrix;
use rand::Rng;

use super::{ConvexBody, Point};
use crate::sampling::{gaussian, random_unit};

/// H-polytope with `m` random unit normals and offsets in `[0.5, 1.5]`, so the
/// origin is interior. Redraws until the normals positively span.
pub fn random_hpolytope<R: Rng>(rng: &mut R, dim: usize, m: usize) -> ConvexBody {
    let m = m.max(dim + 1);
    loop {
        let normals: Vec<Vec<f64>> = (0..m).map(|_| random_unit(rng, dim)).collect();
        let offsets: Vec<f64> = (0..m).map(|_| rng.gen_range(0.5..1.5)).collect();
        if let Ok(b) = ConvexBody::hpolytope(normals, offsets) {
            return b;
        }
    }
}

/// Origin-symmetric H-polytope from `pairs` constraint pairs `±⟨a, x⟩ ≤ b`.
pub fn random_symmetric_hpolytope<R: Rng>(rng: &mut R, dim: usize, pairs: usize) -> ConvexBody {
    let pairs = pairs.max(dim);
    loop {
        let mut normals = Vec::with_capacity(2 * pairs);
        let mut offsets = Vec::with_capacity(2 * pairs);
        for _ in 0..pairs {
            let a = random_unit(rng, dim);
            let b = rng.gen_range(0.5..1.5);
            normals.push(a.iter().map(|c| -c).collect());
            normals.push(a);
            offsets.push(b);
            offsets.push(b);
        }
        if let Ok(b) = ConvexBody::hpolytope(normals, offsets) {
            return b;
        }
    }
}

/// Convex hull of `m` Gaussian points.
pub fn random_vpolytope<R: Rng>(rng: &mut R, dim: usize, m: usize) -> ConvexBody {
    let m = m.max(dim + 1);
    loop {
        let pts: Vec<Point> = (0..m).map(|_| (0..dim).map(|_| gaussian(rng)).collect()).collect();
        if let Ok(b) = ConvexBody::vpolytope(pts) {
            return b;
        }
    }
}

/// Ellipsoid with semi-axes in `[0.5, 2]`, centered at the origin when
/// `centered`, otherwise at a Gaussian point.
pub fn random_ellipsoid<R: Rng>(rng: &mut R, dim: usize, centered: bool) -> ConvexBody {
    let rot = random_orthogonal(rng, dim);
    let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_fn(dim, |_, _| {
        let s: f64 = rng.gen_range(0.5..2.0);
        s * s
    }));
    let q = &rot * diag * rot.transpose();
    let q = (&q + q.transpose()) * 0.5;
    let center = if centered { vec![0.0; dim] } else { (0..dim).map(|_| gaussian(rng)).collect() };
    let shape = (0..dim).map(|r| (0..dim).map(|c| q[(r, c)]).collect()).collect();
    ConvexBody::ellipsoid(center, shape).expect("positive definite by construction")
}

/// One of: symmetric H-polytope, centered ellipsoid, centered box.
pub fn random_symmetric_body<R: Rng>(rng: &mut R, dim: usize) -> ConvexBody {
    match rng.gen_range(0..3) {
        0 => {
            let pairs = dim + rng.gen_range(1..5);
            random_symmetric_hpolytope(rng, dim, pairs)
        }
        1 => random_ellipsoid(rng, dim, true),
        _ => {
            let h: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.5..2.0)).collect();
            ConvexBody::axis_box(h.iter().map(|c| -c).collect(), h).expect("box")
        }
    }
}

fn random_orthogonal<R: Rng>(rng: &mut R, dim: usize) -> DMatrix<f64> {
    DMatrix::from_fn(dim, dim, |_, _| gaussian(rng)).qr().q()
}

/// Affine map `z ↦ M z + c` with singular values of `M` in `[0.5, 2]`.
pub fn random_affine<R: Rng>(rng: &mut R, dim: usize) -> (DMatrix<f64>, Vec<f64>) {
    let u = random_orthogonal(rng, dim);
    let v = random_orthogonal(rng, dim);
    let s = DMatrix::from_diagonal(&nalgebra::DVector::from_fn(dim, |_, _| rng.gen_range(0.5..2.0)));
    let c: Vec<f64> = (0..dim).map(|_| gaussian(rng)).collect();
    (u * s * v.transpose(), c)
}
