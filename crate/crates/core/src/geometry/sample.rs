use super::{ConvexBody, Point};
use crate::sampling::{radical_inverse, sphere_points};

/// Deterministic point cloud on and inside `body`, used wherever a sup-norm
/// over the body is estimated.
///
/// Contains the vertices (for polytopes), support points, boundary points
/// along rays from an interior point and radially stratified interior points.
/// The total length is `count` plus the vertex count.
pub fn sample_body(body: &ConvexBody, count: usize) -> Vec<Point> {
    let d = body.dim();
    let c = body.interior_point();
    let mut out: Vec<Point> = body.vertices().unwrap_or_default();
    if d == 1 {
        let (lo, hi) = body.bounding_box();
        out.extend((0..count).map(|i| vec![lo[0] + (hi[0] - lo[0]) * i as f64 / (count.max(2) - 1) as f64]));
        return out;
    }
    let n_support = count / 8;
    let n_boundary = (3 * count) / 8;
    let n_interior = count - n_support - n_boundary;
    for u in sphere_points(d, n_support) {
        out.push(body.support_point(&u));
    }
    for u in sphere_points(d, n_boundary) {
        let s = body.ray_exit(&c, &u);
        out.push(c.iter().zip(&u).map(|(ci, ui)| ci + s * ui).collect());
    }
    let dirs = sphere_points(d, n_interior);
    for (i, u) in dirs.iter().enumerate() {
        let s = body.ray_exit(&c, u) * radical_inverse(i as u64 + 1, 3).powf(1.0 / d as f64);
        out.push(c.iter().zip(u).map(|(ci, ui)| ci + s * ui).collect());
    }
    out
}
