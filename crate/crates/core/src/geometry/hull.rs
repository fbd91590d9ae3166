//! Facet enumeration (d ≤ 3) and vertex enumeration for small H-polytopes.

use nalgebra::{DMatrix, DVector};

use crate::geometry::Point;
use crate::sampling::{dot, norm};

/// Andrew's monotone chain. Returns the hull in counter-clockwise order
/// without repeated endpoint; collinear points are dropped.
pub fn convex_hull_2d(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<(f64, f64)> = points.iter().map(|p| (p[0], p[1])).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-14 && (a.1 - b.1).abs() < 1e-14);
    if pts.len() < 3 {
        return pts.into_iter().map(|(x, y)| vec![x, y]).collect();
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 1e-14 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 1e-14 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower.into_iter().map(|(x, y)| vec![x, y]).collect()
}

/// Shoelace area of a simple polygon.
pub fn polygon_area(poly: &[Point]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..n {
        let j = (i + 1) % n;
        s += poly[i][0] * poly[j][1] - poly[j][0] * poly[i][1];
    }
    0.5 * s.abs()
}

pub(crate) fn dedup_points(points: &[Point], tol: f64) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    for p in points {
        if !out.iter().any(|q| dist(p, q) <= tol) {
            out.push(p.clone());
        }
    }
    out
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Facets `(unit outward normal, offset)` of the convex hull of `points` in
/// dimension 1, 2 or 3. Returns `None` in higher dimension.
pub(crate) fn facets(points: &[Point]) -> Option<Vec<(Vec<f64>, f64)>> {
    let d = points.first()?.len();
    match d {
        1 => {
            let lo = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
            let hi = points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
            Some(vec![(vec![1.0], hi), (vec![-1.0], -lo)])
        }
        2 => {
            let hull = convex_hull_2d(points);
            let n = hull.len();
            let mut out = Vec::with_capacity(n);
            for i in 0..n {
                let p = &hull[i];
                let q = &hull[(i + 1) % n];
                let nrm = [q[1] - p[1], p[0] - q[0]];
                let l = norm(&nrm);
                let u = vec![nrm[0] / l, nrm[1] / l];
                let off = dot(&u, p);
                out.push((u, off));
            }
            Some(out)
        }
        3 => {
            let pts = dedup_points(points, 1e-12);
            let scale = pts.iter().map(|p| norm(p)).fold(1.0, f64::max);
            let tol = 1e-10 * scale;
            let mut out: Vec<(Vec<f64>, f64)> = Vec::new();
            let m = pts.len();
            for i in 0..m {
                for j in i + 1..m {
                    for k in j + 1..m {
                        let u = sub(&pts[j], &pts[i]);
                        let v = sub(&pts[k], &pts[i]);
                        let c = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
                        let l = norm(&c);
                        if l < 1e-12 * scale * scale {
                            continue;
                        }
                        let nrm = vec![c[0] / l, c[1] / l, c[2] / l];
                        let off = dot(&nrm, &pts[i]);
                        let side: Vec<f64> = pts.iter().map(|p| dot(&nrm, p) - off).collect();
                        let cand = if side.iter().all(|&s| s <= tol) {
                            Some((nrm, off))
                        } else if side.iter().all(|&s| s >= -tol) {
                            Some((nrm.iter().map(|x| -x).collect(), -off))
                        } else {
                            None
                        };
                        if let Some((nv, ov)) = cand {
                            let dup = out.iter().any(|(n2, o2)| dist(n2, &nv) < 1e-9 && (o2 - ov).abs() < 1e-9 * scale);
                            if !dup {
                                out.push((nv, ov));
                            }
                        }
                    }
                }
            }
            Some(out)
        }
        _ => None,
    }
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}

/// Brute-force vertex enumeration of `{x : ⟨a_i, x⟩ ≤ b_i}` by intersecting
/// every `d`-subset of constraints. Returns `None` when the number of
/// subsets exceeds `max_subsets`.
pub(crate) fn enumerate_vertices(normals: &[Vec<f64>], offsets: &[f64], max_subsets: f64) -> Option<Vec<Point>> {
    let m = normals.len();
    let d = normals.first()?.len();
    if binomial(m, d) > max_subsets {
        return None;
    }
    let scale = offsets.iter().map(|b| b.abs()).fold(1.0, f64::max);
    let mut out: Vec<Point> = Vec::new();
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        let a = DMatrix::from_fn(d, d, |r, c| normals[idx[r]][c]);
        let b = DVector::from_fn(d, |r, _| offsets[idx[r]]);
        let lu = a.clone().lu();
        let det = lu.determinant();
        if det.abs() > 1e-12 {
            if let Some(x) = lu.solve(&b) {
                let x: Vec<f64> = x.iter().copied().collect();
                let feasible = normals.iter().zip(offsets).all(|(ai, &bi)| dot(ai, &x) <= bi + 1e-9 * scale);
                if feasible && !out.iter().any(|q| dist(q, &x) < 1e-9 * scale) {
                    out.push(x);
                }
            }
        }
        // next combination
        let mut i = d;
        loop {
            if i == 0 {
                return Some(out);
            }
            i -= 1;
            if idx[i] < m - d + i {
                idx[i] += 1;
                for j in i + 1..d {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}
