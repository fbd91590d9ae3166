//! Convex bodies and the elementary functionals on them: support, width,
//! minimal width, maximal chord, membership and the gauge.
//!
//! Every representation is validated at construction (bounded, nonempty
//! interior), so the functionals below are total. Conversions between
//! representations are explicit ([`ConvexBody::h_representation`],
//! [`ConvexBody::affine_image`]).

mod body;
mod hull;
pub mod io;
pub mod random;
mod sample;

pub use body::{AxisBox, Ball, ConvexBody, Ellipsoid, HPolytope, StandardSimplex, VPolytope};
pub use hull::{convex_hull_2d, polygon_area};
pub use sample::sample_body;

use crate::error::{Error, Result};
use crate::sampling::norm;

/// Absolute tolerance of geometric predicates.
pub const GEOM_TOL: f64 = 1e-10;

pub type Point = Vec<f64>;

/// A unit vector of ℝ^d, used as a linear functional through the Euclidean
/// inner product.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction(Vec<f64>);

impl Direction {
    /// Wraps `components`, which must already have unit norm (±1e-12).
    pub fn new(components: Vec<f64>) -> Result<Self> {
        let n = norm(&components);
        if components.is_empty() || (n - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidDirection(format!("norm {n} is not 1")));
        }
        Ok(Direction(components))
    }

    /// Normalizes a nonzero vector.
    pub fn normalize(v: &[f64]) -> Result<Self> {
        let n = norm(v);
        if !(n > 1e-300) || !n.is_finite() {
            return Err(Error::InvalidDirection("zero or non-finite vector".into()));
        }
        Ok(Direction(v.iter().map(|c| c / n).collect()))
    }

    pub fn axis(dim: usize, i: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        Direction(v)
    }

    pub fn from_angle(theta: f64) -> Self {
        Direction(vec![theta.cos(), theta.sin()])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn neg(&self) -> Direction {
        Direction(self.0.iter().map(|c| -c).collect())
    }
}

impl AsRef<[f64]> for Direction {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// The ellipse `r(t) = cos t·a + b sin t·y + x − a`, which passes through the
/// anchor `x` at `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct InscribedEllipse {
    pub anchor: Point,
    pub direction: Direction,
    pub offset: Vec<f64>,
    pub minor: f64,
}

impl InscribedEllipse {
    pub fn point(&self, t: f64) -> Point {
        let (s, c) = t.sin_cos();
        self.anchor
            .iter()
            .zip(&self.offset)
            .zip(self.direction.as_slice())
            .map(|((x, a), y)| c * a + self.minor * s * y + x - a)
            .collect()
    }
}

/// Closed-form test that the ellipse lies in the H-polytope: for every facet,
/// `max_t ⟨a_i, r(t)⟩ = ⟨a_i, x − a⟩ + √(⟨a_i,a⟩² + b²⟨a_i,y⟩²) ≤ b_i`.
pub fn ellipse_fits(body: &HPolytope, e: &InscribedEllipse) -> bool {
    ellipse_violation(body, e) <= GEOM_TOL
}

/// Largest facet excess `max_t ⟨a_i, r(t)⟩ − b_i` over all facets.
pub fn ellipse_violation(body: &HPolytope, e: &InscribedEllipse) -> f64 {
    body.normals()
        .iter()
        .zip(body.offsets())
        .map(|(a, &b)| {
            let mut lin = 0.0;
            let mut aa = 0.0;
            let mut ay = 0.0;
            for k in 0..a.len() {
                lin += a[k] * (e.anchor[k] - e.offset[k]);
                aa += a[k] * e.offset[k];
                ay += a[k] * e.direction.as_slice()[k];
            }
            lin + (aa * aa + e.minor * e.minor * ay * ay).sqrt() - b
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests;
