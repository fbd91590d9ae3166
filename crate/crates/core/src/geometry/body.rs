use nalgebra::{DMatrix, DVector};

use super::hull::{dedup_points, enumerate_vertices, facets};
use super::{Direction, Point, GEOM_TOL};
use crate::error::{check_dim, Error, Result};
use crate::lp::{LinearProgram, LpFailure, Sense};
use crate::optimize::{periodic_grid_max, sphere_pattern_search_max};
use crate::sampling::{dot, norm, rng, sphere_points};

/// Vertex enumeration is skipped above this many constraint subsets and the
/// support functional falls back to linear programming.
const MAX_VERTEX_SUBSETS: f64 = 250_000.0;

/// `{x : ⟨a_i, x⟩ ≤ b_i}` with unit normals `a_i`.
#[derive(Debug, Clone)]
pub struct HPolytope {
    normals: Vec<Vec<f64>>,
    offsets: Vec<f64>,
    center: Point,
    inradius: f64,
    vertices: Option<Vec<Point>>,
}

impl HPolytope {
    /// Builds the polytope, normalizing each row to a unit normal.
    ///
    /// Rejects zero normals, unbounded sets (checked by maximizing `±x_i`)
    /// and sets without interior (Chebyshev ball radius ≤ 1e-9).
    pub fn new(normals: Vec<Vec<f64>>, offsets: Vec<f64>) -> Result<Self> {
        if normals.is_empty() {
            return Err(Error::InvalidBody("no constraints".into()));
        }
        if normals.len() != offsets.len() {
            return Err(Error::InvalidBody(format!(
                "{} normals but {} offsets",
                normals.len(),
                offsets.len()
            )));
        }
        let d = normals[0].len();
        if d == 0 {
            return Err(Error::InvalidBody("zero-dimensional normals".into()));
        }
        let mut un = Vec::with_capacity(normals.len());
        let mut uo = Vec::with_capacity(offsets.len());
        for (i, (a, b)) in normals.iter().zip(&offsets).enumerate() {
            check_dim(d, a.len())?;
            let n = norm(a);
            if !(n > 1e-14) || !b.is_finite() {
                return Err(Error::InvalidBody(format!("constraint {i} is degenerate")));
            }
            un.push(a.iter().map(|c| c / n).collect::<Vec<f64>>());
            uo.push(b / n);
        }

        for i in 0..d {
            for sgn in [1.0, -1.0] {
                let mut obj = vec![0.0; d];
                obj[i] = sgn;
                let mut lp = LinearProgram::new(d, Sense::Maximize, obj);
                for (a, &b) in un.iter().zip(&uo) {
                    lp.add_le(a.clone(), b);
                }
                match lp.solve() {
                    Ok(_) => {}
                    Err(LpFailure::Unbounded) => {
                        return Err(Error::InvalidBody("H-polytope is unbounded".into()));
                    }
                    Err(LpFailure::Infeasible) => {
                        return Err(Error::InvalidBody("H-polytope is empty".into()));
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        }

        // Chebyshev ball: max r s.t. ⟨a_i, c⟩ + r ≤ b_i.
        let mut obj = vec![0.0; d + 1];
        obj[d] = 1.0;
        let mut lp = LinearProgram::new(d + 1, Sense::Maximize, obj);
        for (a, &b) in un.iter().zip(&uo) {
            let mut row = a.clone();
            row.push(1.0);
            lp.add_le(row, b);
        }
        let sol = lp.solve().map_err(Error::from)?;
        let inradius = sol.x[d];
        if !(inradius > 1e-9) {
            return Err(Error::InvalidBody("H-polytope has empty interior".into()));
        }
        let center = sol.x[..d].to_vec();
        let vertices = enumerate_vertices(&un, &uo, MAX_VERTEX_SUBSETS);
        Ok(HPolytope {
            normals: un,
            offsets: uo,
            center,
            inradius,
            vertices,
        })
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn normals(&self) -> &[Vec<f64>] {
        &self.normals
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    /// Center of the largest inscribed ball.
    pub fn chebyshev_center(&self) -> &[f64] {
        &self.center
    }

    pub fn inradius(&self) -> f64 {
        self.inradius
    }

    /// Enumerated vertices, when the constraint count made that affordable.
    pub fn vertices(&self) -> Option<&[Point]> {
        self.vertices.as_deref()
    }

    /// `sup_K ⟨u, x⟩` by linear programming; the independent route to
    /// [`ConvexBody::support`] for H-polytopes.
    pub fn support_lp(&self, u: &[f64]) -> Result<f64> {
        check_dim(self.dim(), u.len())?;
        let mut lp = LinearProgram::new(self.dim(), Sense::Maximize, u.to_vec());
        for (a, &b) in self.normals.iter().zip(&self.offsets) {
            lp.add_le(a.clone(), b);
        }
        match lp.solve() {
            Ok(s) => Ok(s.value),
            Err(LpFailure::Unbounded) => Err(Error::InvalidBody("support LP is unbounded".into())),
            Err(e) => Err(e.into()),
        }
    }

    fn support(&self, u: &[f64]) -> f64 {
        match &self.vertices {
            Some(v) => v.iter().map(|p| dot(p, u)).fold(f64::NEG_INFINITY, f64::max),
            None => self
                .support_lp(u)
                .expect("support LP of a validated H-polytope cannot be unbounded"),
        }
    }

    fn contains(&self, x: &[f64]) -> bool {
        self.normals
            .iter()
            .zip(&self.offsets)
            .all(|(a, &b)| dot(a, x) <= b + GEOM_TOL)
    }

    fn ray_exit(&self, c: &[f64], u: &[f64]) -> f64 {
        let mut s = f64::INFINITY;
        for (a, &b) in self.normals.iter().zip(&self.offsets) {
            let au = dot(a, u);
            if au > 1e-15 {
                s = s.min((b - dot(a, c)) / au);
            }
        }
        s
    }

    /// `max t` s.t. `x ∈ K`, `x + t·y ∈ K`.
    fn maximal_chord(&self, y: &[f64]) -> Result<f64> {
        let d = self.dim();
        let mut obj = vec![0.0; d + 1];
        obj[d] = 1.0;
        let mut lp = LinearProgram::new(d + 1, Sense::Maximize, obj);
        for (a, &b) in self.normals.iter().zip(&self.offsets) {
            let mut row = a.clone();
            row.push(0.0);
            lp.add_le(row, b);
            let mut row = a.clone();
            row.push(dot(a, y));
            lp.add_le(row, b);
        }
        Ok(lp.solve().map_err(Error::from)?.value)
    }
}

/// Convex hull of a finite point set.
#[derive(Debug, Clone)]
pub struct VPolytope {
    vertices: Vec<Point>,
    hrep: Option<HPolytope>,
    centroid: Point,
}

impl VPolytope {
    /// Requires at least `d + 1` affinely independent points. In dimension
    /// ≤ 3 the facets are enumerated once and kept for membership and chords.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let d = vertices.first().map(|v| v.len()).unwrap_or(0);
        if d == 0 {
            return Err(Error::InvalidBody("no vertices".into()));
        }
        for v in &vertices {
            check_dim(d, v.len())?;
            if v.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidBody("non-finite vertex".into()));
            }
        }
        let vertices = dedup_points(&vertices, 0.0);
        if vertices.len() < d + 1 {
            return Err(Error::InvalidBody(format!("need at least {} vertices", d + 1)));
        }
        let m = DMatrix::from_fn(vertices.len() - 1, d, |r, c| vertices[r + 1][c] - vertices[0][c]);
        let scale = vertices.iter().map(|v| norm(v)).fold(1.0, f64::max);
        if m.rank(1e-9 * scale) < d {
            return Err(Error::InvalidBody("vertices are not affinely spanning".into()));
        }
        let mut centroid = vec![0.0; d];
        for v in &vertices {
            for k in 0..d {
                centroid[k] += v[k] / vertices.len() as f64;
            }
        }
        let hrep = match facets(&vertices) {
            Some(f) => {
                let (n, o): (Vec<_>, Vec<_>) = f.into_iter().unzip();
                Some(HPolytope::new(n, o)?)
            }
            None => None,
        };
        Ok(VPolytope {
            vertices,
            hrep,
            centroid,
        })
    }

    pub fn dim(&self) -> usize {
        self.centroid.len()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// H-representation from facet enumeration (available for d ≤ 3).
    pub fn facets(&self) -> Option<&HPolytope> {
        self.hrep.as_ref()
    }

    fn contains_lp(&self, x: &[f64]) -> bool {
        // min Σ(s⁺ + s⁻) s.t. Vλ − s⁺ + s⁻ = x, Σλ = 1, λ, s ≥ 0.
        let d = self.dim();
        let m = self.vertices.len();
        let ncols = m + 2 * d;
        let mut obj = vec![0.0; ncols];
        for c in obj.iter_mut().skip(m) {
            *c = 1.0;
        }
        let mut lp = LinearProgram::new(ncols, Sense::Minimize, obj);
        for k in 0..d {
            let mut row = vec![0.0; ncols];
            for (j, v) in self.vertices.iter().enumerate() {
                row[j] = v[k];
            }
            row[m + k] = -1.0;
            row[m + d + k] = 1.0;
            lp.add_eq(row, x[k]);
        }
        let mut row = vec![0.0; ncols];
        for c in row.iter_mut().take(m) {
            *c = 1.0;
        }
        lp.add_eq(row, 1.0);
        for j in 0..ncols {
            lp.nonneg(j);
        }
        lp.solve().map(|s| s.value <= GEOM_TOL).unwrap_or(false)
    }

    fn maximal_chord_lp(&self, y: &[f64]) -> Result<f64> {
        // max t s.t. Vλ + t·y − Vμ = 0, Σλ = Σμ = 1, λ, μ ≥ 0.
        let d = self.dim();
        let m = self.vertices.len();
        let ncols = 2 * m + 1;
        let mut obj = vec![0.0; ncols];
        obj[2 * m] = 1.0;
        let mut lp = LinearProgram::new(ncols, Sense::Maximize, obj);
        for k in 0..d {
            let mut row = vec![0.0; ncols];
            for (j, v) in self.vertices.iter().enumerate() {
                row[j] = v[k];
                row[m + j] = -v[k];
            }
            row[2 * m] = y[k];
            lp.add_eq(row, 0.0);
        }
        let mut r1 = vec![0.0; ncols];
        let mut r2 = vec![0.0; ncols];
        for j in 0..m {
            r1[j] = 1.0;
            r2[m + j] = 1.0;
        }
        lp.add_eq(r1, 1.0);
        lp.add_eq(r2, 1.0);
        for j in 0..2 * m {
            lp.nonneg(j);
        }
        Ok(lp.solve().map_err(Error::from)?.value)
    }

    #[cfg(test)]
    pub(crate) fn maximal_chord_lp_for_tests(&self, y: &[f64]) -> f64 {
        self.maximal_chord_lp(y).unwrap()
    }

    fn ray_exit_lp(&self, c: &[f64], u: &[f64]) -> f64 {
        // max s s.t. c + s·u = Vλ, Σλ = 1, λ ≥ 0.
        let d = self.dim();
        let m = self.vertices.len();
        let mut obj = vec![0.0; m + 1];
        obj[m] = 1.0;
        let mut lp = LinearProgram::new(m + 1, Sense::Maximize, obj);
        for k in 0..d {
            let mut row: Vec<f64> = self.vertices.iter().map(|v| v[k]).collect();
            row.push(-u[k]);
            lp.add_eq(row, c[k]);
        }
        let mut row = vec![1.0; m];
        row.push(0.0);
        lp.add_eq(row, 1.0);
        for j in 0..m {
            lp.nonneg(j);
        }
        lp.solve().map(|s| s.value).unwrap_or(0.0)
    }
}

/// `{x : (x − c)ᵀ Q⁻¹ (x − c) ≤ 1}` with `Q` symmetric positive definite.
#[derive(Debug, Clone)]
pub struct Ellipsoid {
    center: Point,
    shape: DMatrix<f64>,
    shape_inv: DMatrix<f64>,
    eig_min: f64,
    eig_max: f64,
}

impl Ellipsoid {
    pub fn new(center: Point, shape: Vec<Vec<f64>>) -> Result<Self> {
        let d = center.len();
        if d == 0 || shape.len() != d {
            return Err(Error::InvalidBody("shape matrix must be d×d".into()));
        }
        for row in &shape {
            check_dim(d, row.len())?;
        }
        let q = DMatrix::from_fn(d, d, |r, c| shape[r][c]);
        Self::from_matrix(center, q)
    }

    pub fn from_matrix(center: Point, q: DMatrix<f64>) -> Result<Self> {
        let d = center.len();
        if q.nrows() != d || q.ncols() != d {
            return Err(Error::InvalidBody("shape matrix must be d×d".into()));
        }
        let scale = q.amax().max(1e-300);
        if (&q - q.transpose()).amax() > 1e-12 * scale {
            return Err(Error::InvalidBody("shape matrix is not symmetric".into()));
        }
        let q = (&q + q.transpose()) * 0.5;
        let eig = q.clone().symmetric_eigen();
        let eig_min = eig.eigenvalues.min();
        let eig_max = eig.eigenvalues.max();
        if !(eig_min > 1e-14 * scale) {
            return Err(Error::InvalidBody("shape matrix is not positive definite".into()));
        }
        let shape_inv = q
            .clone()
            .cholesky()
            .ok_or_else(|| Error::InvalidBody("shape matrix is not positive definite".into()))?
            .inverse();
        Ok(Ellipsoid {
            center,
            shape: q,
            shape_inv,
            eig_min,
            eig_max,
        })
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn shape(&self) -> &DMatrix<f64> {
        &self.shape
    }

    pub fn shape_inverse(&self) -> &DMatrix<f64> {
        &self.shape_inv
    }

    /// Smallest and largest eigenvalue of the shape matrix (squared semi-axes).
    pub fn eigen_range(&self) -> (f64, f64) {
        (self.eig_min, self.eig_max)
    }

    fn quad(m: &DMatrix<f64>, v: &[f64]) -> f64 {
        let v = DVector::from_column_slice(v);
        (v.transpose() * m * &v)[(0, 0)]
    }

    /// `(x − c)ᵀ Q⁻¹ (x − c)`.
    pub fn level(&self, x: &[f64]) -> f64 {
        let diff: Vec<f64> = x.iter().zip(&self.center).map(|(a, b)| a - b).collect();
        Self::quad(&self.shape_inv, &diff)
    }

    fn support(&self, u: &[f64]) -> f64 {
        dot(u, &self.center) + Self::quad(&self.shape, u).max(0.0).sqrt()
    }

    fn support_point(&self, u: &[f64]) -> Point {
        let qu = &self.shape * DVector::from_column_slice(u);
        let s = dot(u, qu.as_slice()).max(1e-300).sqrt();
        self.center.iter().zip(qu.iter()).map(|(c, q)| c + q / s).collect()
    }

    fn ray_exit(&self, c: &[f64], u: &[f64]) -> f64 {
        // (c + s u − c0)ᵀ P (c + s u − c0) = 1
        let w: Vec<f64> = c.iter().zip(&self.center).map(|(a, b)| a - b).collect();
        let a = Self::quad(&self.shape_inv, u);
        let pw = &self.shape_inv * DVector::from_column_slice(&w);
        let b = 2.0 * dot(u, pw.as_slice());
        let cc = dot(&w, pw.as_slice()) - 1.0;
        let disc = (b * b - 4.0 * a * cc).max(0.0);
        (-b + disc.sqrt()) / (2.0 * a)
    }
}

#[derive(Debug, Clone)]
pub struct Ball {
    center: Point,
    radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if center.is_empty() {
            return Err(Error::InvalidBody("empty center".into()));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidBody("radius must be positive".into()));
        }
        Ok(Ball { center, radius })
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// Axis-aligned box `[lower, upper]`.
#[derive(Debug, Clone)]
pub struct AxisBox {
    lower: Point,
    upper: Point,
}

impl AxisBox {
    pub fn new(lower: Point, upper: Point) -> Result<Self> {
        check_dim(lower.len(), upper.len())?;
        if lower.is_empty() {
            return Err(Error::InvalidBody("empty box".into()));
        }
        if lower.iter().zip(&upper).any(|(l, u)| !(u > l) || !l.is_finite() || !u.is_finite()) {
            return Err(Error::InvalidBody("box requires lower < upper in every coordinate".into()));
        }
        Ok(AxisBox { lower, upper })
    }

    /// `[-r, r]^d`.
    pub fn cube(dim: usize, r: f64) -> Result<Self> {
        AxisBox::new(vec![-r; dim], vec![r; dim])
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }
}

/// `conv{0, e_1, …, e_d}`.
#[derive(Debug, Clone)]
pub struct StandardSimplex {
    dim: usize,
}

impl StandardSimplex {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidBody("simplex dimension must be positive".into()));
        }
        Ok(StandardSimplex { dim })
    }

    pub fn vertices(&self) -> Vec<Point> {
        let mut v = vec![vec![0.0; self.dim]];
        for i in 0..self.dim {
            let mut e = vec![0.0; self.dim];
            e[i] = 1.0;
            v.push(e);
        }
        v
    }
}

/// A bounded convex set of ℝ^d with nonempty interior.
#[derive(Debug, Clone)]
pub enum ConvexBody {
    HPolytope(HPolytope),
    VPolytope(VPolytope),
    Ellipsoid(Ellipsoid),
    Ball(Ball),
    Box(AxisBox),
    Simplex(StandardSimplex),
}

impl From<HPolytope> for ConvexBody {
    fn from(p: HPolytope) -> Self {
        ConvexBody::HPolytope(p)
    }
}
impl From<VPolytope> for ConvexBody {
    fn from(p: VPolytope) -> Self {
        ConvexBody::VPolytope(p)
    }
}
impl From<Ellipsoid> for ConvexBody {
    fn from(p: Ellipsoid) -> Self {
        ConvexBody::Ellipsoid(p)
    }
}
impl From<Ball> for ConvexBody {
    fn from(p: Ball) -> Self {
        ConvexBody::Ball(p)
    }
}
impl From<AxisBox> for ConvexBody {
    fn from(p: AxisBox) -> Self {
        ConvexBody::Box(p)
    }
}
impl From<StandardSimplex> for ConvexBody {
    fn from(p: StandardSimplex) -> Self {
        ConvexBody::Simplex(p)
    }
}

impl ConvexBody {
    pub fn hpolytope(normals: Vec<Vec<f64>>, offsets: Vec<f64>) -> Result<Self> {
        Ok(HPolytope::new(normals, offsets)?.into())
    }

    pub fn vpolytope(vertices: Vec<Point>) -> Result<Self> {
        Ok(VPolytope::new(vertices)?.into())
    }

    pub fn ellipsoid(center: Point, shape: Vec<Vec<f64>>) -> Result<Self> {
        Ok(Ellipsoid::new(center, shape)?.into())
    }

    pub fn ball(center: Point, radius: f64) -> Result<Self> {
        Ok(Ball::new(center, radius)?.into())
    }

    pub fn axis_box(lower: Point, upper: Point) -> Result<Self> {
        Ok(AxisBox::new(lower, upper)?.into())
    }

    /// `[-r, r]^d`.
    pub fn cube(dim: usize, r: f64) -> Result<Self> {
        Ok(AxisBox::cube(dim, r)?.into())
    }

    pub fn simplex(dim: usize) -> Result<Self> {
        Ok(StandardSimplex::new(dim)?.into())
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::HPolytope(p) => p.dim(),
            ConvexBody::VPolytope(p) => p.dim(),
            ConvexBody::Ellipsoid(e) => e.center.len(),
            ConvexBody::Ball(b) => b.center.len(),
            ConvexBody::Box(b) => b.lower.len(),
            ConvexBody::Simplex(s) => s.dim,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ConvexBody::HPolytope(_) => "hpoly",
            ConvexBody::VPolytope(_) => "vpoly",
            ConvexBody::Ellipsoid(_) => "ellipsoid",
            ConvexBody::Ball(_) => "ball",
            ConvexBody::Box(_) => "box",
            ConvexBody::Simplex(_) => "simplex",
        }
    }

    /// `h(K, u) = sup_{x∈K} ⟨u, x⟩` for any (not necessarily unit) `u`.
    pub fn support_vec(&self, u: &[f64]) -> f64 {
        debug_assert_eq!(u.len(), self.dim());
        match self {
            ConvexBody::HPolytope(p) => p.support(u),
            ConvexBody::VPolytope(p) => p.vertices.iter().map(|v| dot(v, u)).fold(f64::NEG_INFINITY, f64::max),
            ConvexBody::Ellipsoid(e) => e.support(u),
            ConvexBody::Ball(b) => dot(u, &b.center) + b.radius * norm(u),
            ConvexBody::Box(b) => u
                .iter()
                .zip(b.lower.iter().zip(&b.upper))
                .map(|(ui, (l, h))| if *ui >= 0.0 { ui * h } else { ui * l })
                .sum(),
            ConvexBody::Simplex(_) => u.iter().copied().fold(0.0, f64::max),
        }
    }

    pub fn support(&self, u: &Direction) -> f64 {
        self.support_vec(u.as_slice())
    }

    /// A point of K attaining the support value in direction `u`.
    pub fn support_point(&self, u: &[f64]) -> Point {
        let best_of = |pts: &[Point]| -> Point {
            let mut best = &pts[0];
            let mut bv = f64::NEG_INFINITY;
            for p in pts {
                let v = dot(p, u);
                if v > bv {
                    bv = v;
                    best = p;
                }
            }
            best.clone()
        };
        match self {
            ConvexBody::HPolytope(p) => match &p.vertices {
                Some(v) => best_of(v),
                None => {
                    let mut lp = LinearProgram::new(p.dim(), Sense::Maximize, u.to_vec());
                    for (a, &b) in p.normals.iter().zip(&p.offsets) {
                        lp.add_le(a.clone(), b);
                    }
                    lp.solve().map(|s| s.x).unwrap_or_else(|_| p.center.clone())
                }
            },
            ConvexBody::VPolytope(p) => best_of(&p.vertices),
            ConvexBody::Ellipsoid(e) => e.support_point(u),
            ConvexBody::Ball(b) => {
                let n = norm(u).max(1e-300);
                b.center.iter().zip(u).map(|(c, ui)| c + b.radius * ui / n).collect()
            }
            ConvexBody::Box(b) => u
                .iter()
                .zip(b.lower.iter().zip(&b.upper))
                .map(|(ui, (l, h))| if *ui >= 0.0 { *h } else { *l })
                .collect(),
            ConvexBody::Simplex(s) => best_of(&s.vertices()),
        }
    }

    /// `w(K, u) = h(K, u) + h(K, −u)`.
    pub fn width(&self, u: &Direction) -> f64 {
        self.width_vec(u.as_slice())
    }

    pub fn width_vec(&self, u: &[f64]) -> f64 {
        let neg: Vec<f64> = u.iter().map(|c| -c).collect();
        self.support_vec(u) + self.support_vec(&neg)
    }

    /// Global minimum of the width over unit directions, with its direction.
    ///
    /// d = 2 scans 4096 angles on `[0, π)` and refines the best local minima
    /// by golden section; d ≥ 3 runs compass search from facet normals and a
    /// quasi-uniform set of starts.
    pub fn minimal_width(&self) -> (f64, Direction) {
        let d = self.dim();
        match d {
            1 => (self.width_vec(&[1.0]), Direction::axis(1, 0)),
            2 => {
                let (th, v) = periodic_grid_max(
                    |t| -self.width_vec(&[t.cos(), t.sin()]),
                    std::f64::consts::PI,
                    4096,
                    8,
                );
                (-v, Direction::from_angle(th))
            }
            _ => {
                let mut seeds: Vec<Vec<f64>> = self.facet_normals().into_iter().map(|u| u.into_vec()).collect();
                seeds.extend(sphere_points(d, 256));
                let f = |v: &[f64]| -self.width_vec(v);
                let mut scored: Vec<(f64, Vec<f64>)> = seeds.into_iter().map(|s| (f(&s), s)).collect();
                scored.sort_by(|a, b| b.0.total_cmp(&a.0));
                let mut r = rng(0x5157);
                let mut best = (f64::NEG_INFINITY, vec![]);
                for (_, s) in scored.into_iter().take(24) {
                    let (v, fv) = sphere_pattern_search_max(&f, &s, 0.05, 1e-11, &mut r);
                    if fv > best.0 {
                        best = (fv, v);
                    }
                }
                (-best.0, Direction::normalize(&best.1).expect("unit"))
            }
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        if x.len() != self.dim() {
            return false;
        }
        match self {
            ConvexBody::HPolytope(p) => p.contains(x),
            ConvexBody::VPolytope(p) => match &p.hrep {
                Some(h) => h.contains(x),
                None => p.contains_lp(x),
            },
            ConvexBody::Ellipsoid(e) => {
                // compare in Euclidean units: level ≤ (1 + tol/√λ_min)²
                let slack = GEOM_TOL / e.eig_min.sqrt();
                e.level(x) <= (1.0 + slack) * (1.0 + slack)
            }
            ConvexBody::Ball(b) => {
                let d: Vec<f64> = x.iter().zip(&b.center).map(|(a, c)| a - c).collect();
                norm(&d) <= b.radius + GEOM_TOL
            }
            ConvexBody::Box(b) => x
                .iter()
                .zip(b.lower.iter().zip(&b.upper))
                .all(|(xi, (l, h))| *xi >= l - GEOM_TOL && *xi <= h + GEOM_TOL),
            ConvexBody::Simplex(_) => {
                x.iter().all(|&c| c >= -GEOM_TOL) && x.iter().sum::<f64>() <= 1.0 + GEOM_TOL
            }
        }
    }

    /// `true` when `h(K, u) = h(K, −u)` (within 1e-9) on a direction sample,
    /// i.e. K is symmetric about the origin.
    pub fn is_origin_symmetric(&self) -> bool {
        let d = self.dim();
        let dirs = sphere_points(d, if d <= 2 { 64 } else { 128 });
        dirs.iter().all(|u| {
            let neg: Vec<f64> = u.iter().map(|c| -c).collect();
            let a = self.support_vec(u);
            let b = self.support_vec(&neg);
            (a - b).abs() <= 1e-9 * a.abs().max(1.0)
        })
    }

    /// Minkowski gauge `inf{λ ≥ 0 : x ∈ λK}` of an origin-symmetric body,
    /// by bisection on membership to 1e-10.
    pub fn gauge(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        if !self.is_origin_symmetric() {
            return Err(Error::Precondition("gauge requires a body symmetric about the origin".into()));
        }
        if norm(x) == 0.0 {
            return Ok(0.0);
        }
        let inside = |lam: f64| {
            let y: Vec<f64> = x.iter().map(|c| c / lam).collect();
            self.contains_strict(&y)
        };
        let mut hi = 1.0;
        while !inside(hi) {
            hi *= 2.0;
        }
        let mut lo = 0.0;
        if inside(0.5 * hi) {
            hi *= 0.5;
            while inside(0.5 * hi) && hi > 1e-300 {
                hi *= 0.5;
            }
            lo = 0.5 * hi;
        } else if hi > 1.0 {
            lo = 0.5 * hi;
        }
        while hi - lo > 1e-10 * hi.max(1e-300) * 1e-2 {
            let mid = 0.5 * (lo + hi);
            if inside(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 1e-12 * hi {
                break;
            }
        }
        Ok(hi)
    }

    /// Membership without the absolute slack of [`contains`](Self::contains),
    /// used where scale-free bisection is needed.
    fn contains_strict(&self, x: &[f64]) -> bool {
        match self {
            ConvexBody::HPolytope(p) => p.normals.iter().zip(&p.offsets).all(|(a, &b)| dot(a, x) <= b),
            ConvexBody::VPolytope(p) => match &p.hrep {
                Some(h) => h.normals.iter().zip(&h.offsets).all(|(a, &b)| dot(a, x) <= b + 1e-14),
                None => p.contains_lp(x),
            },
            ConvexBody::Ellipsoid(e) => e.level(x) <= 1.0,
            ConvexBody::Ball(b) => {
                let d: Vec<f64> = x.iter().zip(&b.center).map(|(a, c)| a - c).collect();
                norm(&d) <= b.radius
            }
            ConvexBody::Box(b) => x.iter().zip(b.lower.iter().zip(&b.upper)).all(|(xi, (l, h))| xi >= l && xi <= h),
            ConvexBody::Simplex(_) => x.iter().all(|&c| c >= 0.0) && x.iter().sum::<f64>() <= 1.0,
        }
    }

    /// `τ(K, y) = sup{λ : ∃x ∈ K, x + λy ∈ K}`.
    pub fn maximal_chord(&self, y: &Direction) -> Result<f64> {
        check_dim(self.dim(), y.dim())?;
        let y = y.as_slice();
        match self {
            ConvexBody::Ball(b) => Ok(2.0 * b.radius),
            ConvexBody::Ellipsoid(e) => Ok(2.0 / Ellipsoid::quad(&e.shape_inv, y).sqrt()),
            ConvexBody::Box(b) => Ok(y
                .iter()
                .zip(b.lower.iter().zip(&b.upper))
                .filter(|(yi, _)| yi.abs() > 1e-15)
                .map(|(yi, (l, h))| (h - l) / yi.abs())
                .fold(f64::INFINITY, f64::min)),
            ConvexBody::HPolytope(p) => p.maximal_chord(y),
            ConvexBody::VPolytope(p) => match &p.hrep {
                Some(h) => h.maximal_chord(y),
                None => p.maximal_chord_lp(y),
            },
            ConvexBody::Simplex(_) => self.h_representation().expect("simplex").maximal_chord(y),
        }
    }

    /// Explicit conversion to an H-representation, when one is available
    /// (always for polytopes of dimension ≤ 3, boxes, simplices).
    pub fn h_representation(&self) -> Option<HPolytope> {
        match self {
            ConvexBody::HPolytope(p) => Some(p.clone()),
            ConvexBody::VPolytope(p) => p.hrep.clone(),
            ConvexBody::Box(b) => {
                let d = b.lower.len();
                let mut n = Vec::with_capacity(2 * d);
                let mut o = Vec::with_capacity(2 * d);
                for i in 0..d {
                    let mut e = vec![0.0; d];
                    e[i] = 1.0;
                    n.push(e.clone());
                    o.push(b.upper[i]);
                    e[i] = -1.0;
                    n.push(e);
                    o.push(-b.lower[i]);
                }
                HPolytope::new(n, o).ok()
            }
            ConvexBody::Simplex(s) => {
                let d = s.dim;
                let mut n = Vec::with_capacity(d + 1);
                let mut o = Vec::with_capacity(d + 1);
                for i in 0..d {
                    let mut e = vec![0.0; d];
                    e[i] = -1.0;
                    n.push(e);
                    o.push(0.0);
                }
                n.push(vec![1.0; d]);
                o.push(1.0);
                HPolytope::new(n, o).ok()
            }
            ConvexBody::Ellipsoid(_) | ConvexBody::Ball(_) => None,
        }
    }

    /// Vertex list for polytopes.
    pub fn vertices(&self) -> Option<Vec<Point>> {
        match self {
            ConvexBody::HPolytope(p) => p.vertices.clone(),
            ConvexBody::VPolytope(p) => Some(p.vertices.clone()),
            ConvexBody::Box(b) => {
                let d = b.lower.len();
                if d > 16 {
                    return None;
                }
                Some(
                    (0..1usize << d)
                        .map(|mask| (0..d).map(|i| if mask >> i & 1 == 1 { b.upper[i] } else { b.lower[i] }).collect())
                        .collect(),
                )
            }
            ConvexBody::Simplex(s) => Some(s.vertices()),
            ConvexBody::Ellipsoid(_) | ConvexBody::Ball(_) => None,
        }
    }

    /// Outward facet normals when an H-representation is available.
    pub fn facet_normals(&self) -> Vec<Direction> {
        self.h_representation()
            .map(|h| h.normals.iter().map(|n| Direction(n.clone())).collect())
            .unwrap_or_default()
    }

    /// A point well inside K.
    pub fn interior_point(&self) -> Point {
        match self {
            ConvexBody::HPolytope(p) => p.center.clone(),
            ConvexBody::VPolytope(p) => match &p.hrep {
                Some(h) => h.center.clone(),
                None => p.centroid.clone(),
            },
            ConvexBody::Ellipsoid(e) => e.center.clone(),
            ConvexBody::Ball(b) => b.center.clone(),
            ConvexBody::Box(b) => b.lower.iter().zip(&b.upper).map(|(l, h)| 0.5 * (l + h)).collect(),
            ConvexBody::Simplex(s) => vec![1.0 / (s.dim as f64 + 1.0); s.dim],
        }
    }

    /// A lower bound for the radius of a ball contained in K (exact for
    /// H-polytopes, balls, boxes, ellipsoids and simplices).
    pub fn inradius(&self) -> f64 {
        match self {
            ConvexBody::HPolytope(p) => p.inradius,
            ConvexBody::VPolytope(p) => match &p.hrep {
                Some(h) => h.inradius,
                None => {
                    // Steinhagen: r ≥ w / (2√(d+1)) in every dimension.
                    let d = p.dim() as f64;
                    self.minimal_width().0 / (2.0 * (d + 1.0).sqrt())
                }
            },
            ConvexBody::Ellipsoid(e) => e.eig_min.sqrt(),
            ConvexBody::Ball(b) => b.radius,
            ConvexBody::Box(b) => b
                .lower
                .iter()
                .zip(&b.upper)
                .map(|(l, h)| 0.5 * (h - l))
                .fold(f64::INFINITY, f64::min),
            ConvexBody::Simplex(s) => {
                let d = s.dim as f64;
                1.0 / (d + d.sqrt())
            }
        }
    }

    /// `max_{z∈K} ‖z‖`.
    pub fn max_norm(&self) -> f64 {
        match self.vertices() {
            Some(v) => v.iter().map(|p| norm(p)).fold(0.0, f64::max),
            None => match self {
                ConvexBody::Ellipsoid(e) => norm(&e.center) + e.eig_max.sqrt(),
                ConvexBody::Ball(b) => norm(&b.center) + b.radius,
                _ => {
                    let d = self.dim();
                    sphere_points(d, 512).iter().map(|u| self.support_vec(u)).fold(0.0, f64::max)
                }
            },
        }
    }

    /// Euclidean diameter (exact for polytopes and ellipsoids).
    pub fn diameter(&self) -> f64 {
        match self {
            ConvexBody::Ellipsoid(e) => 2.0 * e.eig_max.sqrt(),
            ConvexBody::Ball(b) => 2.0 * b.radius,
            _ => {
                let v = self.vertices().unwrap_or_default();
                let mut d: f64 = 0.0;
                for i in 0..v.len() {
                    for j in i + 1..v.len() {
                        let diff: Vec<f64> = v[i].iter().zip(&v[j]).map(|(a, b)| a - b).collect();
                        d = d.max(norm(&diff));
                    }
                }
                d
            }
        }
    }

    /// `(lower, upper)` corners of the bounding box.
    pub fn bounding_box(&self) -> (Point, Point) {
        let d = self.dim();
        let mut lo = vec![0.0; d];
        let mut hi = vec![0.0; d];
        for i in 0..d {
            let mut e = vec![0.0; d];
            e[i] = 1.0;
            hi[i] = self.support_vec(&e);
            e[i] = -1.0;
            lo[i] = -self.support_vec(&e);
        }
        (lo, hi)
    }

    /// `sup{s ≥ 0 : c + s·u ∈ K}` for an interior point `c`.
    pub fn ray_exit(&self, c: &[f64], u: &[f64]) -> f64 {
        match self {
            ConvexBody::HPolytope(p) => p.ray_exit(c, u),
            ConvexBody::VPolytope(p) => match &p.hrep {
                Some(h) => h.ray_exit(c, u),
                None => p.ray_exit_lp(c, u),
            },
            ConvexBody::Ellipsoid(e) => e.ray_exit(c, u),
            ConvexBody::Ball(b) => {
                let e = Ellipsoid::from_matrix(b.center.clone(), DMatrix::identity(c.len(), c.len()) * (b.radius * b.radius))
                    .expect("ball");
                e.ray_exit(c, u)
            }
            ConvexBody::Box(_) | ConvexBody::Simplex(_) => self.h_representation().expect("polytope").ray_exit(c, u),
        }
    }

    /// Image under `z ↦ M z + c` for invertible `M`.
    pub fn affine_image(&self, m: &DMatrix<f64>, c: &[f64]) -> Result<ConvexBody> {
        let d = self.dim();
        check_dim(d, c.len())?;
        if m.nrows() != d || m.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, got: m.nrows() });
        }
        let minv = m
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Precondition("affine map is singular".into()))?;
        let map = |p: &[f64]| -> Point {
            let v = m * DVector::from_column_slice(p);
            v.iter().zip(c).map(|(a, b)| a + b).collect()
        };
        match self {
            ConvexBody::HPolytope(p) => {
                let mt = minv.transpose();
                let mut normals = Vec::with_capacity(p.normals.len());
                let mut offsets = Vec::with_capacity(p.normals.len());
                for (a, &b) in p.normals.iter().zip(&p.offsets) {
                    let na = &mt * DVector::from_column_slice(a);
                    let na: Vec<f64> = na.iter().copied().collect();
                    offsets.push(b + dot(&na, c));
                    normals.push(na);
                }
                ConvexBody::hpolytope(normals, offsets)
            }
            ConvexBody::VPolytope(p) => ConvexBody::vpolytope(p.vertices.iter().map(|v| map(v)).collect()),
            ConvexBody::Simplex(s) => ConvexBody::vpolytope(s.vertices().iter().map(|v| map(v)).collect()),
            ConvexBody::Box(_) => self.h_representation().expect("box").pipe(ConvexBody::HPolytope).affine_image(m, c),
            ConvexBody::Ellipsoid(e) => {
                let q = m * &e.shape * m.transpose();
                Ok(Ellipsoid::from_matrix(map(&e.center), q)?.into())
            }
            ConvexBody::Ball(b) => {
                let q = m * m.transpose() * (b.radius * b.radius);
                Ok(Ellipsoid::from_matrix(map(&b.center), q)?.into())
            }
        }
    }
}

trait Pipe: Sized {
    fn pipe<T>(self, f: impl FnOnce(Self) -> T) -> T {
        f(self)
    }
}
impl<T> Pipe for T {}
