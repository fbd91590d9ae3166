//! Two-level min–max estimators on spheres.
//!
//! * linear polarization constants `c_n(X) = 1 / inf_f sup_{‖x‖=1} ∏|⟨f_j, x⟩|`
//!   for `X = ℝ^d` and `ℂ^d` (complex vectors stored as interleaved real
//!   pairs, with the Hermitian product written out explicitly);
//! * metric Chebyshev constants `M_n(S^m) = inf_y sup_x ∏‖x − y_j‖` with the
//!   chordal distance.
//!
//! The inner supremum is computed on a certified angular grid on circles and
//! by multistart Riemannian ascent otherwise. The outer infimum is a
//! best-found value: each restart minimizes a log-sum-exp smoothing of the
//! inner maximum over a fixed point set, with the temperature raised in
//! stages, and the end configuration is then scored by the exact inner
//! routine.

use rayon::prelude::*;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::optimize::{lbfgs_minimize, periodic_grid_max, sphere_gradient_ascent, LbfgsOptions};
use crate::report::BoundReport;
use crate::sampling::{dot, norm, random_unit, sphere_points, substream};

/// Minimum number of starts of the inner ascent.
pub const INNER_STARTS: usize = 128;
/// Largest real dimension handled by the quasi-uniform point sets.
pub const MAX_REAL_DIM: usize = 12;

const BETAS: [f64; 5] = [5.0, 20.0, 80.0, 300.0, 1000.0];

/// Inner objective families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    /// `|⟨f, x⟩|` on `S^{d−1} ⊂ ℝ^d`.
    Real,
    /// `|Σ x_k f̄_k|` on the unit sphere of `ℂ^d`.
    Complex,
    /// `‖x − y‖` on `S^m ⊂ ℝ^{m+1}`.
    Chordal,
}

impl Kernel {
    pub fn name(self) -> &'static str {
        match self {
            Kernel::Real => "real",
            Kernel::Complex => "complex",
            Kernel::Chordal => "chordal",
        }
    }

    /// `log k(y, x)` and, when requested, its gradients in `y` and `x`.
    fn log_factor(self, y: &[f64], x: &[f64], gy: Option<&mut [f64]>, gx: Option<&mut [f64]>) -> f64 {
        match self {
            Kernel::Real => {
                let v = dot(y, x);
                let inv = if v == 0.0 { 0.0 } else { 1.0 / v };
                if let Some(g) = gy {
                    g.iter_mut().zip(x).for_each(|(g, xi)| *g += xi * inv);
                }
                if let Some(g) = gx {
                    g.iter_mut().zip(y).for_each(|(g, yi)| *g += yi * inv);
                }
                v.abs().max(1e-300).ln()
            }
            Kernel::Complex => {
                let (mut a, mut b) = (0.0, 0.0);
                for (fy, fx) in y.chunks(2).zip(x.chunks(2)) {
                    a += fx[0] * fy[0] + fx[1] * fy[1];
                    b += fx[1] * fy[0] - fx[0] * fy[1];
                }
                let q = (a * a + b * b).max(1e-300);
                if let Some(g) = gy {
                    for (gk, xk) in g.chunks_mut(2).zip(x.chunks(2)) {
                        gk[0] += (a * xk[0] + b * xk[1]) / q;
                        gk[1] += (a * xk[1] - b * xk[0]) / q;
                    }
                }
                if let Some(g) = gx {
                    for (gk, fk) in g.chunks_mut(2).zip(y.chunks(2)) {
                        gk[0] += (a * fk[0] - b * fk[1]) / q;
                        gk[1] += (a * fk[1] + b * fk[0]) / q;
                    }
                }
                0.5 * q.ln()
            }
            Kernel::Chordal => {
                let q: f64 = y.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().max(1e-300);
                if let Some(g) = gy {
                    g.iter_mut().zip(y.iter().zip(x)).for_each(|(g, (a, b))| *g += (a - b) / q);
                }
                if let Some(g) = gx {
                    g.iter_mut().zip(y.iter().zip(x)).for_each(|(g, (a, b))| *g += (b - a) / q);
                }
                0.5 * q.ln()
            }
        }
    }

    /// Degree of `∏ k_j²` as a trigonometric polynomial on a great circle.
    fn circle_degree(self, n: usize) -> usize {
        match self {
            Kernel::Chordal => n,
            _ => 2 * n,
        }
    }
}

fn log_product(kernel: Kernel, config: &[Vec<f64>], x: &[f64]) -> f64 {
    config.iter().map(|y| kernel.log_factor(y, x, None, None)).sum()
}

fn log_product_grad(kernel: Kernel, config: &[Vec<f64>], x: &[f64], g: &mut [f64]) -> f64 {
    g.iter_mut().for_each(|v| *v = 0.0);
    config.iter().map(|y| kernel.log_factor(y, x, None, Some(&mut *g))).sum()
}

fn check_unit(v: &[f64]) -> Result<()> {
    if (norm(v) - 1.0).abs() > 1e-12 {
        return Err(Error::Precondition(format!("vector of norm {} is not on the unit sphere", norm(v))));
    }
    Ok(())
}

fn normalize(v: &[f64]) -> Result<Vec<f64>> {
    let n = norm(v);
    if !(n > 0.0) || !n.is_finite() {
        return Err(Error::Precondition("zero or non-finite vector".into()));
    }
    Ok(v.iter().map(|c| c / n).collect())
}

/// `n` unit functionals on `ℝ^d` or `ℂ^d`. Complex vectors are stored as
/// `(re_1, im_1, …, re_d, im_d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionalConfig {
    pub field: Field,
    pub d: usize,
    pub vectors: Vec<Vec<f64>>,
}

impl FunctionalConfig {
    /// Normalizes the given vectors.
    pub fn new(field: Field, d: usize, vectors: Vec<Vec<f64>>) -> Result<Self> {
        let vectors = vectors
            .iter()
            .map(|v| {
                if v.len() != field.real_dim(d) {
                    return Err(Error::DimensionMismatch { expected: field.real_dim(d), got: v.len() });
                }
                normalize(v)
            })
            .collect::<Result<Vec<_>>>()?;
        let c = FunctionalConfig { field, d, vectors };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.field.real_dim(self.d) > MAX_REAL_DIM {
            return Err(Error::Unsupported(format!("real dimension above {MAX_REAL_DIM}")));
        }
        self.vectors.iter().try_for_each(|v| check_unit(v))
    }

    pub fn kernel(&self) -> Kernel {
        match self.field {
            Field::Real => Kernel::Real,
            Field::Complex => Kernel::Complex,
        }
    }
}

/// `n` points on the unit sphere `S^m ⊂ ℝ^{m+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfig {
    pub sphere_dim: usize,
    pub points: Vec<Vec<f64>>,
}

impl PointConfig {
    pub fn new(sphere_dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        let points = points
            .iter()
            .map(|p| {
                if p.len() != sphere_dim + 1 {
                    return Err(Error::DimensionMismatch { expected: sphere_dim + 1, got: p.len() });
                }
                normalize(p)
            })
            .collect::<Result<Vec<_>>>()?;
        let c = PointConfig { sphere_dim, points };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sphere_dim + 1 > MAX_REAL_DIM {
            return Err(Error::Unsupported(format!("real dimension above {MAX_REAL_DIM}")));
        }
        self.points.iter().try_for_each(|v| check_unit(v))
    }
}

/// How the inner supremum was obtained.
#[derive(Debug, Clone, PartialEq)]
pub enum InnerMethod {
    /// Great-circle grid with golden-section refinement. `upper` bounds the
    /// true supremum through Bernstein's inequality for the squared product.
    Grid { nodes: usize, upper: f64 },
    /// Multistart ascent; the value is a lower bound.
    Multistart { starts: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimaxCertificate {
    pub kernel: Kernel,
    /// Outer configuration in canonical order.
    pub config: Vec<Vec<f64>>,
    /// Inner maximizer.
    pub witness: Vec<f64>,
    /// `∏ k(y_j, witness)`.
    pub inner_value: f64,
    pub inner_method: InnerMethod,
    /// Best inner value over all outer restarts; equals `inner_value`.
    pub outer_value: f64,
    pub restarts: usize,
    /// Best certified value after each restart, in restart order.
    pub trace: Vec<f64>,
}

impl MinimaxCertificate {
    /// Re-evaluates the inner product at the witness.
    pub fn recompute(&self) -> f64 {
        log_product(self.kernel, &self.config, &self.witness).exp()
    }

    /// Relative width of the inner certificate (0 for multistart values,
    /// which carry no upper bound).
    pub fn inner_gap(&self) -> f64 {
        match self.inner_method {
            InnerMethod::Grid { upper, .. } => (upper - self.inner_value).max(0.0) / self.inner_value,
            InnerMethod::Multistart { .. } => 0.0,
        }
    }

    /// Plain-text dump sufficient to replay the inner evaluation.
    pub fn dump(&self) -> String {
        let mut s = format!("kernel {}\nn {}\n", self.kernel.name(), self.config.len());
        for v in &self.config {
            s.push_str("y");
            for c in v {
                s.push_str(&format!(" {c:.17e}"));
            }
            s.push('\n');
        }
        s.push_str("x");
        for c in &self.witness {
            s.push_str(&format!(" {c:.17e}"));
        }
        s.push_str(&format!("\ninner {:.17e}\n", self.inner_value));
        match self.inner_method {
            InnerMethod::Grid { nodes, upper } => s.push_str(&format!("grid {nodes} {upper:.17e}\n")),
            InnerMethod::Multistart { starts } => s.push_str(&format!("multistart {starts}\n")),
        }
        s
    }

    /// SHA-256 of [`dump`](Self::dump), hex encoded.
    pub fn hash(&self) -> String {
        Sha256::digest(self.dump().as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

/// Canonical representative: sign (real) or phase (complex) fixed so the
/// first non-negligible coordinate is real positive, then sorted
/// lexicographically. Chordal points are only sorted.
fn canonical(kernel: Kernel, config: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = config
        .iter()
        .map(|v| match kernel {
            Kernel::Chordal => v.clone(),
            Kernel::Real => {
                let lead = v.iter().find(|c| c.abs() > 1e-12).copied().unwrap_or(1.0);
                v.iter().map(|c| c * lead.signum()).collect()
            }
            Kernel::Complex => {
                let lead = v.chunks(2).find(|p| p[0].hypot(p[1]) > 1e-12).map(|p| (p[0], p[1])).unwrap_or((1.0, 0.0));
                let r = lead.0.hypot(lead.1);
                let (c, s) = (lead.0 / r, -lead.1 / r);
                v.chunks(2).flat_map(|p| [p[0] * c - p[1] * s, p[0] * s + p[1] * c]).collect()
            }
        })
        .collect();
    out.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    out
}

struct Inner {
    x: Vec<f64>,
    value: f64,
    method: InnerMethod,
}

fn inner_sup(kernel: Kernel, config: &[Vec<f64>], dim: usize, seed: u64) -> Inner {
    let n = config.len();
    if dim == 2 {
        let nodes = (512 * n).max(4096);
        let f = |th: f64| log_product(kernel, config, &[th.cos(), th.sin()]).exp();
        let h = 2.0 * std::f64::consts::PI / nodes as f64;
        let grid_max = (0..nodes).map(|k| f(k as f64 * h)).fold(0.0, f64::max);
        let (th, v) = periodic_grid_max(f, 2.0 * std::f64::consts::PI, nodes, 16);
        let shrink = 1.0 - kernel.circle_degree(n) as f64 * h / 2.0;
        return Inner {
            x: vec![th.cos(), th.sin()],
            value: v,
            method: InnerMethod::Grid { nodes, upper: grid_max / shrink.sqrt() },
        };
    }
    if dim == 1 || n == 0 {
        let x = vec![1.0; dim.min(1)].into_iter().chain(std::iter::repeat(0.0)).take(dim).collect::<Vec<_>>();
        let v = log_product(kernel, config, &x).exp();
        return Inner { x, value: v, method: InnerMethod::Multistart { starts: 1 } };
    }
    let fg = |x: &[f64], g: &mut [f64]| log_product_grad(kernel, config, x, g);
    let mut starts = sphere_points(dim, INNER_STARTS);
    let mut r = substream(seed, 0x1A2E);
    starts.extend((0..32).map(|_| random_unit(&mut r, dim)));
    // configuration vectors and their antipodes are natural candidates
    for y in config {
        starts.push(y.clone());
        starts.push(y.iter().map(|c| -c).collect());
    }
    let count = starts.len();
    let mut best = (starts[0].clone(), f64::NEG_INFINITY);
    for s in starts {
        let (x, v) = sphere_gradient_ascent(&fg, &s, 2000, 1e-11);
        if v > best.1 + 1e-15 {
            best = (x, v);
        }
    }
    Inner {
        x: best.0,
        value: best.1.exp(),
        method: InnerMethod::Multistart { starts: count },
    }
}

/// Fixed point set for the smoothed inner maximum.
fn smoothing_points(dim: usize) -> Vec<Vec<f64>> {
    let n = match dim {
        0 | 1 => 2,
        2 => 1024,
        3 => 2500,
        4 => 4000,
        d => 1000 * d,
    };
    sphere_points(dim, n)
}

/// `(1/β) log Σ_i exp(β φ(x_i))` with `φ = Σ_j log k(y_j, ·)`, as a function
/// of unnormalized configuration coordinates.
fn smoothed_max(kernel: Kernel, z: &[f64], n: usize, dim: usize, pts: &[Vec<f64>], beta: f64, grad: &mut [f64]) -> f64 {
    let ys: Vec<Vec<f64>> = z.chunks(dim).map(|c| {
        let r = norm(c).max(1e-300);
        c.iter().map(|v| v / r).collect()
    }).collect();
    let phis: Vec<f64> = pts.iter().map(|x| log_product(kernel, &ys, x)).collect();
    let m = phis.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ws: Vec<f64> = phis.iter().map(|p| (beta * (p - m)).exp()).collect();
    let total: f64 = ws.iter().sum();
    let value = m + total.ln() / beta;
    let mut gy = vec![0.0; n * dim];
    for (x, w) in pts.iter().zip(&ws) {
        let w = w / total;
        if w < 1e-18 {
            continue;
        }
        let mut g = vec![0.0; dim];
        for (j, y) in ys.iter().enumerate() {
            g.iter_mut().for_each(|v| *v = 0.0);
            kernel.log_factor(y, x, Some(&mut g), None);
            for k in 0..dim {
                gy[j * dim + k] += w * g[k];
            }
        }
    }
    // chain rule through y = z/‖z‖
    for (j, c) in z.chunks(dim).enumerate() {
        let r = norm(c).max(1e-300);
        let y = &ys[j];
        let g = &gy[j * dim..(j + 1) * dim];
        let radial = dot(g, y);
        for k in 0..dim {
            grad[j * dim + k] = (g[k] - radial * y[k]) / r;
        }
    }
    value
}

/// Outer search settings.
#[derive(Debug, Clone)]
pub struct MinimaxOptions {
    /// Random restarts in addition to the structured starts.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for MinimaxOptions {
    fn default() -> Self {
        MinimaxOptions { restarts: 24, seed: 0 }
    }
}

fn structured_starts(kernel: Kernel, n: usize, dim: usize) -> Vec<Vec<Vec<f64>>> {
    let pi = std::f64::consts::PI;
    let mut out = Vec::new();
    if dim == 2 && kernel != Kernel::Complex {
        let period = if kernel == Kernel::Chordal { 2.0 * pi } else { pi };
        out.push((0..n).map(|j| {
            let th = period * j as f64 / n as f64;
            vec![th.cos(), th.sin()]
        }).collect());
    }
    // orthonormal frame, cycled when n exceeds its size
    let frame: Vec<Vec<f64>> = match kernel {
        Kernel::Complex => (0..dim / 2).map(|i| {
            let mut e = vec![0.0; dim];
            e[2 * i] = 1.0;
            e
        }).collect(),
        _ => (0..dim).map(|i| {
            let mut e = vec![0.0; dim];
            e[i] = 1.0;
            e
        }).collect(),
    };
    if !frame.is_empty() && dim > 2 {
        out.push((0..n).map(|j| frame[j % frame.len()].clone()).collect());
    }
    if kernel == Kernel::Chordal && n == 2 {
        let mut e = vec![0.0; dim];
        e[0] = 1.0;
        out.push(vec![e.clone(), e.iter().map(|c| -c).collect()]);
    }
    if dim > 2 {
        out.push(sphere_points(dim, n));
    }
    out
}

/// Runs the two-level search for `n` outer vectors on the unit sphere of
/// `ℝ^dim`.
fn minimax(kernel: Kernel, n: usize, dim: usize, opts: &MinimaxOptions) -> MinimaxCertificate {
    let pts = smoothing_points(dim);
    let mut starts = structured_starts(kernel, n, dim);
    let structured = starts.len();
    for r in 0..opts.restarts {
        let mut rng = substream(opts.seed, r as u64);
        starts.push((0..n).map(|_| random_unit(&mut rng, dim)).collect());
    }
    let lbfgs = LbfgsOptions { max_iter: 300, memory: 10, grad_tol: 1e-10, f_tol: 1e-15 };
    let results: Vec<(Vec<Vec<f64>>, Inner)> = starts
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let mut z: Vec<f64> = s.iter().flatten().copied().collect();
            if dim >= 2 && n >= 1 && i >= structured {
                for &beta in &BETAS {
                    let (zn, _) = lbfgs_minimize(
                        |z, g| smoothed_max(kernel, z, n, dim, &pts, beta, g),
                        &z,
                        &lbfgs,
                    );
                    z = zn
                        .chunks(dim)
                        .flat_map(|c| {
                            let r = norm(c).max(1e-300);
                            c.iter().map(move |v| v / r)
                        })
                        .collect();
                }
            } else if dim >= 2 && n >= 1 {
                // structured starts are refined only at the two sharpest temperatures
                for &beta in &BETAS[3..] {
                    let (zn, _) = lbfgs_minimize(
                        |z, g| smoothed_max(kernel, z, n, dim, &pts, beta, g),
                        &z,
                        &lbfgs,
                    );
                    z = zn
                        .chunks(dim)
                        .flat_map(|c| {
                            let r = norm(c).max(1e-300);
                            c.iter().map(move |v| v / r)
                        })
                        .collect();
                }
            }
            let config = canonical(kernel, &z.chunks(dim).map(|c| c.to_vec()).collect::<Vec<_>>());
            // keep the unrefined structured start when refinement made it worse
            let inner = inner_sup(kernel, &config, dim, opts.seed ^ i as u64);
            if i < structured {
                let raw = canonical(kernel, s);
                let raw_inner = inner_sup(kernel, &raw, dim, opts.seed ^ i as u64);
                if raw_inner.value <= inner.value {
                    return (raw, raw_inner);
                }
            }
            (config, inner)
        })
        .collect();

    let mut trace = Vec::with_capacity(results.len());
    let mut best: Option<usize> = None;
    for (i, (cfg, inner)) in results.iter().enumerate() {
        let better = match best {
            None => true,
            Some(b) => {
                let bv = results[b].1.value;
                if (inner.value - bv).abs() <= 1e-12 * bv {
                    lex_less(cfg, &results[b].0)
                } else {
                    inner.value < bv
                }
            }
        };
        if better {
            best = Some(i);
        }
        trace.push(results[best.unwrap()].1.value);
    }
    let (config, inner) = results.into_iter().nth(best.unwrap()).unwrap();
    MinimaxCertificate {
        kernel,
        config,
        witness: inner.x,
        inner_value: inner.value,
        inner_method: inner.method,
        outer_value: inner.value,
        restarts: trace.len(),
        trace,
    }
}

fn lex_less(a: &[Vec<f64>], b: &[Vec<f64>]) -> bool {
    for (u, v) in a.iter().zip(b) {
        for (x, y) in u.iter().zip(v) {
            match x.total_cmp(y) {
                std::cmp::Ordering::Less => return true,
                std::cmp::Ordering::Greater => return false,
                _ => {}
            }
        }
    }
    false
}

/// `sup_{‖x‖=1} ∏|⟨f_j, x⟩|` for one configuration.
pub fn product_sup(config: &FunctionalConfig) -> Result<MinimaxCertificate> {
    config.validate()?;
    let kernel = config.kernel();
    let dim = config.field.real_dim(config.d);
    let inner = inner_sup(kernel, &config.vectors, dim, 0);
    Ok(MinimaxCertificate {
        kernel,
        config: config.vectors.clone(),
        witness: inner.x,
        inner_value: inner.value,
        inner_method: inner.method,
        outer_value: inner.value,
        restarts: 0,
        trace: Vec::new(),
    })
}

/// Same for chordal distance products over a point configuration.
pub fn distance_product_sup(config: &PointConfig) -> Result<MinimaxCertificate> {
    config.validate()?;
    let inner = inner_sup(Kernel::Chordal, &config.points, config.sphere_dim + 1, 0);
    Ok(MinimaxCertificate {
        kernel: Kernel::Chordal,
        config: config.points.clone(),
        witness: inner.x,
        inner_value: inner.value,
        inner_method: inner.method,
        outer_value: inner.value,
        restarts: 0,
        trace: Vec::new(),
    })
}

/// Best-found configuration for `c_n(𝕂^d)`.
pub fn polarization_minimax(n: usize, d: usize, field: Field, opts: &MinimaxOptions) -> Result<MinimaxCertificate> {
    if n < 1 || d < 1 {
        return Err(Error::Precondition("need n ≥ 1 and d ≥ 1".into()));
    }
    let dim = field.real_dim(d);
    if dim > MAX_REAL_DIM {
        return Err(Error::Unsupported(format!("real dimension above {MAX_REAL_DIM}")));
    }
    let kernel = match field {
        Field::Real => Kernel::Real,
        Field::Complex => Kernel::Complex,
    };
    Ok(minimax(kernel, n, dim, opts))
}

fn certificate_report(name: &str, value: f64, cert: &MinimaxCertificate) -> BoundReport {
    let method = match cert.inner_method {
        InnerMethod::Grid { .. } => "grid",
        InnerMethod::Multistart { .. } => "multistart",
    };
    BoundReport::new(name, value, value * cert.inner_gap())
        .with("inner_value", json!(cert.inner_value))
        .with("inner_method", json!(method))
        .with("outer", json!("best-found"))
        .with("restarts", json!(cert.restarts))
        .with("certificate", json!(cert.hash()))
}

/// Estimate `ĉ_n = 1 / (best inf-sup)`. The inner value is certified (grid)
/// or a lower bound (multistart); the outer infimum is best-found, so `ĉ_n`
/// is a heuristic estimate of `c_n`.
pub fn polarization_estimate(n: usize, d: usize, field: Field) -> Result<BoundReport> {
    polarization_estimate_with(n, d, field, &MinimaxOptions::default())
}

pub fn polarization_estimate_with(n: usize, d: usize, field: Field, opts: &MinimaxOptions) -> Result<BoundReport> {
    let cert = polarization_minimax(n, d, field, opts)?;
    Ok(certificate_report("polarization", 1.0 / cert.inner_value, &cert)
        .with("n", json!(n))
        .with("d", json!(d))
        .with("field", json!(field.to_string())))
}

/// Best-found configuration for `M_n(S^m)`.
pub fn chebyshev_minimax(n: usize, sphere_dim: usize, opts: &MinimaxOptions) -> Result<MinimaxCertificate> {
    if n < 1 {
        return Err(Error::Precondition("need n ≥ 1".into()));
    }
    if sphere_dim + 1 > MAX_REAL_DIM {
        return Err(Error::Unsupported(format!("real dimension above {MAX_REAL_DIM}")));
    }
    Ok(minimax(Kernel::Chordal, n, sphere_dim + 1, opts))
}

/// `M_n(S^m)` with the chordal distance.
pub fn metric_chebyshev(n: usize, sphere_dim: usize) -> Result<BoundReport> {
    metric_chebyshev_with(n, sphere_dim, &MinimaxOptions::default())
}

pub fn metric_chebyshev_with(n: usize, sphere_dim: usize, opts: &MinimaxOptions) -> Result<BoundReport> {
    let cert = chebyshev_minimax(n, sphere_dim, opts)?;
    Ok(certificate_report("metric_chebyshev", cert.inner_value, &cert)
        .with("n", json!(n))
        .with("sphere_dim", json!(sphere_dim)))
}

/// Both sides of `c_n(ℝ²) = 2ⁿ/M_n(S¹) = 2^{n−1}` and
/// `c_n(ℂ²) = 2ⁿ/M_n(S²)` from the independent estimators. The value is the
/// largest relative gap.
pub fn revesz2_crosscheck(n: usize) -> Result<BoundReport> {
    if !(2..=8).contains(&n) {
        return Err(Error::Precondition("cross-check defined for 2 ≤ n ≤ 8".into()));
    }
    let p = 2f64.powi(n as i32);
    let real_direct = polarization_estimate(n, 2, Field::Real)?.value;
    let real_metric = p / metric_chebyshev(n, 1)?.value;
    let closed = p / 2.0;
    let complex_direct = polarization_estimate(n, 2, Field::Complex)?.value;
    let complex_metric = p / metric_chebyshev(n, 2)?.value;
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
    let real_gap = rel(real_direct, closed).max(rel(real_metric, closed));
    let complex_gap = rel(complex_direct, complex_metric);
    Ok(BoundReport::new("revesz2_crosscheck", real_gap.max(complex_gap), 0.0)
        .with("n", json!(n))
        .with("real_direct", json!(real_direct))
        .with("real_metric", json!(real_metric))
        .with("real_closed_form", json!(closed))
        .with("real_gap", json!(real_gap))
        .with("complex_direct", json!(complex_direct))
        .with("complex_metric", json!(complex_metric))
        .with("complex_gap", json!(complex_gap)))
}

/// `ĉ_n^{1/n}` for `n = 1..=n_max`. For `d = 2` the circle and sphere
/// identities are used; `d = 1` is identically 1.
pub fn growth_root_sequence(d: usize, field: Field, n_max: usize) -> Result<Vec<f64>> {
    growth_root_sequence_with(d, field, n_max, &MinimaxOptions::default())
}

pub fn growth_root_sequence_with(d: usize, field: Field, n_max: usize, opts: &MinimaxOptions) -> Result<Vec<f64>> {
    if n_max > 10 {
        return Err(Error::Precondition("n_max ≤ 10".into()));
    }
    if d < 1 {
        return Err(Error::Precondition("need d ≥ 1".into()));
    }
    (1..=n_max)
        .map(|n| {
            let c = match (d, field) {
                (1, _) => 1.0,
                (2, Field::Real) => 2f64.powi(n as i32) / metric_chebyshev_with(n, 1, opts)?.value,
                (2, Field::Complex) => 2f64.powi(n as i32) / metric_chebyshev_with(n, 2, opts)?.value,
                _ => polarization_estimate_with(n, d, field, opts)?.value,
            };
            Ok(c.powf(1.0 / n as f64))
        })
        .collect()
}
