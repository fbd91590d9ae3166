//! Potential-theoretic scalars: logarithmic sphere integrals, asymptotic
//! polarization constants, rendezvous game values and Harris constants.

use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::lp::{LinearProgram, Sense};
use crate::optimize::golden_section_max;
use crate::quadrature::integrate;
use crate::report::BoundReport;
use crate::sampling::{fibonacci_sphere, gaussian, norm, substream};

/// `L(d, K) = ∫_{S^d_K} log|⟨x, s⟩| dσ(x)` with a Monte Carlo cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereIntegral {
    pub d: usize,
    pub field: Field,
    pub value: f64,
    /// Quadrature error estimate.
    pub error: f64,
    pub mc_value: f64,
    /// One standard error of the Monte Carlo mean.
    pub mc_error: f64,
    pub mc_samples: usize,
}

impl SphereIntegral {
    pub fn to_report(&self) -> BoundReport {
        BoundReport::new("L_integral", self.value, self.error)
            .with("d", json!(self.d))
            .with("field", json!(self.field.to_string()))
            .with("c", json!((-self.value).exp()))
            .with("c_err", json!((-self.value).exp() * self.error))
            .with("mc", json!(self.mc_value))
            .with("mc_err", json!(self.mc_error))
    }
}

pub const MC_SAMPLES: usize = 1_000_000;
const MC_SEED: u64 = 0x1061;

/// Quadrature value of `L(d, field)` and its error estimate.
///
/// Real case: `⟨x, s⟩ = sin φ` with density `∝ cos^{d−2} φ` on `[0, π/2]`.
/// Complex case: `|⟨x, s⟩|²` is Beta(1, d−1) distributed on `S^{2d−1}`, so
/// with `|⟨x, s⟩| = σ`, `L = ∫₀¹ 2(d−1) σ log σ (1 − σ²)^{d−2} dσ`.
/// Both integrands are smoothed at the logarithmic endpoint by `φ = (π/2)s²`.
pub fn l_quadrature(d: usize, field: Field) -> (f64, f64) {
    if d <= 1 {
        return (0.0, 0.0);
    }
    let tol = 1e-13;
    match field {
        Field::Real => {
            let half_pi = std::f64::consts::FRAC_PI_2;
            let p = (d - 2) as i32;
            let num = integrate(
                |s| {
                    let phi = half_pi * s * s;
                    phi.sin().ln() * phi.cos().powi(p) * std::f64::consts::PI * s
                },
                0.0,
                1.0,
                tol,
                4000,
            );
            let den = integrate(|phi: f64| phi.cos().powi(p), 0.0, half_pi, tol, 4000);
            let v = num.value / den.value;
            (v, num.error / den.value + v.abs() * den.error / den.value)
        }
        Field::Complex => {
            let m = (d - 1) as f64;
            let p = (d - 2) as i32;
            let q = integrate(|s: f64| 2.0 * m * s * s.ln() * (1.0 - s * s).powi(p), 0.0, 1.0, tol, 4000);
            (q.value, q.error)
        }
    }
}

/// Monte Carlo mean of `log|⟨x, s⟩|` over uniform `x` on the unit sphere of
/// `K^d`, for a unit reference vector `s` given in real coordinates.
pub fn l_monte_carlo(d: usize, field: Field, s: &[f64], samples: usize, seed: u64) -> (f64, f64) {
    let n = field.real_dim(d);
    assert_eq!(s.len(), n, "reference vector dimension");
    let chunk = 10_000;
    let chunks = samples.div_ceil(chunk);
    let sums: Vec<(f64, f64, usize)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut r = substream(seed, c as u64);
            let count = chunk.min(samples - c * chunk);
            let (mut s1, mut s2) = (0.0, 0.0);
            let mut x = vec![0.0; n];
            for _ in 0..count {
                for xi in x.iter_mut() {
                    *xi = gaussian(&mut r);
                }
                let nx = norm(&x);
                let v = match field {
                    Field::Real => (x.iter().zip(s).map(|(a, b)| a * b).sum::<f64>() / nx).abs().ln(),
                    Field::Complex => {
                        // ⟨x, s⟩ = Σ x_j conj(s_j)
                        let (mut re, mut im) = (0.0, 0.0);
                        for j in 0..d {
                            let (xr, xi) = (x[2 * j], x[2 * j + 1]);
                            let (sr, si) = (s[2 * j], s[2 * j + 1]);
                            re += xr * sr + xi * si;
                            im += xi * sr - xr * si;
                        }
                        0.5 * ((re * re + im * im) / (nx * nx)).ln()
                    }
                };
                s1 += v;
                s2 += v * v;
            }
            (s1, s2, count)
        })
        .collect();
    let (s1, s2, cnt) = sums.iter().fold((0.0, 0.0, 0usize), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    let mean = s1 / cnt as f64;
    let var = (s2 / cnt as f64 - mean * mean).max(0.0);
    (mean, (var / cnt as f64).sqrt())
}

/// `L(d, field)` by quadrature, with a [`MC_SAMPLES`]-point Monte Carlo
/// estimate at the reference vector `e₁` alongside.
pub fn l_integral(d: usize, field: Field) -> Result<SphereIntegral> {
    if d == 0 {
        return Err(Error::Precondition("d must be at least 1".into()));
    }
    let (value, error) = l_quadrature(d, field);
    let mut s = vec![0.0; field.real_dim(d)];
    s[0] = 1.0;
    let (mc_value, mc_error) = l_monte_carlo(d, field, &s, MC_SAMPLES, MC_SEED);
    Ok(SphereIntegral {
        d,
        field,
        value,
        error,
        mc_value,
        mc_error,
        mc_samples: MC_SAMPLES,
    })
}

/// `c(K^d) = e^{−L(d, K)}`.
pub fn asymptotic_polarization(d: usize, field: Field) -> Result<f64> {
    if d == 0 {
        return Err(Error::Precondition("d must be at least 1".into()));
    }
    Ok((-l_quadrature(d, field).0).exp())
}

/// Value of the distance game on a discretized sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendezvous {
    pub sphere_dim: usize,
    pub nodes: usize,
    pub value: f64,
    /// `max_p min_j Σ_i p_i ρ(y_i, y_j)`.
    pub max_min: f64,
    /// `min_q max_i Σ_j ρ(y_i, y_j) q_j`.
    pub min_max: f64,
    pub gap: f64,
    /// `|value(N) − value(N/2)|`, the discretization error proxy.
    pub refinement_delta: f64,
}

impl Rendezvous {
    pub fn to_report(&self) -> BoundReport {
        BoundReport::new("rendezvous", self.value, self.gap.max(self.refinement_delta))
            .with("sphere_dim", json!(self.sphere_dim))
            .with("nodes", json!(self.nodes))
            .with("max_min", json!(self.max_min))
            .with("min_max", json!(self.min_max))
            .with("gap", json!(self.gap))
            .with("refinement_delta", json!(self.refinement_delta))
    }
}

pub fn sphere_nodes(sphere_dim: usize, nodes: usize) -> Result<Vec<Vec<f64>>> {
    match sphere_dim {
        0 => Ok(vec![vec![1.0], vec![-1.0]]),
        1 => Ok((0..nodes)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / nodes as f64;
                vec![t.cos(), t.sin()]
            })
            .collect()),
        2 => Ok(fibonacci_sphere(nodes).into_iter().map(|p| p.to_vec()).collect()),
        _ => Err(Error::Unsupported(format!("rendezvous on S^{sphere_dim}"))),
    }
}

/// Both sides of the mixed-strategy game with payoff `ρ(x, y) = ‖x − y‖`,
/// solved as separate linear programs.
pub fn game_value(points: &[Vec<f64>]) -> Result<(f64, f64)> {
    let n = points.len();
    let a: Vec<Vec<f64>> = points
        .iter()
        .map(|p| {
            points
                .iter()
                .map(|q| p.iter().zip(q).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt())
                .collect()
        })
        .collect();
    // max v  s.t.  Σ_i p_i a_ij ≥ v,  Σ p = 1,  p ≥ 0
    let mut obj = vec![0.0; n + 1];
    obj[n] = 1.0;
    let mut lp = LinearProgram::new(n + 1, Sense::Maximize, obj.clone()).with_tolerance(1e-11);
    for j in 0..n {
        let mut row: Vec<f64> = (0..n).map(|i| a[i][j]).collect();
        row.push(-1.0);
        lp.add_ge(row, 0.0);
    }
    let mut row = vec![1.0; n];
    row.push(0.0);
    lp.add_eq(row.clone(), 1.0);
    for i in 0..n {
        lp.nonneg(i);
    }
    let primal = lp.solve()?.value;
    // min u  s.t.  Σ_j a_ij q_j ≤ u,  Σ q = 1,  q ≥ 0
    let mut lp = LinearProgram::new(n + 1, Sense::Minimize, obj).with_tolerance(1e-11);
    for ai in &a {
        let mut r = ai.clone();
        r.push(-1.0);
        lp.add_le(r, 0.0);
    }
    lp.add_eq(row, 1.0);
    for i in 0..n {
        lp.nonneg(i);
    }
    let dual = lp.solve()?.value;
    Ok((primal, dual))
}

/// Rendezvous number of `S^dim` (dim ∈ {0, 1, 2}) as the value of the
/// distance game on `nodes` equispaced (circle) or Fibonacci (S²) nodes.
pub fn rendezvous_estimate(sphere_dim: usize, nodes: usize) -> Result<Rendezvous> {
    if sphere_dim > 2 {
        return Err(Error::Unsupported(format!("rendezvous on S^{sphere_dim}")));
    }
    if sphere_dim > 0 && nodes < 4 {
        return Err(Error::Precondition("need at least 4 nodes".into()));
    }
    let pts = sphere_nodes(sphere_dim, nodes)?;
    let (max_min, min_max) = game_value(&pts)?;
    let value = 0.5 * (max_min + min_max);
    let refinement_delta = if sphere_dim == 0 {
        0.0
    } else {
        let (a, b) = game_value(&sphere_nodes(sphere_dim, nodes / 2)?)?;
        (value - 0.5 * (a + b)).abs()
    };
    Ok(Rendezvous {
        sphere_dim,
        nodes: pts.len(),
        value,
        max_min,
        min_max,
        gap: (max_min - min_max).abs(),
        refinement_delta,
    })
}

/// Solution of the Harris extremal problem
/// `c_m^{(k)} = max{|p^{(k)}(0)| : deg p ≤ m, |p(t)| ≤ (1+|t|)^m on ℝ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarrisLp {
    pub m: usize,
    pub k: usize,
    /// `p^{(k)}(0)` of the returned polynomial, which satisfies the growth
    /// condition on the verification grid: a certified lower bound.
    pub value: f64,
    /// Optimum of the final discretized LP: an upper bound for `c_m^{(k)}`.
    pub lp_value: f64,
    /// Monomial coefficients `c_0 … c_m`.
    pub coefficients: Vec<f64>,
    /// `max |p(t)| / (1+|t|)^m − 1` over the verification grid.
    pub residual: f64,
    pub grid_size: usize,
    pub verify_size: usize,
    pub iterations: usize,
}

impl HarrisLp {
    pub fn to_report(&self) -> BoundReport {
        BoundReport::new("harris", self.value, self.lp_value - self.value)
            .with("m", json!(self.m))
            .with("k", json!(self.k))
            .with("lp_value", json!(self.lp_value))
            .with("residual", json!(self.residual))
            .with("grid", json!(self.grid_size))
            .with("iterations", json!(self.iterations))
    }

    /// `p(t)` by Horner's rule.
    pub fn eval(&self, t: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `Σ_j b_j B_{j,m}(u)` by de Casteljau.
fn bernstein_eval(b: &[f64], u: f64) -> f64 {
    let mut w = b.to_vec();
    let n = w.len();
    for r in 1..n {
        for j in 0..n - r {
            w[j] = (1.0 - u) * w[j] + u * w[j + 1];
        }
    }
    w[0]
}

fn bernstein_basis(m: usize, u: f64) -> Vec<f64> {
    (0..=m)
        .map(|j| binomial(m, j) * u.powi(j as i32) * (1.0 - u).powi((m - j) as i32))
        .collect()
}

fn lobatto(n: usize) -> Vec<f64> {
    (0..=n)
        .map(|i| 0.5 * (1.0 - (std::f64::consts::PI * i as f64 / n as f64).cos()))
        .collect()
}

/// Computes `c_m^{(k)}` by cutting-plane linear programming.
///
/// By symmetry of the constraint an optimal `p` may be taken even or odd with
/// the parity of `k`, so only `t ≥ 0` matters. Substituting `t = u/(1−u)`,
///
/// ```text
/// p(t) / (1+t)^m = Σ_j s_j B_{j,m}(u),   s_j = c_j / C(m, j),
/// ```
///
/// turns the growth condition on `[0, ∞]` into `|Σ s_j B_{j,m}(u)| ≤ 1` on
/// `[0, 1]`, with `u = 1` carrying the leading-coefficient bound. The LP
/// maximizes `k!·C(m,k)·s_k` on a Chebyshev–Lobatto grid in `u`; violated
/// points of a ten times finer grid (refined by golden section around local
/// maxima) are added until none remain. The final coefficients are scaled
/// into the feasible set, which brackets the constant between `value` and
/// `lp_value`.
pub fn harris_constant(m: usize, k: usize) -> Result<HarrisLp> {
    if m > 40 || k > m {
        return Err(Error::Precondition(format!("need 0 ≤ k ≤ m ≤ 40, got m={m}, k={k}")));
    }
    let vars: Vec<usize> = (0..=m).filter(|j| j % 2 == k % 2).collect();
    let kpos = vars.iter().position(|&j| j == k).expect("k has its own parity");
    let base = 8 * (m + 1);
    let mut grid = lobatto(base);
    let verify = lobatto(10 * base);
    let kfact: f64 = (1..=k).map(|i| i as f64).product();
    let scale = kfact * binomial(m, k);

    let to_b = |s: &[f64]| -> Vec<f64> {
        let mut b = vec![0.0; m + 1];
        for (&j, v) in vars.iter().zip(s) {
            b[j] = *v;
        }
        b
    };

    let mut iterations = 0;
    let (s, lp_value) = loop {
        iterations += 1;
        let mut obj = vec![0.0; vars.len()];
        obj[kpos] = 1.0;
        let mut lp = LinearProgram::new(vars.len(), Sense::Maximize, obj).with_tolerance(1e-12);
        for &u in &grid {
            let basis = bernstein_basis(m, u);
            let row: Vec<f64> = vars.iter().map(|&j| basis[j]).collect();
            lp.add_le(row.clone(), 1.0);
            lp.add_ge(row, -1.0);
        }
        let sol = lp.solve().map_err(|e| Error::Lp(format!("harris m={m} k={k}: {e:?}")))?;
        let b = to_b(&sol.x);
        let f = |u: f64| bernstein_eval(&b, u).abs();
        let mut added = 0;
        let vals: Vec<f64> = verify.iter().map(|&u| f(u)).collect();
        for i in 0..verify.len() {
            let left = if i > 0 { vals[i - 1] } else { f64::NEG_INFINITY };
            let right = if i + 1 < vals.len() { vals[i + 1] } else { f64::NEG_INFINITY };
            if vals[i] >= left && vals[i] >= right && vals[i] > 1.0 + 1e-12 {
                let lo = verify[i.saturating_sub(1)];
                let hi = verify[(i + 1).min(verify.len() - 1)];
                let (u, _) = golden_section_max(f, lo, hi, 1e-14);
                grid.push(u);
                added += 1;
            }
        }
        if added == 0 || iterations >= 60 {
            break (sol.x, sol.value * scale);
        }
    };

    let b = to_b(&s);
    let mut worst: f64 = verify.iter().map(|&u| bernstein_eval(&b, u).abs()).fold(0.0, f64::max);
    for &u in &grid {
        worst = worst.max(bernstein_eval(&b, u).abs());
    }
    let shrink = 1.0 / worst.max(1.0);
    let s: Vec<f64> = s.iter().map(|v| v * shrink).collect();
    let b = to_b(&s);
    let residual = verify.iter().map(|&u| bernstein_eval(&b, u).abs()).fold(0.0, f64::max) - 1.0;
    let coefficients: Vec<f64> = b.iter().enumerate().map(|(j, v)| v * binomial(m, j)).collect();
    Ok(HarrisLp {
        m,
        k,
        value: s[kpos] * scale,
        lp_value,
        coefficients,
        residual,
        grid_size: grid.len(),
        verify_size: verify.len(),
        iterations,
    })
}
