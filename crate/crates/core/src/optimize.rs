//! Small local optimizers shared by the min–max and sup-over-directions
//! searches: golden section, L-BFGS, Nelder–Mead, and two ascent methods
//! on the unit sphere.

use rand::Rng;

use crate::sampling::{dot, norm, random_unit, SeededRng};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes a unimodal function on `[a, b]`. Returns `(argmax, max)`.
pub fn golden_section_max<F: FnMut(f64) -> f64>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut best = if fc >= fd { (c, fc) } else { (d, fd) };
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        if fc > best.1 {
            best = (c, fc);
        }
        if fd > best.1 {
            best = (d, fd);
        }
    }
    best
}

/// Scans a periodic grid `f(θ_k)` and refines the `max_peaks` highest local
/// maxima with golden section on the two adjacent cells.
///
/// Returns `(θ*, f(θ*))`.
pub fn periodic_grid_max<F: Fn(f64) -> f64>(
    f: F,
    period: f64,
    nodes: usize,
    max_peaks: usize,
) -> (f64, f64) {
    let h = period / nodes as f64;
    let vals: Vec<f64> = (0..nodes).map(|k| f(k as f64 * h)).collect();
    let mut peaks: Vec<(usize, f64)> = (0..nodes)
        .filter(|&k| {
            let l = vals[(k + nodes - 1) % nodes];
            let r = vals[(k + 1) % nodes];
            vals[k] >= l && vals[k] >= r
        })
        .map(|k| (k, vals[k]))
        .collect();
    if peaks.is_empty() {
        peaks.push((0, vals[0]));
    }
    peaks.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    peaks.truncate(max_peaks.max(1));
    let mut best = (0.0, f64::NEG_INFINITY);
    for (k, v) in peaks {
        let th = k as f64 * h;
        if v > best.1 {
            best = (th, v);
        }
        let (t, fv) = golden_section_max(&f, th - h, th + h, 1e-13 * period.max(1.0));
        if fv > best.1 {
            best = (t.rem_euclid(period), fv);
        }
    }
    best
}

#[derive(Debug, Clone)]
pub struct LbfgsOptions {
    pub max_iter: usize,
    pub memory: usize,
    pub grad_tol: f64,
    pub f_tol: f64,
}

impl Default for LbfgsOptions {
    fn default() -> Self {
        LbfgsOptions {
            max_iter: 500,
            memory: 8,
            grad_tol: 1e-9,
            f_tol: 1e-14,
        }
    }
}

/// Limited-memory BFGS with Armijo backtracking. `fg` returns the value and
/// writes the gradient. Returns `(x, f(x))`.
pub fn lbfgs_minimize<F>(mut fg: F, x0: &[f64], opts: &LbfgsOptions) -> (Vec<f64>, f64)
where
    F: FnMut(&[f64], &mut [f64]) -> f64,
{
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut g = vec![0.0; n];
    let mut f = fg(&x, &mut g);
    let mut s_hist: Vec<Vec<f64>> = Vec::new();
    let mut y_hist: Vec<Vec<f64>> = Vec::new();
    let mut xn = vec![0.0; n];
    let mut gn = vec![0.0; n];

    for _ in 0..opts.max_iter {
        if !f.is_finite() || norm(&g) < opts.grad_tol {
            break;
        }
        // two-loop recursion
        let mut q = g.clone();
        let k = s_hist.len();
        let mut alpha = vec![0.0; k];
        for i in (0..k).rev() {
            let rho = 1.0 / dot(&y_hist[i], &s_hist[i]);
            alpha[i] = rho * dot(&s_hist[i], &q);
            for (qj, yj) in q.iter_mut().zip(&y_hist[i]) {
                *qj -= alpha[i] * yj;
            }
        }
        if k > 0 {
            let gamma = dot(&s_hist[k - 1], &y_hist[k - 1]) / dot(&y_hist[k - 1], &y_hist[k - 1]);
            q.iter_mut().for_each(|v| *v *= gamma);
        } else {
            let scale = 1e-2 / norm(&g).max(1e-12);
            q.iter_mut().for_each(|v| *v *= scale);
        }
        for i in 0..k {
            let rho = 1.0 / dot(&y_hist[i], &s_hist[i]);
            let beta = rho * dot(&y_hist[i], &q);
            for (qj, sj) in q.iter_mut().zip(&s_hist[i]) {
                *qj += (alpha[i] - beta) * sj;
            }
        }
        let mut dir: Vec<f64> = q.iter().map(|v| -v).collect();
        let mut slope = dot(&dir, &g);
        if slope >= 0.0 {
            // not a descent direction: reset memory, use steepest descent
            s_hist.clear();
            y_hist.clear();
            let scale = 1e-2 / norm(&g).max(1e-12);
            dir = g.iter().map(|v| -v * scale).collect();
            slope = dot(&dir, &g);
        }

        let mut step = 1.0;
        let mut fnew;
        let mut accepted = false;
        for _ in 0..60 {
            for i in 0..n {
                xn[i] = x[i] + step * dir[i];
            }
            fnew = fg(&xn, &mut gn);
            if fnew.is_finite() && fnew <= f + 1e-4 * step * slope {
                accepted = true;
                let s: Vec<f64> = (0..n).map(|i| xn[i] - x[i]).collect();
                let y: Vec<f64> = (0..n).map(|i| gn[i] - g[i]).collect();
                let sy = dot(&s, &y);
                let df = f - fnew;
                x.copy_from_slice(&xn);
                g.copy_from_slice(&gn);
                f = fnew;
                if sy > 1e-16 * norm(&s) * norm(&y) && sy > 0.0 {
                    s_hist.push(s);
                    y_hist.push(y);
                    if s_hist.len() > opts.memory {
                        s_hist.remove(0);
                        y_hist.remove(0);
                    }
                }
                if df.abs() <= opts.f_tol * f.abs().max(1.0) {
                    return (x, f);
                }
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (x, f)
}

/// Nelder–Mead simplex minimizer with standard coefficients.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    initial_step: f64,
    max_evals: usize,
    f_tol: f64,
) -> (Vec<f64>, f64) {
    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += initial_step;
        let v = f(&p);
        simplex.push((p, v));
    }
    let mut evals = n + 1;
    while evals < max_evals {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[n].1;
        if (worst - best).abs() <= f_tol * (best.abs() + f_tol) {
            break;
        }
        let mut centroid = vec![0.0; n];
        for (p, _) in &simplex[..n] {
            for j in 0..n {
                centroid[j] += p[j] / n as f64;
            }
        }
        let along = |t: f64, s: &[f64]| -> Vec<f64> {
            (0..n).map(|j| centroid[j] + t * (s[j] - centroid[j])).collect()
        };
        let xr = along(-1.0, &simplex[n].0);
        let fr = f(&xr);
        evals += 1;
        if fr < simplex[0].1 {
            let xe = along(-2.0, &simplex[n].0);
            let fe = f(&xe);
            evals += 1;
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let (xc, fc) = if fr < simplex[n].1 {
                let xc = along(-0.5, &simplex[n].0);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = along(0.5, &simplex[n].0);
                let fc = f(&xc);
                (xc, fc)
            };
            evals += 1;
            if fc < simplex[n].1.min(fr) {
                simplex[n] = (xc, fc);
            } else {
                let x_best = simplex[0].0.clone();
                for item in simplex.iter_mut().skip(1) {
                    let p: Vec<f64> = (0..n).map(|j| x_best[j] + 0.5 * (item.0[j] - x_best[j])).collect();
                    let v = f(&p);
                    *item = (p, v);
                }
                evals += n;
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}

/// Orthonormal basis of the tangent space of the unit sphere at `v`,
/// randomly rotated when `rng` is given.
pub fn tangent_basis(v: &[f64], rng: Option<&mut SeededRng>) -> Vec<Vec<f64>> {
    let d = v.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(d.saturating_sub(1));
    let mut candidates: Vec<Vec<f64>> = match rng {
        Some(r) => (0..d + 2).map(|_| random_unit(r, d)).collect(),
        None => (0..d)
            .map(|i| {
                let mut e = vec![0.0; d];
                e[i] = 1.0;
                e
            })
            .collect(),
    };
    for c in candidates.iter_mut() {
        if basis.len() + 1 == d {
            break;
        }
        let pv = dot(c, v);
        for j in 0..d {
            c[j] -= pv * v[j];
        }
        for b in &basis {
            let pb = dot(c, b);
            for j in 0..d {
                c[j] -= pb * b[j];
            }
        }
        let n = norm(c);
        if n > 1e-8 {
            basis.push(c.iter().map(|x| x / n).collect());
        }
    }
    basis
}

fn normalized(v: &[f64]) -> Vec<f64> {
    let n = norm(v);
    v.iter().map(|x| x / n).collect()
}

/// Derivative-free compass search for a maximum of `f` on the unit sphere.
/// The tangent frame is re-randomized whenever the step shrinks so that the
/// search does not stall on ridges of piecewise smooth objectives.
pub fn sphere_pattern_search_max<F: Fn(&[f64]) -> f64>(
    f: &F,
    start: &[f64],
    initial_step: f64,
    min_step: f64,
    rng: &mut SeededRng,
) -> (Vec<f64>, f64) {
    let mut v = normalized(start);
    let mut fv = f(&v);
    let mut step = initial_step;
    let mut basis = tangent_basis(&v, None);
    let mut guard = 0usize;
    while step > min_step && guard < 20_000 {
        guard += 1;
        let mut improved = false;
        let mut best = (v.clone(), fv);
        for b in &basis {
            for sgn in [1.0, -1.0] {
                let cand: Vec<f64> = v.iter().zip(b).map(|(x, y)| x + sgn * step * y).collect();
                let cand = normalized(&cand);
                let fc = f(&cand);
                if fc > best.1 {
                    best = (cand, fc);
                    improved = true;
                }
            }
        }
        if improved {
            v = best.0;
            fv = best.1;
            basis = tangent_basis(&v, Some(rng));
        } else {
            step *= 0.5;
            basis = tangent_basis(&v, Some(rng));
        }
    }
    (v, fv)
}

/// Riemannian gradient ascent on the unit sphere with Armijo backtracking.
/// `fg` returns the value and the Euclidean gradient.
pub fn sphere_gradient_ascent<F>(fg: &F, start: &[f64], max_iter: usize, grad_tol: f64) -> (Vec<f64>, f64)
where
    F: Fn(&[f64], &mut [f64]) -> f64,
{
    let d = start.len();
    let mut x = normalized(start);
    let mut g = vec![0.0; d];
    let mut fx = fg(&x, &mut g);
    let mut gn = vec![0.0; d];
    let mut step = 0.1;
    for _ in 0..max_iter {
        if !fx.is_finite() {
            break;
        }
        let radial = dot(&g, &x);
        let tg: Vec<f64> = g.iter().zip(&x).map(|(gi, xi)| gi - radial * xi).collect();
        let tn = norm(&tg);
        if tn < grad_tol {
            break;
        }
        let mut moved = false;
        for _ in 0..60 {
            let cand: Vec<f64> = x.iter().zip(&tg).map(|(xi, ti)| xi + step * ti).collect();
            let cand = normalized(&cand);
            let fc = fg(&cand, &mut gn);
            if fc.is_finite() && fc >= fx + 1e-4 * step * tn * tn * 0.5 {
                x = cand;
                fx = fc;
                g.copy_from_slice(&gn);
                moved = true;
                step *= 2.0;
                break;
            }
            step *= 0.5;
            if step < 1e-18 {
                break;
            }
        }
        if !moved {
            break;
        }
    }
    (x, fx)
}

/// Uniform-ish random restarts helper.
pub fn random_start<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    random_unit(rng, dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::rng;

    #[test]
    fn golden_section_quadratic() {
        let (x, v) = golden_section_max(|t| -(t - 0.3) * (t - 0.3) + 2.0, -1.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-6);
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn periodic_grid_finds_global_peak() {
        let f = |t: f64| (3.0 * t).cos() + 0.5 * t.sin();
        let (_, v) = periodic_grid_max(f, 2.0 * std::f64::consts::PI, 256, 4);
        // dense brute force
        let brute = (0..2_000_000)
            .map(|k| f(k as f64 * 2.0 * std::f64::consts::PI / 2e6))
            .fold(f64::MIN, f64::max);
        assert!(v >= brute - 1e-12);
    }

    #[test]
    fn lbfgs_rosenbrock() {
        let (x, f) = lbfgs_minimize(
            |x, g| {
                let (a, b) = (x[0], x[1]);
                g[0] = -2.0 * (1.0 - a) - 400.0 * a * (b - a * a);
                g[1] = 200.0 * (b - a * a);
                (1.0 - a).powi(2) + 100.0 * (b - a * a).powi(2)
            },
            &[-1.2, 1.0],
            &LbfgsOptions {
                max_iter: 2000,
                f_tol: 0.0,
                ..Default::default()
            },
        );
        assert!(f < 1e-12, "f = {f}");
        assert!((x[0] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn nelder_mead_quadratic() {
        let (x, f) = nelder_mead(|x| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 2.0).powi(2), &[0.0, 0.0], 0.5, 5000, 1e-16);
        assert!(f < 1e-12);
        assert!((x[1] + 2.0).abs() < 1e-5);
    }

    #[test]
    fn sphere_searches_find_linear_maximum() {
        let c = [0.2, -0.5, 0.8];
        let cn = norm(&c);
        let mut r = rng(1);
        let (_, v) = sphere_pattern_search_max(&|x: &[f64]| dot(x, &c), &[1.0, 0.0, 0.0], 0.5, 1e-12, &mut r);
        assert!((v - cn).abs() < 1e-10);
        let (_, v2) = sphere_gradient_ascent(
            &|x: &[f64], g: &mut [f64]| {
                g.copy_from_slice(&c);
                dot(x, &c)
            },
            &[1.0, 0.0, 0.0],
            1000,
            1e-12,
        );
        assert!((v2 - cn).abs() < 1e-10);
    }
}
