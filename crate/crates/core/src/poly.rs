//! Explicit multivariate polynomials with exact gradients, and the random
//! families used by the falsification harnesses.

use rand::Rng;

use crate::geometry::ConvexBody;
use crate::sampling::{dot, gaussian, random_unit};

/// `T_k(t)` and `T_k'(t)` by the three-term recurrence.
pub fn chebyshev_with_derivative(k: usize, t: f64) -> (f64, f64) {
    match k {
        0 => (1.0, 0.0),
        1 => (t, 1.0),
        _ => {
            let (mut p0, mut p1) = (1.0, t);
            let (mut d0, mut d1) = (0.0, 1.0);
            for _ in 1..k {
                let p2 = 2.0 * t * p1 - p0;
                let d2 = 2.0 * p1 + 2.0 * t * d1 - d0;
                p0 = p1;
                p1 = p2;
                d0 = d1;
                d1 = d2;
            }
            (p1, d1)
        }
    }
}

/// `coef · T_k(⟨v, z⟩·scale + shift)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RidgeTerm {
    pub coef: f64,
    pub degree: usize,
    pub direction: Vec<f64>,
    pub scale: f64,
    pub shift: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Polynomial {
    Constant(f64),
    /// Sum of Chebyshev ridge terms.
    Ridge(Vec<RidgeTerm>),
    /// `Σ c_α z^α`.
    Monomial { exponents: Vec<Vec<u32>>, coefs: Vec<f64> },
    /// `c · ∏ (⟨a_j, z⟩ + b_j)`.
    Product { coef: f64, forms: Vec<(Vec<f64>, f64)> },
}

impl Polynomial {
    pub fn degree(&self) -> usize {
        match self {
            Polynomial::Constant(_) => 0,
            Polynomial::Ridge(t) => t.iter().map(|r| r.degree).max().unwrap_or(0),
            Polynomial::Monomial { exponents, .. } => exponents
                .iter()
                .map(|e| e.iter().sum::<u32>() as usize)
                .max()
                .unwrap_or(0),
            Polynomial::Product { forms, .. } => forms.len(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Polynomial::Constant(_) => "constant",
            Polynomial::Ridge(_) => "ridge",
            Polynomial::Monomial { .. } => "monomial",
            Polynomial::Product { .. } => "product",
        }
    }

    pub fn eval(&self, z: &[f64]) -> f64 {
        match self {
            Polynomial::Constant(c) => *c,
            Polynomial::Ridge(terms) => terms
                .iter()
                .map(|r| r.coef * chebyshev_with_derivative(r.degree, dot(&r.direction, z) * r.scale + r.shift).0)
                .sum(),
            Polynomial::Monomial { exponents, coefs } => exponents
                .iter()
                .zip(coefs)
                .map(|(e, c)| c * e.iter().zip(z).map(|(&k, x)| x.powi(k as i32)).product::<f64>())
                .sum(),
            Polynomial::Product { coef, forms } => {
                coef * forms.iter().map(|(a, b)| dot(a, z) + b).product::<f64>()
            }
        }
    }

    /// Exact gradient at `z`.
    pub fn gradient(&self, z: &[f64]) -> Vec<f64> {
        let d = z.len();
        let mut g = vec![0.0; d];
        match self {
            Polynomial::Constant(_) => {}
            Polynomial::Ridge(terms) => {
                for r in terms {
                    let (_, dt) = chebyshev_with_derivative(r.degree, dot(&r.direction, z) * r.scale + r.shift);
                    for i in 0..d {
                        g[i] += r.coef * dt * r.scale * r.direction[i];
                    }
                }
            }
            Polynomial::Monomial { exponents, coefs } => {
                for (e, c) in exponents.iter().zip(coefs) {
                    for i in 0..d {
                        if e[i] == 0 {
                            continue;
                        }
                        let mut term = c * e[i] as f64;
                        for (j, (&k, x)) in e.iter().zip(z).enumerate() {
                            let k = if j == i { k - 1 } else { k };
                            term *= x.powi(k as i32);
                        }
                        g[i] += term;
                    }
                }
            }
            Polynomial::Product { coef, forms } => {
                let vals: Vec<f64> = forms.iter().map(|(a, b)| dot(a, z) + b).collect();
                for (j, (a, _)) in forms.iter().enumerate() {
                    let others: f64 = vals
                        .iter()
                        .enumerate()
                        .filter(|&(l, _)| l != j)
                        .map(|(_, v)| v)
                        .product();
                    for i in 0..d {
                        g[i] += coef * others * a[i];
                    }
                }
            }
        }
        g
    }

    /// Multiplies every coefficient by `s`.
    pub fn scaled(&self, s: f64) -> Polynomial {
        match self {
            Polynomial::Constant(c) => Polynomial::Constant(c * s),
            Polynomial::Ridge(terms) => Polynomial::Ridge(
                terms
                    .iter()
                    .map(|r| RidgeTerm { coef: r.coef * s, ..r.clone() })
                    .collect(),
            ),
            Polynomial::Monomial { exponents, coefs } => Polynomial::Monomial {
                exponents: exponents.clone(),
                coefs: coefs.iter().map(|c| c * s).collect(),
            },
            Polynomial::Product { coef, forms } => Polynomial::Product {
                coef: coef * s,
                forms: forms.clone(),
            },
        }
    }
}

/// Every exponent vector in `d` variables of total degree ≤ `n`.
pub fn exponents_up_to(d: usize, n: usize) -> Vec<Vec<u32>> {
    fn rec(d: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(d, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, n as u32, &mut Vec::with_capacity(d), &mut out);
    out
}

/// Random polynomial of degree ≤ `n`, shaped to the body so that a good share
/// of draws is close to extremal: Chebyshev ridge sums whose argument maps a
/// supporting layer of `K` nearly onto `[−1, 1]`, products of linear forms
/// vanishing inside `K`, and Gaussian coefficients in the monomial basis
/// centered at an interior point.
pub fn random_polynomial<R: Rng>(rng: &mut R, k: &ConvexBody, n: usize) -> Polynomial {
    let d = k.dim();
    if n == 0 {
        return Polynomial::Constant(gaussian(rng));
    }
    match rng.gen_range(0..3) {
        0 => {
            let terms = rng.gen_range(1..=3);
            Polynomial::Ridge(
                (0..terms)
                    .map(|j| {
                        let v = random_unit(rng, d);
                        let neg: Vec<f64> = v.iter().map(|c| -c).collect();
                        let (hp, hm) = (k.support_vec(&v), k.support_vec(&neg));
                        let w = hp + hm;
                        let shrink = rng.gen_range(0.6..1.0);
                        let degree = if j == 0 { n } else { rng.gen_range(0..=n) };
                        RidgeTerm {
                            coef: if j == 0 { 1.0 } else { 0.3 * gaussian(rng) },
                            degree,
                            direction: v,
                            scale: 2.0 * shrink / w,
                            shift: -shrink * (hp - hm) / w + 0.1 * gaussian(rng),
                        }
                    })
                    .collect(),
            )
        }
        1 => {
            let c = k.interior_point();
            let degree = rng.gen_range(1..=n);
            let forms = (0..degree)
                .map(|_| {
                    let a = random_unit(rng, d);
                    let off = k.width_vec(&a) * rng.gen_range(-0.5..0.5);
                    let b = -dot(&a, &c) + off;
                    (a, b)
                })
                .collect();
            Polynomial::Product { coef: 1.0, forms }
        }
        _ => {
            let c = k.interior_point();
            let exps = exponents_up_to(d, n);
            let centered: Vec<f64> = exps.iter().map(|_| gaussian(rng)).collect();
            let coefs = recenter(&exps, &centered, &c);
            Polynomial::Monomial { exponents: exps, coefs }
        }
    }
}

/// Coefficients in the monomial basis of `Σ c_α (z − c)^α`.
pub fn recenter(exps: &[Vec<u32>], centered: &[f64], c: &[f64]) -> Vec<f64> {
    let mut coefs = vec![0.0; exps.len()];
    for (e, &ce) in exps.iter().zip(centered) {
        for (idx, f) in exps.iter().enumerate() {
            if f.iter().zip(e).all(|(a, b)| a <= b) {
                let mut m = ce;
                for i in 0..c.len() {
                    m *= binom(e[i], f[i]) * (-c[i]).powi((e[i] - f[i]) as i32);
                }
                coefs[idx] += m;
            }
        }
    }
    coefs
}

fn binom(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::rng;

    #[test]
    fn chebyshev_derivative_matches_closed_forms() {
        let t: f64 = 0.37;
        assert!((chebyshev_with_derivative(3, t).0 - (4.0 * t.powi(3) - 3.0 * t)).abs() < 1e-15);
        assert!((chebyshev_with_derivative(3, t).1 - (12.0 * t * t - 3.0)).abs() < 1e-14);
        assert_eq!(chebyshev_with_derivative(0, t), (1.0, 0.0));
    }

    #[test]
    fn gradients_match_central_differences() {
        let mut r = rng(9);
        let k = ConvexBody::simplex(2).unwrap();
        let h = 1e-5;
        for _ in 0..200 {
            let p = random_polynomial(&mut r, &k, 5);
            let z = [0.2 + 0.3 * gaussian(&mut r), 0.3 + 0.3 * gaussian(&mut r)];
            let g = p.gradient(&z);
            for i in 0..2 {
                let mut zp = z;
                let mut zm = z;
                zp[i] += h;
                zm[i] -= h;
                let fd = (p.eval(&zp) - p.eval(&zm)) / (2.0 * h);
                let scale = g[i].abs().max(p.eval(&z).abs()).max(1.0);
                assert!((fd - g[i]).abs() <= 1e-6 * scale, "{} {fd} {}", p.kind(), g[i]);
            }
        }
    }

    #[test]
    fn degrees_are_bounded() {
        let mut r = rng(10);
        let k = ConvexBody::cube(3, 1.0).unwrap();
        for n in 0..6 {
            for _ in 0..20 {
                assert!(random_polynomial(&mut r, &k, n).degree() <= n);
            }
        }
    }

    #[test]
    fn monomial_recentering_is_exact() {
        let exps = exponents_up_to(2, 3);
        assert_eq!(exps.len(), 10);
        let mut r = rng(1);
        let centered: Vec<f64> = exps.iter().map(|_| gaussian(&mut r)).collect();
        let c = [0.7, -1.3];
        let p = Polynomial::Monomial { exponents: exps.clone(), coefs: recenter(&exps, &centered, &c) };
        for z in [[0.0, 0.0], [1.5, 2.0], [-0.4, 0.9]] {
            let direct: f64 = exps
                .iter()
                .zip(&centered)
                .map(|(e, a)| a * (z[0] - c[0]).powi(e[0] as i32) * (z[1] - c[1]).powi(e[1] as i32))
                .sum();
            assert!((p.eval(&z) - direct).abs() < 1e-12 * direct.abs().max(1.0));
        }
    }
}
