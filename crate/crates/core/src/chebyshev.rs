//! Chebyshev polynomials and polynomial growth outside a convex body.
//!
//! For `x ∉ K` the largest value at `x` of a polynomial of degree `n` bounded
//! by one on `K` is `T_n(α(K, x))`, attained by the ridge polynomial
//! `T_n((2⟨v, z⟩ − h(K,v) + h(K,−v)) / w(K,v))` for a maximizing direction `v`.

use rayon::prelude::*;
use serde_json::json;

use crate::error::{check_dim, Error, Result};
use crate::geometry::{sample_body, ConvexBody, Direction, Point};
use crate::minkowski::alpha_search;
use crate::poly::{random_polynomial, Polynomial, RidgeTerm};
use crate::report::BoundReport;
use crate::sampling::{dot, substream};

/// Size of the low-discrepancy sample used for sup-norms on a body.
pub const NORM_SAMPLE: usize = 10_000;

/// `T_n(t)`: `cos(n·acos t)` on `[−1, 1]`, `±cosh(n·acosh|t|)` outside.
pub fn cheb_t(n: u32, t: f64) -> f64 {
    if t.abs() <= 1.0 {
        (n as f64 * t.acos()).cos()
    } else {
        let v = (n as f64 * t.abs().acosh()).cosh();
        if t < 0.0 && n % 2 == 1 {
            -v
        } else {
            v
        }
    }
}

/// `log T_n(t)` for `t ≥ 1`, accurate where `T_n(t)` itself overflows.
pub fn log_cheb_t(n: u32, t: f64) -> f64 {
    assert!(t >= 1.0, "log_cheb_t needs t ≥ 1");
    let l = t.acosh();
    let nl = n as f64 * l;
    nl - std::f64::consts::LN_2 + (-2.0 * nl).exp().ln_1p()
}

/// `T_n(α(K, x))` for exterior `x`.
pub fn growth_envelope(k: &ConvexBody, x: &[f64], n: u32) -> Result<f64> {
    require_exterior(k, x)?;
    if n == 0 {
        return Ok(1.0);
    }
    let a = alpha_search(k, x)?.value;
    Ok(cheb_t(n, a))
}

fn require_exterior(k: &ConvexBody, x: &[f64]) -> Result<()> {
    check_dim(k.dim(), x.len())?;
    if k.contains(x) {
        return Err(Error::Precondition(
            "point lies in the body, where the growth envelope is 1".into(),
        ));
    }
    Ok(())
}

/// `P(z) = T_n(scale·⟨v, z⟩ + shift)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RidgePolynomial {
    pub degree: u32,
    pub direction: Direction,
    pub scale: f64,
    pub shift: f64,
}

impl RidgePolynomial {
    /// The ridge polynomial of the supporting layer of `K` orthogonal to `v`,
    /// whose argument runs over `[−1, 1]` on `K`.
    pub fn for_layer(k: &ConvexBody, v: &Direction, degree: u32) -> Self {
        let hp = k.support(v);
        let hm = k.support(&v.neg());
        let w = hp + hm;
        RidgePolynomial {
            degree,
            direction: v.clone(),
            scale: 2.0 / w,
            shift: (hm - hp) / w,
        }
    }

    pub fn argument(&self, z: &[f64]) -> f64 {
        self.scale * dot(self.direction.as_slice(), z) + self.shift
    }

    pub fn eval(&self, z: &[f64]) -> f64 {
        cheb_t(self.degree, self.argument(z))
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::Ridge(vec![RidgeTerm {
            coef: 1.0,
            degree: self.degree as usize,
            direction: self.direction.as_slice().to_vec(),
            scale: self.scale,
            shift: self.shift,
        }])
    }
}

/// The extremal polynomial at exterior `x`, oriented so that its argument at
/// `x` is `+α(K, x)` and hence `P(x) = T_n(α)`.
pub fn extremal_polynomial(k: &ConvexBody, x: &[f64], n: u32) -> Result<RidgePolynomial> {
    require_exterior(k, x)?;
    let v = alpha_search(k, x)?.direction;
    let p = RidgePolynomial::for_layer(k, &v, n);
    if p.argument(x) < 0.0 {
        return Ok(RidgePolynomial::for_layer(k, &v.neg(), n));
    }
    Ok(p)
}

/// `log(α + √(α² − 1))`, the exponential growth rate of `T_n(α)`, for
/// exterior `x`; zero on `K`.
pub fn green_value(k: &ConvexBody, x: &[f64]) -> Result<f64> {
    check_dim(k.dim(), x.len())?;
    if k.contains(x) {
        return Ok(0.0);
    }
    let a = alpha_search(k, x)?.value.max(1.0);
    Ok((a + (a * a - 1.0).sqrt()).ln())
}

/// Outcome of the random-polynomial probe at one exterior point.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthCheck {
    pub point: Point,
    pub degree: u32,
    pub alpha: f64,
    pub envelope: f64,
    /// Largest `|p(x)| / ‖p‖` over the random polynomials.
    pub max_found: f64,
    /// `max_found / envelope`.
    pub ratio: f64,
    /// `P(x) / T_n(α)` for the extremal polynomial.
    pub extremal_ratio: f64,
    /// Sampled `‖P‖_K` of the extremal polynomial.
    pub extremal_sup: f64,
    pub trials: usize,
}

impl GrowthCheck {
    pub fn to_report(&self) -> BoundReport {
        BoundReport::new("cheb_growth", self.max_found, self.envelope * 5e-3)
            .with("n", json!(self.degree))
            .with("alpha", json!(self.alpha))
            .with("envelope", json!(self.envelope))
            .with("ratio", json!(self.ratio))
            .with("extremal_ratio", json!(self.extremal_ratio))
            .with("extremal_sup", json!(self.extremal_sup))
            .with("trials", json!(self.trials))
    }
}

/// Random-polynomial probe of `C_n(K, x) ≤ T_n(α(K, x))`.
///
/// Each of `trials` random polynomials of degree ≤ `n` is normalized by its
/// maximum modulus on a deterministic sample of [`NORM_SAMPLE`] points of `K`
/// (plus vertices) and evaluated at `x`. Sampling can only underestimate the
/// norm, so a ratio slightly above one signals sampling error, not a
/// counterexample. This is a lower-bound probe, never a proof.
pub fn sampled_growth_check(k: &ConvexBody, x: &[f64], n: u32, trials: usize, seed: u64) -> Result<GrowthCheck> {
    Ok(sampled_growth_check_points(k, &[x.to_vec()], n, trials, seed)?.remove(0))
}

/// [`sampled_growth_check`] at several exterior points, sharing every random
/// polynomial and its normalization across the points.
pub fn sampled_growth_check_points(
    k: &ConvexBody,
    points: &[Point],
    n: u32,
    trials: usize,
    seed: u64,
) -> Result<Vec<GrowthCheck>> {
    for x in points {
        require_exterior(k, x)?;
    }
    let sample = sample_body(k, NORM_SAMPLE);
    let per_trial: Vec<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut r = substream(seed, t as u64);
            let p = random_polynomial(&mut r, k, n as usize);
            let norm = sample.iter().map(|z| p.eval(z).abs()).fold(0.0, f64::max);
            if !(norm > 1e-300) {
                return vec![0.0; points.len()];
            }
            points.iter().map(|x| p.eval(x).abs() / norm).collect()
        })
        .collect();
    points
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let est = alpha_search(k, x)?;
            let envelope = if n == 0 { 1.0 } else { cheb_t(n, est.value) };
            let max_found = per_trial.iter().map(|v| v[i]).fold(0.0, f64::max);
            let p = extremal_polynomial(k, x, n)?;
            let extremal_sup = sample.iter().map(|z| p.eval(z).abs()).fold(0.0, f64::max);
            Ok(GrowthCheck {
                point: x.clone(),
                degree: n,
                alpha: est.value,
                envelope,
                max_found,
                ratio: max_found / envelope,
                extremal_ratio: p.eval(x) / envelope,
                extremal_sup,
                trials,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::random::random_hpolytope;
    use crate::sampling::rng;

    fn recurrence(n: u32, t: f64) -> f64 {
        let (mut a, mut b) = (1.0, t);
        if n == 0 {
            return a;
        }
        for _ in 1..n {
            let c = 2.0 * t * b - a;
            a = b;
            b = c;
        }
        b
    }

    #[test]
    fn cheb_t_examples() {
        assert!((cheb_t(3, 2.0) - 26.0).abs() < 1e-12);
        assert!((cheb_t(7, 1.0) - 1.0).abs() < 1e-15);
        assert!((cheb_t(2, 0.5) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn cheb_t_matches_recurrence() {
        for n in 0..=50 {
            for i in 0..=600 {
                let t = -3.0 + i as f64 * 0.01;
                let a = cheb_t(n, t);
                let b = recurrence(n, t);
                // mixed test: relative away from zeros, absolute near them
                assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "n={n} t={t} {a} {b}");
            }
        }
    }

    #[test]
    fn log_cheb_t_matches_direct() {
        for n in [1, 5, 20, 40] {
            for t in [1.0, 1.1, 2.0, 5.0] {
                assert!((log_cheb_t(n, t) - cheb_t(n, t).ln()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn growth_envelope_examples() {
        let seg = ConvexBody::cube(1, 1.0).unwrap();
        assert!((growth_envelope(&seg, &[2.0], 3).unwrap() - 26.0).abs() < 1e-12);
        let disk = ConvexBody::ball(vec![0.0, 0.0], 1.0).unwrap();
        assert!((growth_envelope(&disk, &[2.0, 0.0], 1).unwrap() - 2.0).abs() < 1e-9);
        let tri = ConvexBody::simplex(2).unwrap();
        // brute-force α on a fine angular grid, then the recurrence
        let m = 200_000;
        let a = (0..m)
            .map(|i| {
                let t = std::f64::consts::PI * i as f64 / m as f64;
                crate::minkowski::quotient(&tri, &[t.cos(), t.sin()], &[1.0, 1.0])
            })
            .fold(0.0, f64::max);
        let e = growth_envelope(&tri, &[1.0, 1.0], 4).unwrap();
        assert!((e - recurrence(4, a)).abs() < 1e-7 * e);
        assert!(matches!(growth_envelope(&tri, &[0.2, 0.2], 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn envelope_increases_with_degree() {
        let tri = ConvexBody::simplex(2).unwrap();
        let mut prev = 1.0;
        for n in 1..12 {
            let e = growth_envelope(&tri, &[0.8, 0.8], n).unwrap();
            assert!(e > prev);
            prev = e;
        }
    }

    #[test]
    fn extremal_polynomial_examples() {
        let seg = ConvexBody::cube(1, 1.0).unwrap();
        let p = extremal_polynomial(&seg, &[2.0], 2).unwrap();
        assert!((p.eval(&[2.0]) - 7.0).abs() < 1e-12);
        assert!((p.eval(&[0.3]) - cheb_t(2, 0.3)).abs() < 1e-12);
        let sq = ConvexBody::cube(2, 1.0).unwrap();
        let p = extremal_polynomial(&sq, &[3.0, 0.0], 1).unwrap();
        assert!((p.eval(&[3.0, 0.0]) - 3.0).abs() < 1e-9);
        assert!((p.eval(&[0.5, 0.9]) - 0.5).abs() < 1e-9);
        let tri = ConvexBody::simplex(2).unwrap();
        let p = extremal_polynomial(&tri, &[2.0, 0.0], 3).unwrap();
        let e = growth_envelope(&tri, &[2.0, 0.0], 3).unwrap();
        assert!((p.eval(&[2.0, 0.0]) - e).abs() < 1e-6);
    }

    #[test]
    fn extremal_polynomial_is_bounded_on_body() {
        let mut r = rng(12);
        let k = random_hpolytope(&mut r, 2, 6);
        let pts = sample_body(&k, NORM_SAMPLE);
        for x in [[3.0, 0.0], [-2.0, 2.5], [0.0, -4.0]] {
            let p = extremal_polynomial(&k, &x, 5).unwrap();
            let sup = pts.iter().map(|z| p.eval(z).abs()).fold(0.0, f64::max);
            assert!(sup <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn green_value_examples() {
        let seg = ConvexBody::cube(1, 1.0).unwrap();
        assert_eq!(green_value(&seg, &[1.0]).unwrap(), 0.0);
        assert!((green_value(&seg, &[2.0]).unwrap() - (2.0 + 3f64.sqrt()).ln()).abs() < 1e-12);
        let disk = ConvexBody::ball(vec![0.0, 0.0], 1.0).unwrap();
        assert!((green_value(&disk, &[5.0, 0.0]).unwrap() - (5.0 + 24f64.sqrt()).ln()).abs() < 1e-9);
    }

    #[test]
    fn envelope_root_approaches_green_value() {
        // T_n(α) = ½ρⁿ(1 + ρ^{−2n}), so the n-th root carries a 2^{−1/n}
        // factor: compare in the log domain with that factor restored, and at
        // a degree large enough for the plain root.
        let tri = ConvexBody::simplex(2).unwrap();
        for x in [[1.2, 0.1], [0.9, 0.9], [-0.5, 0.3]] {
            let a = alpha_search(&tri, &x).unwrap().value;
            assert!(a >= 1.1);
            let g = green_value(&tri, &x).unwrap();
            let n = 40;
            let root = ((log_cheb_t(n, a) + std::f64::consts::LN_2) / n as f64).exp();
            assert!((root / g.exp() - 1.0).abs() <= 1e-3);
            let plain = (log_cheb_t(1000, a) / 1000.0).exp();
            assert!((plain / g.exp() - 1.0).abs() <= 1e-3);
        }
    }

    #[test]
    fn larger_body_has_smaller_envelope() {
        let small = ConvexBody::simplex(2).unwrap();
        let big = ConvexBody::cube(2, 1.5).unwrap();
        for n in [1, 3, 6] {
            let x = [2.0, 1.7];
            assert!(growth_envelope(&big, &x, n).unwrap() <= growth_envelope(&small, &x, n).unwrap() + 1e-9);
        }
    }

    #[test]
    fn growth_check_examples() {
        let seg = ConvexBody::cube(1, 1.0).unwrap();
        let c = sampled_growth_check(&seg, &[2.0], 3, 1000, 1).unwrap();
        assert!(c.max_found <= 26.0 * (1.0 + 5e-3));
        let c0 = sampled_growth_check(&seg, &[2.0], 0, 50, 1).unwrap();
        assert!((c0.max_found - 1.0).abs() < 1e-15);
        let tri = ConvexBody::simplex(2).unwrap();
        let c = sampled_growth_check(&tri, &[1.0, 1.0], 2, 1000, 5).unwrap();
        assert!(c.ratio <= 1.0 + 5e-3);
        assert!(c.extremal_ratio >= 1.0 - 1e-3);
    }
}
