//! Deterministic point sets and seeded random sources.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The RNG used everywhere a seed is accepted.
pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream for sub-task `index` of a seeded computation,
/// so that parallel work items do not depend on scheduling order.
pub fn substream(seed: u64, index: u64) -> SeededRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index.wrapping_add(1));
    r
}

const PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Radical inverse of `i` in base `b`.
pub fn radical_inverse(mut i: u64, b: u32) -> f64 {
    let b = b as u64;
    let inv = 1.0 / b as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += f * (i % b) as f64;
        i /= b;
        f *= inv;
    }
    r
}

/// `i`-th point of the Halton sequence in `[0,1)^dim` (dim ≤ 12).
pub fn halton(i: u64, dim: usize) -> Vec<f64> {
    assert!(dim <= PRIMES.len(), "halton dimension too large");
    (0..dim).map(|k| radical_inverse(i + 1, PRIMES[k])).collect()
}

/// Spherical Fibonacci lattice of `n` points on S².
pub fn fibonacci_sphere(n: usize) -> Vec<[f64; 3]> {
    let golden = std::f64::consts::PI * (1.0 + 5f64.sqrt());
    (0..n)
        .map(|i| {
            let t = (i as f64 + 0.5) / n as f64;
            let z = 1.0 - 2.0 * t;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * (i as f64 + 0.5);
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

/// Quasi-uniform points on the unit sphere of ℝ^dim.
///
/// Uses the circle grid for dim 2, the Fibonacci lattice for dim 3 and
/// normalised Halton-driven Gaussians otherwise.
pub fn sphere_points(dim: usize, n: usize) -> Vec<Vec<f64>> {
    match dim {
        0 => Vec::new(),
        1 => vec![vec![1.0], vec![-1.0]],
        2 => (0..n)
            .map(|i| {
                let th = 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / n as f64;
                vec![th.cos(), th.sin()]
            })
            .collect(),
        3 => fibonacci_sphere(n).into_iter().map(|p| p.to_vec()).collect(),
        _ => {
            let mut out = Vec::with_capacity(n);
            let mut i = 0u64;
            while out.len() < n {
                let h = halton(i, 2 * dim.div_ceil(2));
                i += 1;
                let mut v = Vec::with_capacity(dim);
                for pair in h.chunks(2) {
                    // Box–Muller on a Halton pair.
                    let r = (-2.0 * (1.0 - pair[0]).max(1e-300).ln()).sqrt();
                    let th = 2.0 * std::f64::consts::PI * pair[1];
                    v.push(r * th.cos());
                    v.push(r * th.sin());
                }
                v.truncate(dim);
                let nrm = norm(&v);
                if nrm > 1e-9 {
                    out.push(v.into_iter().map(|c| c / nrm).collect());
                }
            }
            out
        }
    }
}

pub fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    // Marsaglia polar method; avoids pulling in rand_distr for one routine.
    loop {
        let u: f64 = rng.gen_range(-1.0..1.0);
        let v: f64 = rng.gen_range(-1.0..1.0);
        let s = u * u + v * v;
        if s > 0.0 && s < 1.0 {
            return u * (-2.0 * s.ln() / s).sqrt();
        }
    }
}

pub fn random_unit<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| gaussian(rng)).collect();
        let n = norm(&v);
        if n > 1e-12 {
            return v.into_iter().map(|c| c / n).collect();
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
