//! Seeded sampling on the ball and sphere.
//!
//! Monte Carlo sums are split into fixed chunks of [`CHUNK`] samples; chunk `i`
//! draws from ChaCha stream `i` of the seed, so a result depends only on the
//! seed and the sample count.

use alloc::vec::Vec;

use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, StandardNormal};

use crate::gamma::ln_factorial;
use crate::gamma::ln_gamma_ratio;
use crate::{Error, Result, C64};

pub const CHUNK: u64 = 4096;

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Uniform point of the unit sphere in `C^n`.
pub fn sphere_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..n).map(|_| C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))).collect();
        let r = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if r > 1e-300 {
            return v.into_iter().map(|c| c / r).collect();
        }
    }
}

/// Volume-uniform point of the ball of radius `radius`.
pub fn ball_point<R: Rng + ?Sized>(rng: &mut R, n: usize, radius: f64) -> Vec<C64> {
    let u: f64 = rng.random();
    let r = radius * u.powf(1.0 / (2 * n) as f64);
    sphere_point(rng, n).into_iter().map(|c| c * r).collect()
}

/// `count` seeded sphere points (one stream; meant for probe grids).
pub fn sphere_points(n: usize, count: usize, seed: u64) -> Vec<Vec<C64>> {
    let mut r = rng(seed, 0);
    (0..count).map(|_| sphere_point(&mut r, n)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
}

/// Monte Carlo estimate of `∫_{|z|<r_max} g(z)(1−|z|²)^β dv(z)`.
///
/// With `r_max = 1`, `|z|²` is drawn from `Beta(n, β+1)` so the weight is
/// absorbed exactly; otherwise points are volume-uniform in the smaller ball.
pub fn ball_integral_mc<G>(n: usize, beta: f64, r_max: f64, samples: u64, seed: u64, g: G) -> Result<McEstimate>
where
    G: Fn(&[C64]) -> f64,
{
    if !(beta > -1.0) {
        return Err(Error::NonConvergent("weight exponent must exceed -1"));
    }
    if samples == 0 || !(r_max > 0.0 && r_max <= 1.0) {
        return Err(Error::InvalidParams("need samples >= 1 and 0 < r_max <= 1"));
    }
    let full = r_max >= 1.0;
    let beta_dist = Beta::new(n as f64, beta + 1.0).map_err(|_| Error::InvalidParams("beta law"))?;
    // ∫ (1−|z|²)^β dv = n!Γ(β+1)/Γ(n+β+1)
    let total_weight = if full {
        let (l, _) = ln_gamma_ratio(beta + 1.0, n as f64 + beta + 1.0)?;
        (ln_factorial(n as u32) + l).exp()
    } else {
        r_max.powi(2 * n as i32)
    };
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let chunks = samples.div_ceil(CHUNK);
    for chunk in 0..chunks {
        let mut r = rng(seed, chunk);
        let count = CHUNK.min(samples - chunk * CHUNK);
        let mut s = 0.0;
        let mut s2 = 0.0;
        for _ in 0..count {
            let v = if full {
                let t: f64 = beta_dist.sample(&mut r);
                let rad = t.sqrt();
                let z: Vec<C64> = sphere_point(&mut r, n).into_iter().map(|c| c * rad).collect();
                g(&z)
            } else {
                let z = ball_point(&mut r, n, r_max);
                let w = 1.0 - z.iter().map(|c| c.norm_sqr()).sum::<f64>();
                g(&z) * w.powf(beta)
            };
            s += v;
            s2 += v * v;
        }
        sum += s;
        sum_sq += s2;
    }
    let nf = samples as f64;
    let mean = sum / nf;
    let var = if samples > 1 { ((sum_sq / nf - mean * mean) * nf / (nf - 1.0)).max(0.0) } else { 0.0 };
    Ok(McEstimate { mean: mean * total_weight, stderr: (var / nf).sqrt() * total_weight, samples })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_points_are_unit() {
        for p in sphere_points(3, 50, 7) {
            let r: f64 = p.iter().map(|c| c.norm_sqr()).sum();
            assert!((r - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn mc_volume_moments() {
        // ∫|z_1|² dv = 1/(n+1) (normalized volume, n = 2)
        let e = ball_integral_mc(2, 0.0, 1.0, 50_000, 1, |z| z[0].norm_sqr()).unwrap();
        assert!((e.mean - 1.0 / 3.0).abs() < 4.0 * e.stderr + 1e-3);
        // weighted: ∫(1−|z|²)^{-0.5} dv = 2!Γ(0.5)/Γ(2.5) = 8/3
        let e = ball_integral_mc(2, -0.5, 1.0, 1000, 1, |_| 1.0).unwrap();
        assert!((e.mean - 8.0 / 3.0).abs() < 1e-12);
        let e = ball_integral_mc(1, 0.0, 0.5, 40_000, 3, |_| 1.0).unwrap();
        assert!((e.mean - 0.25).abs() < 1e-12);
    }

    #[test]
    fn mc_is_reproducible() {
        let a = ball_integral_mc(2, 0.3, 1.0, 10_000, 9, |z| z[1].norm()).unwrap();
        let b = ball_integral_mc(2, 0.3, 1.0, 10_000, 9, |z| z[1].norm()).unwrap();
        assert_eq!(a, b);
    }
}
