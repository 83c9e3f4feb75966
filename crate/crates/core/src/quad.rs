//! Deterministic quadrature on the unit disc.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;

use crate::C64;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(k: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = Vec::with_capacity(k);
    let mut w = Vec::with_capacity(k);
    for i in 0..k {
        let mut z = (PI * (i as f64 + 0.75) / (k as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(k, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(k, z);
        if d != 0.0 {
            dp = d;
        }
        x.push(z);
        w.push(2.0 / ((1.0 - z * z) * dp * dp));
    }
    (x, w)
}

// P_k(z) and P_k'(z)
fn legendre(k: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if k == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=k {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * z * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = k as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Number of dyadic panels in `u = 1 − r²` before the singular tail panel.
pub const DISC_PANELS: usize = 40;

/// `∫_{|z|<r_max} g(z)(1−|z|²)^β dA(z)/π` for `β > −1`.
///
/// The inner disc `r ≤ 1/√2` is integrated in `r` (two Gauss–Legendre
/// panels). Outside it, in `u = 1 − r²`, the integral is `∫ A(u) u^β du`
/// with `A` the angular mean; `u` is split into dyadic panels
/// `[2^{−j−1}, 2^{−j}]` with `radial_nodes` points each, and the last panel
/// `[0, h]` uses `u = h·v^{1/(β+1)}` so the weight becomes constant.
/// Angles use the trapezoid rule.
pub fn disc_integral<G>(beta: f64, r_max: f64, radial_nodes: usize, angular_nodes: usize, g: G) -> f64
where
    G: Fn(C64) -> f64,
{
    let (gx, gw) = gauss_legendre(radial_nodes.max(1));
    let m = angular_nodes.max(1);
    let dirs: Vec<C64> = (0..m).map(|j| C64::from_polar(1.0, 2.0 * PI * (j as f64 + 0.5) / m as f64)).collect();
    let angular_mean = |r: f64| -> f64 { dirs.iter().map(|d| g(d * r)).sum::<f64>() / m as f64 };
    let r_inner = core::f64::consts::FRAC_1_SQRT_2.min(r_max);
    let mut total = 0.0;
    for (lo, hi) in [(0.0, 0.5 * r_inner), (0.5 * r_inner, r_inner)] {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        for (x, w) in gx.iter().zip(&gw) {
            let r = mid + half * x;
            total += w * half * angular_mean(r) * (1.0 - r * r).powf(beta) * 2.0 * r;
        }
    }
    if r_max <= r_inner {
        return total;
    }
    let u_min = if r_max >= 1.0 { 0.0 } else { 1.0 - r_max * r_max };
    let at_u = |u: f64| angular_mean((1.0 - u).max(0.0).sqrt());
    let mut hi = 0.5;
    for _ in 0..DISC_PANELS {
        let lo = (hi * 0.5).max(u_min);
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        for (x, w) in gx.iter().zip(&gw) {
            let u = mid + half * x;
            total += w * half * at_u(u) * u.powf(beta);
        }
        hi = lo;
        if hi <= u_min {
            return total;
        }
    }
    // tail [u_min, hi]; u_min = 0 unless r_max is extremely close to 1
    let e = 1.0 / (beta + 1.0);
    let scale = (hi.powf(beta + 1.0) - u_min.powf(beta + 1.0)) * e;
    let v0 = u_min.powf(beta + 1.0) / hi.powf(beta + 1.0);
    for (x, w) in gx.iter().zip(&gw) {
        let v = v0 + (1.0 - v0) * 0.5 * (x + 1.0);
        let u = hi * v.powf(e);
        total += 0.5 * w * scale * at_u(u);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_exactness() {
        let (x, w) = gauss_legendre(8);
        let s: f64 = w.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        let m14: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(14)).sum();
        assert!((m14 - 2.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn disc_moments() {
        // ∫|z|^{2k}(1−|z|²)^β dA/π = B(k+1, β+1)
        let b = disc_integral(0.0, 1.0, 12, 8, |z| z.norm_sqr().powi(3));
        assert!((b - 0.25).abs() < 1e-13);
        let b = disc_integral(-0.9, 1.0, 12, 8, |_| 1.0);
        assert!((b - 10.0).abs() < 1e-11);
        let b = disc_integral(0.0, 1.0, 12, 16, |z| z.norm());
        assert!((b - 2.0 / 3.0).abs() < 1e-12);
        let b = disc_integral(0.0, 0.5, 12, 16, |_| 1.0);
        assert!((b - 0.25).abs() < 1e-14);
    }
}
