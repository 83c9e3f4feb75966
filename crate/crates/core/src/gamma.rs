//! Gamma-function ratios, fractional-operator symbols and monomial masses.

use num_traits::Float;

use crate::series::MultiIndex;
use crate::{Error, Result};

/// Distance to a nonpositive integer below which `Γ` is treated as singular.
pub const POLE_TOL: f64 = 1e-12;
/// Distance to a negative integer below which [`FracOpParams`] are rejected.
pub const PARAM_TOL: f64 = 1e-9;

fn near_nonpositive_integer(x: f64, tol: f64) -> bool {
    x < 0.5 && (x - x.round()).abs() <= tol
}

fn near_negative_integer(x: f64, tol: f64) -> bool {
    x < -0.5 && (x - x.round()).abs() <= tol
}

/// `ln k!`
pub fn ln_factorial(k: u32) -> f64 {
    if k <= 20 {
        ((1..=u64::from(k)).product::<u64>() as f64).ln()
    } else {
        libm::lgamma(f64::from(k) + 1.0)
    }
}

/// `(ln|Γ(x)|, sign Γ(x))`.
pub fn log_gamma(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() || near_nonpositive_integer(x, POLE_TOL) {
        return Err(Error::Pole { x });
    }
    let (lg, sign) = libm::lgamma_r(x);
    Ok((lg, if sign < 0 { -1.0 } else { 1.0 }))
}

/// `Γ(x)`; overflows to infinity past `x ≈ 171.6`.
pub fn gamma(x: f64) -> Result<f64> {
    let (lg, s) = log_gamma(x)?;
    Ok(s * lg.exp())
}

/// `(ln|Γ(a)/Γ(b)|, sign)`.
pub fn ln_gamma_ratio(a: f64, b: f64) -> Result<(f64, f64)> {
    let (la, sa) = log_gamma(a)?;
    let (lb, sb) = log_gamma(b)?;
    let shift = a - b;
    if shift == shift.round() && shift.abs() <= 64.0 {
        let p = shifted_product(b, shift as i32);
        return Ok((p.abs().ln(), p.signum()));
    }
    Ok((la - lb, sa * sb))
}

// Γ(b+k)/Γ(b) for integer k by direct product.
fn shifted_product(b: f64, k: i32) -> f64 {
    if k >= 0 {
        (0..k).fold(1.0, |acc, i| acc * (b + f64::from(i)))
    } else {
        1.0 / (k..0).fold(1.0, |acc, i| acc * (b + f64::from(i)))
    }
}

/// `Γ(a)/Γ(b)`
pub fn gamma_ratio(a: f64, b: f64) -> Result<f64> {
    let shift = a - b;
    if shift == shift.round() && shift.abs() <= 64.0 {
        log_gamma(a)?;
        log_gamma(b)?;
        return Ok(shifted_product(b, shift as i32));
    }
    let (l, s) = ln_gamma_ratio(a, b)?;
    Ok(s * l.exp())
}

/// Rising factorial `(c)_k = Γ(c+k)/Γ(c)`, defined for every real `c`.
pub fn pochhammer(c: f64, k: u32) -> f64 {
    if k <= 256 || near_nonpositive_integer(c, POLE_TOL) || near_nonpositive_integer(c + f64::from(k), POLE_TOL) {
        let mut acc = 1.0;
        for i in 0..k {
            acc *= c + f64::from(i);
            if acc == 0.0 {
                break;
            }
        }
        return acc;
    }
    match ln_gamma_ratio(c + f64::from(k), c) {
        Ok((l, s)) => s * l.exp(),
        Err(_) => 0.0,
    }
}

/// Parameters `(n, s, t)` of the fractional radial operators `R^{s,t}` and `R_{s,t}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FracOpParams {
    pub n: usize,
    pub s: f64,
    pub t: f64,
}

impl FracOpParams {
    /// Valid iff neither `n+s` nor `n+s+t` is (within 1e-9) a negative integer.
    pub fn new(n: usize, s: f64, t: f64) -> Result<Self> {
        if !Self::is_valid(n, s, t) {
            return Err(Error::InvalidParams("n+s and n+s+t must avoid the negative integers"));
        }
        Ok(FracOpParams { n, s, t })
    }

    pub fn is_valid(n: usize, s: f64, t: f64) -> bool {
        let ns = n as f64 + s;
        n >= 1
            && s.is_finite()
            && t.is_finite()
            && !near_negative_integer(ns, PARAM_TOL)
            && !near_negative_integer(ns + t, PARAM_TOL)
    }

    /// Parameters of the inverse operator: `R_{s,t} = R^{s+t,−t}`.
    pub fn inverse(&self) -> Self {
        FracOpParams { n: self.n, s: self.s + self.t, t: -self.t }
    }

    /// `ln|symbol|` and sign of the order-`k` symbol.
    fn ln_coeff(&self, k: u32) -> Result<(f64, f64)> {
        let a = self.n as f64 + 1.0 + self.s;
        let kf = f64::from(k);
        let (l1, s1) = ln_gamma_ratio(a + kf + self.t, a + kf)?;
        let (l2, s2) = ln_gamma_ratio(a + self.t, a)?;
        Ok((l1 - l2, s1 * s2))
    }
}

/// Symbol of `R^{s,t}` on the homogeneous part of order `k`:
/// `Γ(n+1+s)Γ(n+1+k+s+t) / (Γ(n+1+s+t)Γ(n+1+k+s))`.
pub fn frac_coeff(params: &FracOpParams, k: u32) -> Result<f64> {
    if !FracOpParams::is_valid(params.n, params.s, params.t) {
        return Err(Error::InvalidParams("n+s and n+s+t must avoid the negative integers"));
    }
    if k == 0 {
        return Ok(1.0);
    }
    let (l, s) = params.ln_coeff(k)?;
    Ok(s * l.exp())
}

/// `Γ(n+1+k+s+t)/(Γ(n+1+k+s)·k^t)`, which tends to 1 as `k → ∞`.
///
/// This is `frac_coeff(params, k)/k^t` with the order-independent factor
/// `Γ(n+1+s)/Γ(n+1+s+t)` divided out.
pub fn stirling_ratio(params: &FracOpParams, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidParams("stirling_ratio needs k >= 1"));
    }
    if params.t == 0.0 {
        frac_coeff(params, k)?;
        return Ok(1.0);
    }
    if !FracOpParams::is_valid(params.n, params.s, params.t) {
        return Err(Error::InvalidParams("n+s and n+s+t must avoid the negative integers"));
    }
    let a = params.n as f64 + 1.0 + params.s + f64::from(k);
    let (l, s) = ln_gamma_ratio(a + params.t, a)?;
    Ok(s * (l - params.t * f64::from(k).ln()).exp())
}

/// `c_γ = Γ(n+γ+1)/(n!Γ(γ+1))`, making `c_γ(1−|z|²)^γ dv` a probability measure.
pub fn normalization_c(n: usize, gamma_: f64) -> Result<f64> {
    if !(gamma_ > -1.0) {
        return Err(Error::InvalidParams("normalization needs γ > -1"));
    }
    let (l, _) = ln_gamma_ratio(n as f64 + gamma_ + 1.0, gamma_ + 1.0)?;
    Ok((l - ln_factorial(n as u32)).exp())
}

/// `ln ∫ |z^m|² (1−|z|²)^γ dv` with `dv` the normalized volume measure.
pub fn ln_monomial_mass(m: &MultiIndex, gamma_: f64) -> Result<f64> {
    if !(gamma_ > -1.0) {
        return Err(Error::InvalidParams("monomial mass needs γ > -1"));
    }
    let n = m.dim();
    let (l, _) = ln_gamma_ratio(gamma_ + 1.0, n as f64 + f64::from(m.order()) + gamma_ + 1.0)?;
    Ok(ln_factorial(n as u32) + m.ln_factorial() + l)
}

/// `∫|z^m|²(1−|z|²)^γ dv`; with `normalized` the weight is `c_γ(1−|z|²)^γ dv`.
///
/// Unnormalized: `n!Γ(γ+1)m!/Γ(n+|m|+γ+1)`; normalized: `m!Γ(n+γ+1)/Γ(n+|m|+γ+1)`.
pub fn monomial_mass(m: &MultiIndex, gamma_: f64, normalized: bool) -> Result<f64> {
    let l = ln_monomial_mass(m, gamma_)?;
    if normalized {
        let (lc, _) =
            ln_gamma_ratio(m.dim() as f64 + gamma_ + 1.0, m.dim() as f64 + f64::from(m.order()) + gamma_ + 1.0)?;
        return Ok((m.ln_factorial() + lc).exp());
    }
    Ok(l.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    const SQRT_PI: f64 = 1.772_453_850_905_516;

    #[test]
    fn log_gamma_examples() {
        let (l, s) = log_gamma(5.0).unwrap();
        assert!((l - 24f64.ln()).abs() < 1e-15 && s == 1.0);
        let (l, s) = log_gamma(0.5).unwrap();
        assert!((l - SQRT_PI.ln()).abs() < 1e-15 && s == 1.0);
        let (l, s) = log_gamma(-0.5).unwrap();
        assert!((l - (2.0 * SQRT_PI).ln()).abs() < 1e-15 && s == -1.0);
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-3.0 + 1e-13).is_err());
        assert!(log_gamma(-3.0 + 1e-10).is_ok());
    }

    #[test]
    fn gamma_ratio_examples() {
        assert_eq!(gamma_ratio(5.0, 3.0).unwrap(), 12.0);
        assert_eq!(gamma_ratio(2.37, 2.37).unwrap(), 1.0);
        assert_eq!(gamma_ratio(12.0, 2.0).unwrap(), 39_916_800.0);
        assert!(gamma_ratio(-1.0, 2.0).is_err());
    }

    #[test]
    fn pochhammer_terminates() {
        assert_eq!(pochhammer(-2.0, 5), 0.0);
        assert_eq!(pochhammer(3.0, 2), 12.0);
        let big = pochhammer(0.5, 150);
        let want = gamma_ratio(150.5, 0.5).unwrap();
        assert!((big / want - 1.0).abs() < 1e-11);
    }

    #[test]
    fn frac_coeff_examples() {
        let p = FracOpParams::new(1, 0.0, 1.0).unwrap();
        assert_eq!(frac_coeff(&p, 0).unwrap(), 1.0);
        for k in 1..30u32 {
            let want = (f64::from(k) + 2.0) / 2.0;
            assert!((frac_coeff(&p, k).unwrap() - want).abs() < 1e-13 * want);
        }
        let p2 = FracOpParams::new(1, 0.0, 2.0).unwrap();
        assert!((frac_coeff(&p2, 3).unwrap() - 5.0).abs() < 1e-13);
    }

    #[test]
    fn params_validity() {
        assert!(FracOpParams::new(1, -2.0, 0.5).is_err());
        assert!(FracOpParams::new(1, 0.5, -3.5).is_err());
        assert!(FracOpParams::new(1, -1.5, 0.25).is_ok());
        for &(s, t) in &[(-2.0, 0.3), (0.2, -3.2), (0.7, 0.1), (-1.5, -0.5)] {
            let p = FracOpParams { n: 2, s, t };
            let q = p.inverse();
            assert_eq!(FracOpParams::is_valid(p.n, p.s, p.t), FracOpParams::is_valid(q.n, q.s, q.t));
        }
    }

    #[test]
    fn stirling_examples() {
        let p = FracOpParams::new(1, 0.0, 1.0).unwrap();
        // (k+2)/k
        assert!((stirling_ratio(&p, 1000).unwrap() - 1.002).abs() < 1e-12);
        let z = FracOpParams::new(1, 0.3, 0.0).unwrap();
        for k in [1, 7, 900] {
            assert_eq!(stirling_ratio(&z, k).unwrap(), 1.0);
        }
        let q = FracOpParams::new(2, 3.0, 0.5).unwrap();
        assert!((stirling_ratio(&q, 200).unwrap() - 1.0).abs() < 0.02);
    }

    #[test]
    fn normalization_examples() {
        assert!((normalization_c(1, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((normalization_c(1, 1.0).unwrap() - 2.0).abs() < 1e-14);
        assert!((normalization_c(2, 1.0).unwrap() - 3.0).abs() < 1e-14);
        assert!(normalization_c(2, -1.0).is_err());
    }

    #[test]
    fn mass_examples() {
        for k in 0..10u32 {
            let m = MultiIndex::new(vec![k]);
            let want = 1.0 / (f64::from(k) + 1.0);
            assert!((monomial_mass(&m, 0.0, true).unwrap() - want).abs() < 1e-15);
        }
        assert!((monomial_mass(&MultiIndex::zero(3), 1.5, true).unwrap() - 1.0).abs() < 1e-14);
        let m = MultiIndex::new(vec![1, 0]);
        assert!((monomial_mass(&m, 0.0, true).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        // unnormalized = normalized / c_γ
        let m = MultiIndex::new(vec![2, 3]);
        let u = monomial_mass(&m, 1.7, false).unwrap();
        let v = monomial_mass(&m, 1.7, true).unwrap();
        assert!((v / u - normalization_c(2, 1.7).unwrap()).abs() < 1e-12);
        assert!(monomial_mass(&m, -1.0, false).is_err());
    }
}
