//! Reproducing kernels of `A²_α` in the four regimes of `α`.
//!
//! Every inner product here is diagonal in the monomial basis, so a kernel is a
//! list of positive coefficients `κ(m)` and the inner-product weight of `z^m` is
//! `1/κ(m)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Float;

use crate::gamma::{ln_factorial, ln_gamma_ratio};
use crate::series::{
    binomial_series_coeffs, herm_pair, log_kernel_series, power_kernel_series, radial_kernel_series, BallPoint,
    MultiIndex, TaylorPolynomial,
};
use crate::{Error, Result, C64};

/// Boundary tolerance for regime detection.
pub const REGIME_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `α > −(n+1)`: `(1−⟨z,w⟩)^{−(n+1+α)}`.
    Standard,
    /// `α = −(n+1)`: `1 + log(1/(1−⟨z,w⟩))`.
    Log,
    /// `−N < n+1+α < −N+1`: `Q + (−1)^N(1−⟨z,w⟩)^{−(n+1+α)}`.
    FracNeg(u32),
    /// `n+1+α = −N`: `Q + (⟨z,w⟩−1)^N log(1/(1−⟨z,w⟩))`.
    IntNeg(u32),
}

impl Regime {
    /// The `N` of the negative regimes (0 otherwise).
    pub fn depth(&self) -> u32 {
        match *self {
            Regime::FracNeg(n) | Regime::IntNeg(n) => n,
            _ => 0,
        }
    }
}

pub fn kernel_regime(n: usize, alpha: f64) -> Regime {
    let x = n as f64 + 1.0 + alpha;
    if x.abs() <= REGIME_TOL {
        return Regime::Log;
    }
    if x > 0.0 {
        return Regime::Standard;
    }
    let r = (-x).round();
    if r >= 1.0 && (x + r).abs() <= REGIME_TOL {
        Regime::IntNeg(r as u32)
    } else {
        Regime::FracNeg((-x).ceil() as u32)
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * f64::from(n - k + i) / f64::from(i))
}

/// `A_k`, the Taylor coefficient of `z^k` in `(z−1)^N log(1/(1−z))`.
pub fn a_coeff(big_n: u32, k: u32) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let mut s = 0.0;
    for j in 0..=big_n.min(k - 1) {
        let sign = if (big_n - j).is_multiple_of(2) { 1.0 } else { -1.0 };
        s += sign * binomial(big_n, j) / f64::from(k - j);
    }
    s
}

/// `A_0, …, A_K` by convolving `(z−1)^N` with `Σ z^k/k`.
pub fn a_coeffs(big_n: u32, k_max: u32) -> Vec<f64> {
    (0..=k_max).map(|k| a_coeff(big_n, k)).collect()
}

/// A reproducing kernel: `n`, `α`, its regime and the `Q` coefficients `ω_m`
/// for `|m| ≤ N` (negative regimes only).
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSpec {
    pub n: usize,
    pub alpha: f64,
    pub regime: Regime,
    omega: BTreeMap<MultiIndex, f64>,
}

impl KernelSpec {
    /// Kernel with the default `Q`: inner-product weight 1 on every `|m| ≤ N`.
    pub fn new(n: usize, alpha: f64) -> Result<Self> {
        Self::with_q(n, alpha, Vec::new())
    }

    /// Kernel with explicit `ω_m`; indices not listed take the default.
    pub fn with_q(n: usize, alpha: f64, omega: Vec<(MultiIndex, f64)>) -> Result<Self> {
        if n == 0 || !alpha.is_finite() {
            return Err(Error::InvalidParams("kernel needs n >= 1 and finite alpha"));
        }
        let regime = kernel_regime(n, alpha);
        let mut spec = KernelSpec { n, alpha, regime, omega: BTreeMap::new() };
        let depth = regime.depth();
        if depth == 0 {
            if !omega.is_empty() {
                return Err(Error::RegimeMismatch("Q coefficients only exist in the negative regimes"));
            }
            return Ok(spec);
        }
        for m in MultiIndex::up_to(n, depth) {
            let principal = spec.principal_coeff(&m)?;
            spec.omega.insert(m, 1.0 - principal);
        }
        for (m, w) in omega {
            if m.dim() != n || m.order() > depth {
                return Err(Error::InvalidParams("Q coefficient index out of range"));
            }
            let principal = spec.principal_coeff(&m)?;
            if !(w + principal > 0.0) {
                return Err(Error::InvalidParams("inadmissible Q coefficient"));
            }
            spec.omega.insert(m, w);
        }
        Ok(spec)
    }

    /// `ω_m` for `|m| ≤ N`.
    pub fn q_coefficients(&self) -> impl Iterator<Item = (&MultiIndex, &f64)> {
        self.omega.iter()
    }

    /// `ln|κ₀(m)|` and sign, where `κ₀` is the coefficient of `z^m conj(w)^m`
    /// in the non-`Q` part of the kernel.
    fn ln_principal(&self, m: &MultiIndex) -> Result<(f64, f64)> {
        let k = m.order();
        let kf = f64::from(k);
        let c = self.n as f64 + 1.0 + self.alpha;
        let multinom = ln_factorial(k) - m.ln_factorial();
        match self.regime {
            Regime::Standard => {
                let (l, s) = ln_gamma_ratio(c + kf, c)?;
                Ok((l - m.ln_factorial(), s))
            }
            Regime::Log => {
                if k == 0 {
                    Ok((0.0, 1.0))
                } else {
                    Ok((multinom - kf.ln(), 1.0))
                }
            }
            Regime::FracNeg(depth) => {
                let (l, s) = ln_gamma_ratio(c + kf, c)?;
                let sign = if depth % 2 == 0 { 1.0 } else { -1.0 };
                Ok((l - m.ln_factorial(), s * sign))
            }
            Regime::IntNeg(depth) => {
                let a = a_coeff(depth, k);
                if a == 0.0 {
                    return Ok((f64::NEG_INFINITY, 0.0));
                }
                Ok((multinom + a.abs().ln(), a.signum()))
            }
        }
    }

    fn principal_coeff(&self, m: &MultiIndex) -> Result<f64> {
        let (l, s) = self.ln_principal(m)?;
        Ok(s * l.exp())
    }

    /// `κ(m)`: the coefficient of `z^m conj(w)^m` in `K(z,w)`, always positive.
    pub fn kernel_coeff(&self, m: &MultiIndex) -> Result<f64> {
        if m.dim() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: m.dim() });
        }
        let p = self.principal_coeff(m)?;
        Ok(match self.omega.get(m) {
            Some(w) => p + w,
            None => p,
        })
    }

    /// `ln κ(m)`, usable at orders where `κ` itself under- or overflows.
    pub fn ln_kernel_coeff(&self, m: &MultiIndex) -> Result<f64> {
        if self.omega.contains_key(m) {
            return Ok(self.kernel_coeff(m)?.ln());
        }
        let (l, s) = self.ln_principal(m)?;
        if s <= 0.0 {
            return Err(Error::InvalidParams("kernel coefficient is not positive"));
        }
        Ok(l)
    }

    /// Inner-product weight of `z^m`: `⟨z^m, z^m⟩ = 1/κ(m)`.
    pub fn weight(&self, m: &MultiIndex) -> Result<f64> {
        Ok(1.0 / self.kernel_coeff(m)?)
    }

    /// `Q(z,w) = Σ_{|m|≤N} ω_m z^m conj(w)^m`.
    pub fn q_eval(&self, z: &[C64], w: &[C64]) -> C64 {
        self.omega.iter().map(|(m, om)| m.monomial_value(z) * m.monomial_value(w).conj() * *om).sum()
    }

    fn q_series(&self, w: &BallPoint, degree: u32) -> Result<TaylorPolynomial> {
        let terms = self
            .omega
            .iter()
            .filter(|(m, _)| m.order() <= degree)
            .map(|(m, om)| (m.clone(), m.monomial_value(w.coords()).conj() * *om));
        TaylorPolynomial::from_terms(self.n, degree, terms)
    }
}

/// `K(z, w)` in closed form (principal branches).
pub fn kernel_eval(spec: &KernelSpec, z: &BallPoint, w: &BallPoint) -> Result<C64> {
    let x = herm_pair(z.coords(), w.coords())?;
    if z.dim() != spec.n {
        return Err(Error::DimensionMismatch { left: spec.n, right: z.dim() });
    }
    let one_minus = C64::new(1.0, 0.0) - x;
    if !(one_minus.re > 0.0) {
        return Err(Error::OutsideBall { norm: x.norm() });
    }
    let c = spec.n as f64 + 1.0 + spec.alpha;
    let log_term = -one_minus.ln();
    Ok(match spec.regime {
        Regime::Standard => (log_term * c).exp(),
        Regime::Log => C64::new(1.0, 0.0) + log_term,
        Regime::FracNeg(depth) => {
            let sign = if depth % 2 == 0 { 1.0 } else { -1.0 };
            spec.q_eval(z.coords(), w.coords()) + (log_term * c).exp() * sign
        }
        Regime::IntNeg(depth) => spec.q_eval(z.coords(), w.coords()) + (-one_minus).powu(depth) * log_term,
    })
}

/// `K(·, w)` expanded in `z` and truncated at `degree`.
pub fn kernel_series(spec: &KernelSpec, w: &BallPoint, degree: u32) -> Result<TaylorPolynomial> {
    if w.dim() != spec.n {
        return Err(Error::DimensionMismatch { left: spec.n, right: w.dim() });
    }
    let c = spec.n as f64 + 1.0 + spec.alpha;
    match spec.regime {
        Regime::Standard => power_kernel_series(c, w, degree),
        Regime::Log => Ok(log_kernel_series(w, degree)),
        Regime::FracNeg(depth) => {
            let sign = if depth % 2 == 0 { 1.0 } else { -1.0 };
            let tail = power_kernel_series(c, w, degree)?.scale(C64::new(sign, 0.0));
            tail.add(&spec.q_series(w, degree)?)
        }
        Regime::IntNeg(depth) => {
            let tail = radial_kernel_series(&a_coeffs(depth, degree), w, degree);
            tail.add(&spec.q_series(w, degree)?)
        }
    }
}

/// `⟨f, g⟩ = Σ a_m conj(b_m)/κ(m)`.
pub fn inner_product(f: &TaylorPolynomial, g: &TaylorPolynomial, spec: &KernelSpec) -> Result<C64> {
    for d in [f.dim(), g.dim()] {
        if d != spec.n {
            return Err(Error::DimensionMismatch { left: spec.n, right: d });
        }
    }
    let mut s = C64::new(0.0, 0.0);
    for (m, a) in f.terms() {
        let b = g.coefficient(m);
        if b.norm() > 0.0 {
            s += a * b.conj() * spec.weight(m)?;
        }
    }
    Ok(s)
}

/// `e_m = sqrt(κ(m)) z^m` for `|m| ≤ degree`, in summation order.
pub fn orthonormal_basis(spec: &KernelSpec, degree: u32) -> Result<Vec<TaylorPolynomial>> {
    MultiIndex::up_to(spec.n, degree)
        .into_iter()
        .map(|m| {
            let k = spec.kernel_coeff(&m)?;
            TaylorPolynomial::monomial(m, C64::new(k.sqrt(), 0.0), degree)
        })
        .collect()
}

/// `|⟨f, K(·,w)⟩ − f(w)|` with the kernel truncated at `degree`.
pub fn reproduce_check(f: &TaylorPolynomial, spec: &KernelSpec, w: &BallPoint, degree: u32) -> Result<f64> {
    if f.max_order() > degree {
        return Err(Error::DegreeExceeded { order: f.max_order(), degree });
    }
    let k = kernel_series(spec, w, degree)?;
    Ok((inner_product(f, &k, spec)? - f.evaluate(w)?).norm())
}

/// Value of the natural-inner-product kernel and a bound on the omitted tail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NaturalKernelValue {
    pub value: C64,
    pub tail_bound: f64,
}

/// `1 + Σ_{j=1}^{D} [Γ(c+j)/(j!Γ(c))] j^{−2k} ⟨z,w⟩^j`, `c = n+1+α+2k`.
///
/// The tail bound is `|b_D| r/(1−r)` with `r = |x|·max(1, (c+D)/(D+1))`, which
/// dominates every later term ratio. Fails when that bound exceeds `tol`.
pub fn natural_kernel_eval(
    n: usize,
    alpha: f64,
    k: u32,
    z: &[C64],
    w: &[C64],
    degree: u32,
    tol: f64,
) -> Result<NaturalKernelValue> {
    let kf = f64::from(k);
    if !(2.0 * kf + alpha > -1.0) {
        return Err(Error::InvalidParams("natural kernel needs 2k + alpha > -1"));
    }
    if z.len() != n {
        return Err(Error::DimensionMismatch { left: n, right: z.len() });
    }
    let x = herm_pair(z, w)?;
    let ax = x.norm();
    if !(ax < 1.0) {
        return Err(Error::NonConvergent("natural kernel needs |<z,w>| < 1"));
    }
    let c = n as f64 + 1.0 + alpha + 2.0 * kf;
    let coeffs = binomial_series_coeffs(c, degree);
    let mut value = C64::new(1.0, 0.0);
    let mut xp = C64::new(1.0, 0.0);
    let mut last = 0.0;
    for j in 1..=degree {
        xp *= x;
        let b = coeffs[j as usize] * f64::from(j).powf(-2.0 * kf);
        value += xp * b;
        last = (xp * b).norm();
    }
    let d = f64::from(degree.max(1));
    let r = ax * (1.0f64).max((c + d) / (d + 1.0));
    let tail_bound = if degree == 0 {
        if ax == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else if r < 1.0 {
        last * r / (1.0 - r)
    } else {
        f64::INFINITY
    };
    if tail_bound > tol {
        return Err(Error::NonConvergent("natural kernel tail bound above tolerance"));
    }
    Ok(NaturalKernelValue { value, tail_bound })
}

/// Ratio of the weight `m! e^M / M^{n+M+α+1/2}` (`M = |m|`) to the regime's
/// inner-product weight `1/κ(m)`, evaluated at `m = (M, 0, …, 0)`.
///
/// Tends to a constant as `M → ∞` in every regime.
pub fn stirling_bridge_ratio(spec: &KernelSpec, order: u32) -> Result<f64> {
    if order == 0 {
        return Err(Error::InvalidParams("order must be positive"));
    }
    let mut c = alloc::vec![0u32; spec.n];
    c[0] = order;
    let m = MultiIndex::new(c);
    let mf = f64::from(order);
    let ln_stirling = ln_factorial(order) + mf - (spec.n as f64 + mf + spec.alpha + 0.5) * mf.ln();
    Ok((ln_stirling + spec.ln_kernel_coeff(&m)?).exp())
}
