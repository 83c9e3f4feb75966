//! Space parameters, Bergman / Hardy / Lipschitz norms, pairings and pointwise probes.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;

use crate::gamma::{ln_factorial, monomial_mass, normalization_c};
use crate::quad::disc_integral;
use crate::radial::radial_power;
use crate::sample::{ball_integral_mc, sphere_points};
use crate::series::{MultiIndex, TaylorPolynomial};
use crate::{Error, Result, C64, DEFAULT_SEED};

/// Tolerance used when comparing `pN + α` against `−1`.
pub const TIE_TOL: f64 = 1e-12;

/// Which measure `dv_α` denotes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Weight {
    /// `(1−|z|²)^α dv`, available for every real `α`.
    #[default]
    Plain,
    /// `c_α(1−|z|²)^α dv`, a probability measure; only for `α > −1`.
    Probability,
}

/// `(n, p, α)` for `A^p_α`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpaceParams {
    pub n: usize,
    pub p: f64,
    pub alpha: f64,
    pub weight: Weight,
}

impl SpaceParams {
    pub fn new(n: usize, p: f64, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("dimension must be at least 1"));
        }
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::InvalidParams("p must be a positive finite number"));
        }
        if !alpha.is_finite() {
            return Err(Error::InvalidParams("alpha must be finite"));
        }
        Ok(SpaceParams { n, p, alpha, weight: Weight::Plain })
    }

    pub fn with_weight(mut self, weight: Weight) -> Result<Self> {
        if weight == Weight::Probability && !(self.alpha > -1.0) {
            return Err(Error::InvalidParams("the probability weight needs alpha > -1"));
        }
        self.weight = weight;
        Ok(self)
    }

    /// Smallest `N ≥ 0` with `pN + α > −1`.
    pub fn smallest_n(&self) -> u32 {
        smallest_n(self.p, self.alpha)
    }

    fn weight_factor(&self) -> Result<f64> {
        match self.weight {
            Weight::Plain => Ok(1.0),
            Weight::Probability => normalization_c(self.n, self.alpha),
        }
    }
}

/// Smallest `N ≥ 0` with `pN + α > −1`; ties at `−1` (within 1e-12) round up.
pub fn smallest_n(p: f64, alpha: f64) -> u32 {
    let x = (-1.0 - alpha) / p;
    let mut n = if x < 0.0 { 0.0 } else { x.floor() };
    while p * n + alpha <= -1.0 + TIE_TOL {
        n += 1.0;
    }
    while n >= 1.0 && p * (n - 1.0) + alpha > -1.0 + TIE_TOL {
        n -= 1.0;
    }
    n as u32
}

/// Smallest nonnegative integer strictly greater than `α` (the `k` of `Λ_α`).
pub fn lipschitz_k(alpha: f64) -> u32 {
    if alpha < 0.0 {
        0
    } else {
        alpha.floor() as u32 + 1
    }
}

/// Quadrature / sampling controls.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    /// Gauss–Legendre nodes per radial panel (n = 1), or radii of a sup grid.
    pub radial_nodes: usize,
    /// Trapezoid angles (n = 1) or directions of a sup grid.
    pub angular_nodes: usize,
    pub mc_samples: u64,
    pub seed: u64,
    /// Integrate / search over `|z| < r_max`; `1.0` means the whole ball.
    pub r_max: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { radial_nodes: 16, angular_nodes: 256, mc_samples: 100_000, seed: DEFAULT_SEED, r_max: 1.0 }
    }
}

impl QuadratureSpec {
    /// The sup-norm grid: 64 radii geometric toward 0.995, 128 directions.
    pub fn sup_grid() -> Self {
        QuadratureSpec { radial_nodes: 64, angular_nodes: 128, r_max: 0.995, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.radial_nodes == 0 || self.angular_nodes == 0 || self.mc_samples == 0 {
            return Err(Error::InvalidParams("quadrature counts must be at least 1"));
        }
        if !(self.r_max > 0.0 && self.r_max <= 1.0) {
            return Err(Error::InvalidParams("r_max must lie in (0, 1]"));
        }
        Ok(())
    }
}

/// `|f(0)| + sqrt(Σ_{|m|>0} |a_m|²|m|^{2N} u(m, 2N+α))`, exact.
pub fn bergman_norm_p2(f: &TaylorPolynomial, sp: &SpaceParams) -> Result<f64> {
    bergman_norm_p2_order(f, sp, sp.smallest_n())
}

/// [`bergman_norm_p2`] with an arbitrary admissible derivative order `k`.
pub fn bergman_norm_p2_order(f: &TaylorPolynomial, sp: &SpaceParams, k: u32) -> Result<f64> {
    if sp.p != 2.0 {
        return Err(Error::InvalidParams("bergman_norm_p2 needs p = 2"));
    }
    check_dim(f, sp)?;
    let gamma_ = 2.0 * f64::from(k) + sp.alpha;
    if !(gamma_ > -1.0) {
        return Err(Error::NonConvergent("weight exponent 2k+alpha must exceed -1"));
    }
    let mut s = 0.0;
    for (m, a) in f.terms() {
        let order = m.order();
        if order == 0 {
            continue;
        }
        s += a.norm_sqr() * f64::from(order).powi(2 * k as i32) * monomial_mass(m, gamma_, false)?;
    }
    Ok(f.value_at_origin().norm() + (s * sp.weight_factor()?).sqrt())
}

fn check_dim(f: &TaylorPolynomial, sp: &SpaceParams) -> Result<()> {
    if f.dim() != sp.n {
        return Err(Error::DimensionMismatch { left: sp.n, right: f.dim() });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Quadrature,
    MonteCarlo,
}

/// A quadrature or Monte Carlo norm estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormEstimate {
    pub value: f64,
    /// `∫(1−|z|²)^{pk}|R^k f|^p dv_α`
    pub integral: f64,
    /// Standard error of `value` (Monte Carlo only).
    pub stderr: Option<f64>,
    pub method: Method,
}

/// `∫_{|z|<r_max} |g(z)|^p (1−|z|²)^β dv` by quadrature (n = 1) or Monte Carlo.
///
/// Returns the estimate, its standard error (Monte Carlo) and the method.
pub fn weighted_lp_integral<G>(
    n: usize,
    p: f64,
    beta: f64,
    q: &QuadratureSpec,
    g: G,
) -> Result<(f64, Option<f64>, Method)>
where
    G: Fn(&[C64]) -> C64,
{
    let method = if n == 1 { Method::Quadrature } else { Method::MonteCarlo };
    weighted_lp_integral_by(n, p, beta, q, method, g)
}

/// [`weighted_lp_integral`] with the method forced; quadrature needs `n = 1`.
pub fn weighted_lp_integral_by<G>(
    n: usize,
    p: f64,
    beta: f64,
    q: &QuadratureSpec,
    method: Method,
    g: G,
) -> Result<(f64, Option<f64>, Method)>
where
    G: Fn(&[C64]) -> C64,
{
    q.validate()?;
    if !(beta > -1.0) {
        return Err(Error::NonConvergent("weight exponent must exceed -1"));
    }
    match method {
        Method::Quadrature => {
            if n != 1 {
                return Err(Error::InvalidParams("quadrature is available for n = 1 only"));
            }
            let v = disc_integral(beta, q.r_max, q.radial_nodes, q.angular_nodes, |z| g(&[z]).norm().powf(p));
            Ok((v, None, Method::Quadrature))
        }
        Method::MonteCarlo => {
            let e = ball_integral_mc(n, beta, q.r_max, q.mc_samples, q.seed, |z| g(z).norm().powf(p))?;
            Ok((e.mean, Some(e.stderr), Method::MonteCarlo))
        }
    }
}

/// Quasi-norm `|f(0)| + [∫(1−|z|²)^{pN}|R^N f|^p dv_α]^{1/p}`, with `f − f(0)` in
/// place of `R^0 f` when `N = 0`.
pub fn bergman_norm(f: &TaylorPolynomial, sp: &SpaceParams, q: &QuadratureSpec) -> Result<NormEstimate> {
    bergman_norm_order(f, sp, q, sp.smallest_n())
}

/// [`bergman_norm`] with an arbitrary admissible derivative order `k`.
pub fn bergman_norm_order(f: &TaylorPolynomial, sp: &SpaceParams, q: &QuadratureSpec, k: u32) -> Result<NormEstimate> {
    check_dim(f, sp)?;
    let rk = radial_power(f, k);
    bergman_norm_with(sp, q, k, f.value_at_origin(), |z| rk.evaluate_at(z).unwrap_or(C64::new(f64::NAN, 0.0)))
}

/// The quasi-norm of a function given by `f(0)` and a closure for `R^k f`.
pub fn bergman_norm_with<G>(sp: &SpaceParams, q: &QuadratureSpec, k: u32, f0: C64, rk: G) -> Result<NormEstimate>
where
    G: Fn(&[C64]) -> C64,
{
    let method = if sp.n == 1 { Method::Quadrature } else { Method::MonteCarlo };
    bergman_norm_by(sp, q, k, method, f0, rk)
}

/// [`bergman_norm`] with the integration method forced.
pub fn bergman_norm_method(
    f: &TaylorPolynomial,
    sp: &SpaceParams,
    q: &QuadratureSpec,
    method: Method,
) -> Result<NormEstimate> {
    check_dim(f, sp)?;
    let k = sp.smallest_n();
    let rk = radial_power(f, k);
    bergman_norm_by(sp, q, k, method, f.value_at_origin(), |z| rk.evaluate_at(z).unwrap_or(C64::new(f64::NAN, 0.0)))
}

fn bergman_norm_by<G>(
    sp: &SpaceParams,
    q: &QuadratureSpec,
    k: u32,
    method: Method,
    f0: C64,
    rk: G,
) -> Result<NormEstimate>
where
    G: Fn(&[C64]) -> C64,
{
    let beta = sp.p * f64::from(k) + sp.alpha;
    if !(beta > -1.0) {
        return Err(Error::NonConvergent("weight exponent pN+alpha must exceed -1"));
    }
    // for N = 0 the constant term is carried by |f(0)| alone
    let (raw, se, method) = if k == 0 {
        weighted_lp_integral_by(sp.n, sp.p, beta, q, method, |z| rk(z) - f0)?
    } else {
        weighted_lp_integral_by(sp.n, sp.p, beta, q, method, rk)?
    };
    let integral = raw * sp.weight_factor()?;
    let root = integral.max(0.0).powf(1.0 / sp.p);
    let stderr = se.map(|s| {
        let s = s * sp.weight_factor().unwrap_or(1.0);
        if integral > 0.0 {
            root / (sp.p * integral) * s
        } else {
            0.0
        }
    });
    Ok(NormEstimate { value: f0.norm() + root, integral, stderr, method })
}

/// `‖ζ^m‖_{H^p}^p = (n−1)!Π Γ(m_i p/2+1)/Γ(|m|p/2+n)`.
pub fn hardy_norm_homog_pow(m: &MultiIndex, p: f64) -> f64 {
    let n = m.dim() as f64;
    let mut l = ln_factorial(m.dim() as u32 - 1);
    for &mi in m.components() {
        l += libm::lgamma(f64::from(mi) * p / 2.0 + 1.0);
    }
    l -= libm::lgamma(f64::from(m.order()) * p / 2.0 + n);
    l.exp()
}

/// `‖ζ^m‖_{H^p}`
pub fn hardy_norm_homog(m: &MultiIndex, p: f64) -> f64 {
    hardy_norm_homog_pow(m, p).powf(1.0 / p)
}

/// A supremum over a finite grid: a lower bound for the true supremum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSup {
    pub value: f64,
    /// Radius where the maximum was attained.
    pub radius: f64,
    pub r_max: f64,
    pub points: usize,
}

/// Points of the deterministic sup grid: radii `1−r_i = (1−r_max)^{i/(R−1)}` times
/// directions (equally spaced angles for n = 1; coordinate axes then seeded sphere
/// points for n ≥ 2).
pub fn sup_grid(n: usize, grid: &QuadratureSpec) -> Result<(Vec<f64>, Vec<Vec<C64>>)> {
    grid.validate()?;
    if grid.r_max >= 1.0 {
        return Err(Error::InvalidParams("a sup grid needs r_max < 1"));
    }
    let rr = grid.radial_nodes;
    let radii: Vec<f64> = (0..rr)
        .map(|i| if rr == 1 { grid.r_max } else { 1.0 - (1.0 - grid.r_max).powf(i as f64 / (rr - 1) as f64) })
        .collect();
    let m = grid.angular_nodes;
    let dirs = if n == 1 {
        (0..m).map(|j| alloc::vec![C64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64)]).collect()
    } else {
        let mut d: Vec<Vec<C64>> = (0..n.min(m))
            .map(|i| {
                let mut e = alloc::vec![C64::new(0.0, 0.0); n];
                e[i] = C64::new(1.0, 0.0);
                e
            })
            .collect();
        d.extend(sphere_points(n, m.saturating_sub(n), grid.seed));
        d
    };
    Ok((radii, dirs))
}

/// `max over the grid of weight(r)·|g(rζ)|`.
pub fn grid_sup<W, G>(n: usize, grid: &QuadratureSpec, weight: W, g: G) -> Result<GridSup>
where
    W: Fn(f64) -> f64,
    G: Fn(&[C64]) -> C64,
{
    let (radii, dirs) = sup_grid(n, grid)?;
    let mut best = GridSup { value: 0.0, radius: 0.0, r_max: grid.r_max, points: radii.len() * dirs.len() };
    let mut z = alloc::vec![C64::new(0.0, 0.0); n];
    for &r in &radii {
        let w = weight(r);
        for d in &dirs {
            for (zi, di) in z.iter_mut().zip(d) {
                *zi = di * r;
            }
            let v = w * g(&z).norm();
            if v > best.value {
                best.value = v;
                best.radius = r;
            }
        }
    }
    Ok(best)
}

/// `|f(0)| + sup (1−|z|²)^{k−α}|R^k f(z)|` over the sup grid, `k = lipschitz_k(α)`.
pub fn lipschitz_norm(f: &TaylorPolynomial, alpha: f64, grid: &QuadratureSpec) -> Result<GridSup> {
    let k = lipschitz_k(alpha);
    let rk = radial_power(f, k);
    let e = f64::from(k) - alpha;
    let mut s =
        grid_sup(f.dim(), grid, |r| (1.0 - r * r).powf(e), |z| rk.evaluate_at(z).unwrap_or(C64::new(f64::NAN, 0.0)))?;
    s.value += f.value_at_origin().norm();
    Ok(s)
}

/// `lim_{r→1} ∫ f(rz) conj(g(rz)) dv`, exact for polynomials.
pub fn pairing_volume(f: &TaylorPolynomial, g: &TaylorPolynomial) -> Result<C64> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch { left: f.dim(), right: g.dim() });
    }
    let mut s = C64::new(0.0, 0.0);
    for (m, a) in f.terms() {
        let b = g.coefficient(m);
        if b.norm() > 0.0 {
            s += a * b.conj() * monomial_mass(m, 0.0, true)?;
        }
    }
    Ok(s)
}

/// `f(0)conj(g(0)) + ∫(1−|z|²)^{2k} R^k f · conj(R^k g) dv_γ`, exact for polynomials.
///
/// `dv_γ` is the probability weight when `γ > −1` and the plain weight otherwise.
pub fn pairing_gamma(f: &TaylorPolynomial, g: &TaylorPolynomial, k: u32, gamma_: f64) -> Result<C64> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch { left: f.dim(), right: g.dim() });
    }
    let e = 2.0 * f64::from(k) + gamma_;
    if !(e > -1.0) {
        return Err(Error::InvalidParams("pairing needs 2k + gamma > -1"));
    }
    let c = if gamma_ > -1.0 { normalization_c(f.dim(), gamma_)? } else { 1.0 };
    let mut s = f.value_at_origin() * g.value_at_origin().conj();
    for (m, a) in f.terms() {
        let order = m.order();
        if order == 0 {
            continue;
        }
        let b = g.coefficient(m);
        if b.norm() > 0.0 {
            s += a * b.conj() * (f64::from(order).powi(2 * k as i32) * c * monomial_mass(m, e, false)?);
        }
    }
    Ok(s)
}

/// Result of [`pointwise_bound_probe`].
#[derive(Clone, Debug, PartialEq)]
pub struct PointwiseProbe {
    /// Largest normalized value found.
    pub constant: f64,
    /// `(r, max over directions)` per grid radius.
    pub profile: Vec<(f64, f64)>,
}

/// Probes `|f(z)|(1−|z|²)^{(n+1+α)/p}/‖f‖` (power regime, `n+1+α > 0`) or
/// `|f(z)|/[log(2/(1−|z|²))]^{1/q}/‖f‖` (log regime, `n+1+α = 0`, `p > 1`).
pub fn pointwise_bound_probe(
    f: &TaylorPolynomial,
    sp: &SpaceParams,
    norm: f64,
    grid: &QuadratureSpec,
) -> Result<PointwiseProbe> {
    check_dim(f, sp)?;
    let x = sp.n as f64 + 1.0 + sp.alpha;
    let weight: alloc::boxed::Box<dyn Fn(f64) -> f64> = if x > TIE_TOL {
        let e = x / sp.p;
        alloc::boxed::Box::new(move |r: f64| (1.0 - r * r).powf(e))
    } else if x.abs() <= TIE_TOL && sp.p > 1.0 {
        let q = sp.p / (sp.p - 1.0);
        alloc::boxed::Box::new(move |r: f64| (2.0 / (1.0 - r * r)).ln().powf(-1.0 / q))
    } else {
        return Err(Error::RegimeMismatch("pointwise bounds need n+1+alpha > 0, or = 0 with p > 1"));
    };
    if !(norm > 0.0) {
        return Err(Error::InvalidParams("norm must be positive"));
    }
    let (radii, dirs) = sup_grid(sp.n, grid)?;
    let mut profile = Vec::with_capacity(radii.len());
    let mut constant = 0.0f64;
    for &r in &radii {
        let w = weight(r);
        let mut best = 0.0f64;
        for d in &dirs {
            let z: Vec<C64> = d.iter().map(|c| c * r).collect();
            best = best.max(f.evaluate_at(&z)?.norm() * w / norm);
        }
        constant = constant.max(best);
        profile.push((r, best));
    }
    Ok(PointwiseProbe { constant, profile })
}
