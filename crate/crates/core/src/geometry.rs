//! Ball geometry, finitely supported measures, Carleson and Berezin quantities,
//! and the Forelli–Rudin integral.

use alloc::vec::Vec;

use num_traits::Float;

use crate::gamma::{ln_factorial, ln_gamma_ratio};
use crate::quad::disc_integral;
use crate::sample::{ball_integral_mc, sphere_points};
use crate::series::{herm_pair, norm_sqr, BallPoint, TaylorPolynomial};
use crate::spaces::{bergman_norm, bergman_norm_with, QuadratureSpec, SpaceParams};
use crate::{radial::radial_power, Error, Result, C64};

const UNIT_TOL: f64 = 1e-12;

/// `φ_a(z) = (a − P_a z − s_a Q_a z)/(1 − ⟨z,a⟩)`, `s_a = sqrt(1−|a|²)`.
pub fn mobius(a: &BallPoint, z: &BallPoint) -> Result<BallPoint> {
    Ok(BallPoint::new_unchecked(mobius_coords(a.coords(), z.coords())?))
}

fn mobius_coords(a: &[C64], z: &[C64]) -> Result<Vec<C64>> {
    let d = herm_pair(z, a)?;
    let a2 = norm_sqr(a);
    if a2 == 0.0 {
        return Ok(z.iter().map(|c| -c).collect());
    }
    let sa = (1.0 - a2).sqrt();
    let denom = C64::new(1.0, 0.0) - d;
    Ok(a.iter()
        .zip(z)
        .map(|(ai, zi)| {
            let p = ai * (d / a2);
            (ai - p - (zi - p) * sa) / denom
        })
        .collect())
}

/// `1 − |φ_a(z)|² = (1−|a|²)(1−|z|²)/|1−⟨z,a⟩|²`, without cancellation.
pub fn one_minus_mobius_sq(a: &[C64], z: &[C64]) -> Result<f64> {
    let d = herm_pair(z, a)?;
    Ok((1.0 - norm_sqr(a)) * (1.0 - norm_sqr(z)) / (C64::new(1.0, 0.0) - d).norm_sqr())
}

/// `|φ_z(w)|` and `1 − |φ_z(w)|²`.
fn pseudo_dist(z: &[C64], w: &[C64]) -> Result<(f64, f64)> {
    let om = one_minus_mobius_sq(z, w)?;
    let rho = if om > 0.5 { norm_sqr(&mobius_coords(z, w)?).sqrt() } else { (1.0 - om).max(0.0).sqrt() };
    Ok((rho, om))
}

/// Bergman distance `β(z,w) = ½ log((1+|φ_z(w)|)/(1−|φ_z(w)|))`.
pub fn bergman_dist(z: &[C64], w: &[C64]) -> Result<f64> {
    let (rho, om) = pseudo_dist(z, w)?;
    Ok(rho.ln_1p() - 0.5 * om.ln())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Atom {
    pub z: BallPoint,
    pub mass: f64,
}

/// A positive measure with finitely many atoms.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteMeasure {
    n: usize,
    atoms: Vec<Atom>,
}

impl DiscreteMeasure {
    pub fn new(n: usize, atoms: Vec<Atom>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("dimension must be at least 1"));
        }
        for a in &atoms {
            if a.z.dim() != n {
                return Err(Error::DimensionMismatch { left: n, right: a.z.dim() });
            }
            if !(a.mass > 0.0 && a.mass.is_finite()) {
                return Err(Error::InvalidParams("atom masses must be positive and finite"));
            }
        }
        Ok(DiscreteMeasure { n, atoms })
    }

    pub fn zero(n: usize) -> Self {
        DiscreteMeasure { n, atoms: Vec::new() }
    }

    pub fn dirac(z: BallPoint, mass: f64) -> Result<Self> {
        DiscreteMeasure::new(z.dim(), alloc::vec![Atom { z, mass }])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum()
    }
}

fn check_unit(zeta: &[C64]) -> Result<()> {
    let r = norm_sqr(zeta).sqrt();
    if (r - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnitVector { norm: r });
    }
    Ok(())
}

/// `μ(Q_r(ζ))`, `Q_r(ζ) = {|1 − ⟨z,ζ⟩| < r}`.
pub fn mass_q(mu: &DiscreteMeasure, zeta: &[C64], r: f64) -> Result<f64> {
    check_unit(zeta)?;
    if !(r > 0.0) {
        return Err(Error::InvalidParams("radius must be positive"));
    }
    let mut m = 0.0;
    for a in &mu.atoms {
        if (C64::new(1.0, 0.0) - herm_pair(a.z.coords(), zeta)?).norm() < r {
            m += a.mass;
        }
    }
    Ok(m)
}

/// `μ(D(a,R))`, `D(a,R) = {β(z,a) < R}`.
pub fn mass_d(mu: &DiscreteMeasure, a: &[C64], r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::InvalidParams("radius must be positive"));
    }
    let mut m = 0.0;
    for at in &mu.atoms {
        if bergman_dist(a, at.z.coords())? < r {
            m += at.mass;
        }
    }
    Ok(m)
}

/// Probe grid of pairs `(ζ, r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CarlesonGrid {
    pub zetas: Vec<Vec<C64>>,
    pub radii: Vec<f64>,
    pub seed: u64,
}

impl CarlesonGrid {
    /// `directions` seeded sphere points and `radii` geometric values in `[1e−3, 2]`.
    pub fn seeded(n: usize, directions: usize, radii: usize, seed: u64) -> Self {
        let rs = (0..radii)
            .map(|i| if radii == 1 { 1.0 } else { 1e-3 * (2e3f64).powf(i as f64 / (radii - 1) as f64) })
            .collect();
        CarlesonGrid { zetas: sphere_points(n, directions, seed), radii: rs, seed }
    }

    /// 256 directions × 24 radii.
    pub fn standard(n: usize, seed: u64) -> Self {
        Self::seeded(n, 256, 24, seed)
    }

    pub fn len(&self) -> usize {
        self.zetas.len() * self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points `(1−r)ζ` for grid radii `r < 1`, and the origin.
    pub fn berezin_points(&self, n: usize) -> Vec<Vec<C64>> {
        let mut out = alloc::vec![alloc::vec![C64::new(0.0, 0.0); n]];
        for z in &self.zetas {
            for &r in &self.radii {
                if r < 1.0 {
                    out.push(z.iter().map(|c| c * (1.0 - r)).collect());
                }
            }
        }
        out
    }
}

/// Maximum of a grid statistic with where it was attained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridMax {
    pub value: f64,
    /// Index into the probe list (or grid pair index `i·radii + j`).
    pub index: usize,
    pub points: usize,
}

/// `max μ(Q_r(ζ))/r^{n+1+α}` over the grid: a lower bound for the best constant.
pub fn carleson_constant(mu: &DiscreteMeasure, alpha: f64, grid: &CarlesonGrid) -> Result<GridMax> {
    let e = mu.n as f64 + 1.0 + alpha;
    if !(e > 0.0) {
        return Err(Error::InvalidParams("need n+1+alpha > 0"));
    }
    if grid.is_empty() {
        return Err(Error::InvalidParams("empty probe grid"));
    }
    let mut best = GridMax { value: 0.0, index: 0, points: grid.len() };
    for (i, z) in grid.zetas.iter().enumerate() {
        for (j, &r) in grid.radii.iter().enumerate() {
            let v = mass_q(mu, z, r)? / r.powf(e);
            if v > best.value {
                best = GridMax { value: v, index: i * grid.radii.len() + j, points: grid.len() };
            }
        }
    }
    Ok(best)
}

/// `B_{s,γ}(μ)(z) = Σ m (1−|z|²)^s/|1−⟨z,w⟩|^{n+1+s+γ}`.
pub fn berezin(mu: &DiscreteMeasure, s: f64, gamma_: f64, z: &[C64]) -> Result<f64> {
    let e = mu.n as f64 + 1.0 + s + gamma_;
    let w = (1.0 - norm_sqr(z)).powf(s);
    let mut acc = 0.0;
    for a in &mu.atoms {
        let d = (C64::new(1.0, 0.0) - herm_pair(z, a.z.coords())?).norm();
        acc += a.mass / d.powf(e);
    }
    Ok(w * acc)
}

/// `μ̂_{R,γ}(z) = μ(D(z,R))/(1−|z|²)^{n+1+γ}`.
pub fn muhat(mu: &DiscreteMeasure, r: f64, gamma_: f64, z: &[C64]) -> Result<f64> {
    let m = mass_d(mu, z, r)?;
    Ok(m / (1.0 - norm_sqr(z)).powf(mu.n as f64 + 1.0 + gamma_))
}

/// `max B_{s,γ}(μ)` over the Berezin points of a Carleson grid.
pub fn berezin_sup(mu: &DiscreteMeasure, s: f64, gamma_: f64, grid: &CarlesonGrid) -> Result<GridMax> {
    let pts = grid.berezin_points(mu.n);
    let mut best = GridMax { value: 0.0, index: 0, points: pts.len() };
    for (i, z) in pts.iter().enumerate() {
        let v = berezin(mu, s, gamma_, z)?;
        if v > best.value {
            best = GridMax { value: v, index: i, points: pts.len() };
        }
    }
    Ok(best)
}

/// Behaviour of the Forelli–Rudin integral as `|z| → 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Growth {
    /// Bounded, continuous up to the boundary (`t < 0`).
    Bounded,
    /// `≍ −log(1−|z|²)` (`t = 0`).
    Log,
    /// `≍ (1−|z|²)^{−t}` (`t > 0`).
    Power(f64),
}

pub fn forelli_rudin_growth(t: f64) -> Growth {
    if t < 0.0 {
        Growth::Bounded
    } else if t == 0.0 {
        Growth::Log
    } else {
        Growth::Power(t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub terms: usize,
    /// Rigorous bound on the omitted tail.
    pub tail_bound: f64,
}

const FR_MAX_TERMS: usize = 20_000_000;

/// `I(z) = ∫ (1−|w|²)^s/|1−⟨z,w⟩|^{n+1+s+t} dv(w)` at `|z| = ρ`, summed as the
/// unitary-invariant series in `ρ²` until the tail is below `tol` relative to the sum.
pub fn forelli_rudin(n: usize, rho: f64, s: f64, t: f64, tol: f64) -> Result<SeriesValue> {
    if !(s > -1.0) {
        return Err(Error::InvalidParams("need s > -1"));
    }
    if n == 0 || !(0.0..1.0).contains(&rho) || !(tol > 0.0) {
        return Err(Error::InvalidParams("need n >= 1, 0 <= rho < 1, tol > 0"));
    }
    let nf = n as f64;
    let h = (nf + 1.0 + s + t) / 2.0;
    let b = nf + s + 1.0;
    let x = rho * rho;
    let (lr, _) = ln_gamma_ratio(s + 1.0, b)?;
    let mut term = (ln_factorial(n as u32) + lr).exp();
    let ratio = |k: f64| x * (h + k) * (h + k) / ((k + 1.0) * (k + b));
    // R(k)/x − 1 = (A k + B)/((k+1)(k+b)); monotone past the largest critical point
    let a_ = 2.0 * h - 1.0 - b;
    let b_ = h * h - b;
    let mono_from = monotone_threshold(a_, b_, b);
    let mut sum = 0.0;
    let mut k = 0usize;
    loop {
        sum += term;
        let kf = k as f64;
        let r = ratio(kf);
        let next = term * r;
        if next == 0.0 {
            return Ok(SeriesValue { value: sum, terms: k + 1, tail_bound: 0.0 });
        }
        let kn = kf + 1.0;
        if kn >= mono_from {
            let rs = ratio(kn).max(x);
            if rs < 1.0 {
                let tail = next / (1.0 - rs);
                if tail <= tol * sum {
                    return Ok(SeriesValue { value: sum, terms: k + 1, tail_bound: tail });
                }
            }
        }
        term = next;
        k += 1;
        if k >= FR_MAX_TERMS {
            return Err(Error::NonConvergent("forelli-rudin series: tolerance not reached"));
        }
    }
}

/// Smallest `k` past which `(A k + B)/((k+1)(k+b))` is monotone.
fn monotone_threshold(a: f64, b0: f64, b: f64) -> f64 {
    // derivative numerator: −A k² − 2B k + A b − B(1+b)
    let (qa, qb, qc) = (-a, -2.0 * b0, a * b - b0 * (1.0 + b));
    let root = if qa == 0.0 {
        if qb == 0.0 {
            0.0
        } else {
            -qc / qb
        }
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            0.0
        } else {
            let s = disc.sqrt();
            ((-qb + s) / (2.0 * qa)).max((-qb - s) / (2.0 * qa))
        }
    };
    root.max(0.0).ceil() + 1.0
}

/// Stirling numbers of the second kind `S(k, j)`, `j = 0..=k`.
pub fn stirling2_row(k: u32) -> Vec<f64> {
    let k = k as usize;
    let mut row = alloc::vec![0.0; k + 1];
    row[0] = 1.0;
    for i in 1..=k {
        for j in (1..=i).rev() {
            row[j] = j as f64 * row[j] + row[j - 1];
        }
        row[0] = 0.0;
    }
    row
}

/// `(x d/dx)^k (1−x)^{−e} = Σ_j S(k,j)(e)_j x^j (1−x)^{−e−j}`; with `x = ⟨z,a⟩` this is
/// `R^k` applied to `(1−⟨z,a⟩)^{−e}`.
pub fn radial_power_of_kernel(e: f64, k: u32, x: C64) -> C64 {
    let one_minus = C64::new(1.0, 0.0) - x;
    let base = one_minus.powf(-e);
    if k == 0 {
        return base;
    }
    let row = stirling2_row(k);
    let mut acc = C64::new(0.0, 0.0);
    let mut poch = 1.0;
    let mut xp = C64::new(1.0, 0.0);
    let q = x / one_minus;
    for (j, sj) in row.iter().enumerate() {
        if j > 0 {
            poch *= e + (j - 1) as f64;
            xp *= q;
        }
        if *sj != 0.0 {
            acc += xp * (sj * poch);
        }
    }
    acc * base
}

/// Functions fed to [`embedding_probe`].
#[derive(Clone, Debug, PartialEq)]
pub enum TestFunction {
    Polynomial(TaylorPolynomial),
    /// `(1 − ⟨z,a⟩)^{−e}`
    KernelPower {
        a: BallPoint,
        e: f64,
    },
}

impl TestFunction {
    fn radial(&self, k: u32, z: &[C64]) -> Result<C64> {
        match self {
            TestFunction::Polynomial(f) => radial_power(f, k).evaluate_at(z),
            TestFunction::KernelPower { a, e } => Ok(radial_power_of_kernel(*e, k, herm_pair(z, a.coords())?)),
        }
    }

    fn norm(&self, sp: &SpaceParams, q: &QuadratureSpec) -> Result<f64> {
        match self {
            TestFunction::Polynomial(f) => Ok(bergman_norm(f, sp, q)?.value),
            TestFunction::KernelPower { a, e } => {
                let big_n = sp.smallest_n();
                let (a, e) = (a.clone(), *e);
                let est = bergman_norm_with(sp, q, big_n, C64::new(1.0, 0.0), move |z| {
                    radial_power_of_kernel(e, big_n, herm_pair(z, a.coords()).unwrap_or(C64::new(f64::NAN, 0.0)))
                })?;
                Ok(est.value)
            }
        }
    }
}

/// Which geometric condition the probe reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbeddingBranch {
    /// `p ≤ q`: `sup_a μ(D(a,R))/(1−|a|²)^{(n+1+α+kp)q/p}`.
    Carleson,
    /// `q < p`: `∫ μ̂_{R,γ}^{p/(p−q)} dv_γ`, `γ = α+kp`.
    Integrable,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingReport {
    pub branch: EmbeddingBranch,
    /// `∫|R^k f|^q dμ / ‖f‖^q` per test function.
    pub ratios: Vec<f64>,
    pub statistic: f64,
}

/// Ratios `∫|R^k f|^q dμ/‖f‖^q_{p,α}` and the matching geometric statistic.
///
/// The Carleson branch takes its sup over atom locations plus `extra_points` seeded
/// ball points; `radius` is the Bergman-ball radius `R`.
pub fn embedding_probe(
    mu: &DiscreteMeasure,
    sp: &SpaceParams,
    q_exp: f64,
    k: u32,
    family: &[TestFunction],
    radius: f64,
    quad: &QuadratureSpec,
) -> Result<EmbeddingReport> {
    if sp.n != mu.n {
        return Err(Error::DimensionMismatch { left: sp.n, right: mu.n });
    }
    let gamma_ = sp.alpha + f64::from(k) * sp.p;
    if !(gamma_ > -1.0) || !(q_exp > 0.0) {
        return Err(Error::InvalidParams("need alpha + k p > -1 and q > 0"));
    }
    let mut ratios = Vec::with_capacity(family.len());
    for f in family {
        let mut acc = 0.0;
        for a in &mu.atoms {
            acc += a.mass * f.radial(k, a.z.coords())?.norm().powf(q_exp);
        }
        let nf = f.norm(sp, quad)?;
        ratios.push(if acc == 0.0 { 0.0 } else { acc / nf.powf(q_exp) });
    }
    let nn = mu.n as f64;
    let (branch, statistic) = if sp.p <= q_exp {
        let e = (nn + 1.0 + gamma_) * q_exp / sp.p;
        let mut locs: Vec<Vec<C64>> = mu.atoms.iter().map(|a| a.z.coords().to_vec()).collect();
        let mut r = crate::sample::rng(quad.seed, 0);
        for _ in 0..128 {
            locs.push(crate::sample::ball_point(&mut r, mu.n, 1.0));
        }
        let mut best = 0.0f64;
        for a in &locs {
            let v = mass_d(mu, a, radius)? / (1.0 - norm_sqr(a)).powf(e);
            best = best.max(v);
        }
        (EmbeddingBranch::Carleson, best)
    } else {
        let ex = sp.p / (sp.p - q_exp);
        let g = |z: &[C64]| muhat(mu, radius, gamma_, z).map(|v| v.powf(ex)).unwrap_or(f64::NAN);
        let v = if mu.n == 1 {
            disc_integral(gamma_, quad.r_max, quad.radial_nodes, quad.angular_nodes, |z| g(&[z]))
        } else {
            ball_integral_mc(mu.n, gamma_, quad.r_max, quad.mc_samples, quad.seed, g)?.mean
        };
        (EmbeddingBranch::Integrable, v)
    };
    Ok(EmbeddingReport { branch, ratios, statistic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{ball_point, rng};
    use alloc::vec;
    use rand::Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn pt(v: &[C64]) -> BallPoint {
        BallPoint::new(v.to_vec()).unwrap()
    }

    #[test]
    fn mobius_examples() {
        let z = pt(&[c(0.3, -0.2), c(0.1, 0.4)]);
        let o = BallPoint::origin(2);
        let m = mobius(&o, &z).unwrap();
        assert_eq!(m.coords(), &[c(-0.3, 0.2), c(-0.1, -0.4)]);
        assert!(mobius(&z, &z).unwrap().norm() < 1e-15);
        let back = mobius(&z, &o).unwrap();
        for (x, y) in back.coords().iter().zip(z.coords()) {
            assert!((x - y).norm() < 1e-15);
        }
        let a = pt(&[c(0.5, 0.0)]);
        let w = pt(&[c(0.0, 0.5)]);
        let phi = mobius(&a, &w).unwrap();
        assert!((1.0 - phi.norm_sqr() - 0.5625 / 1.0625).abs() < 1e-15);
        assert!((one_minus_mobius_sq(a.coords(), w.coords()).unwrap() - 0.5625 / 1.0625).abs() < 1e-15);
    }

    #[test]
    fn mobius_identity_and_involution() {
        let mut r = rng(7, 0);
        for _ in 0..1000 {
            let a = BallPoint::new(ball_point(&mut r, 2, 0.999)).unwrap();
            let z = BallPoint::new(ball_point(&mut r, 2, 0.999)).unwrap();
            let phi = mobius(&a, &z).unwrap();
            let lhs = 1.0 - phi.norm_sqr();
            let rhs = one_minus_mobius_sq(a.coords(), z.coords()).unwrap();
            assert!((lhs - rhs).abs() < 1e-12, "{lhs} {rhs}");
            let back = mobius(&a, &phi).unwrap();
            for (x, y) in back.coords().iter().zip(z.coords()) {
                assert!((x - y).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn bergman_dist_examples() {
        assert_eq!(bergman_dist(&[c(0.0, 0.0)], &[c(0.0, 0.0)]).unwrap(), 0.0);
        let w = [c(0.6, 0.0), c(0.0, 0.3)];
        let r = norm_sqr(&w).sqrt();
        let want = 0.5 * ((1.0 + r) / (1.0 - r)).ln();
        assert!((bergman_dist(&[c(0.0, 0.0); 2], &w).unwrap() - want).abs() < 1e-14);
        let mut g = rng(3, 0);
        for _ in 0..100 {
            let z = ball_point(&mut g, 2, 0.99);
            let w = ball_point(&mut g, 2, 0.99);
            let d1 = bergman_dist(&z, &w).unwrap();
            let d2 = bergman_dist(&w, &z).unwrap();
            assert!((d1 - d2).abs() < 1e-12);
            assert!(bergman_dist(&z, &z).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn masses() {
        let mu = DiscreteMeasure::dirac(BallPoint::origin(1), 2.5).unwrap();
        assert_eq!(mass_q(&mu, &[c(0.0, 1.0)], 1.0).unwrap(), 0.0);
        assert_eq!(mass_q(&mu, &[c(0.0, 1.0)], 1.0001).unwrap(), 2.5);
        for r in [1e-3, 0.5, 4.0] {
            assert_eq!(mass_d(&mu, &[c(0.0, 0.0)], r).unwrap(), 2.5);
        }
        let two = DiscreteMeasure::new(
            1,
            vec![Atom { z: pt(&[c(0.9, 0.0)]), mass: 1.0 }, Atom { z: pt(&[c(-0.9, 0.0)]), mass: 3.0 }],
        )
        .unwrap();
        assert_eq!(mass_q(&two, &[c(1.0, 0.0)], 0.2).unwrap(), 1.0);
        assert!(mass_q(&two, &[c(0.9, 0.0)], 0.2).is_err());
        assert!(DiscreteMeasure::dirac(BallPoint::origin(1), 0.0).is_err());
    }

    #[test]
    fn carleson_examples() {
        let grid = CarlesonGrid { zetas: vec![vec![c(1.0, 0.0)]], radii: vec![1.01, 2.0], seed: 0 };
        assert_eq!(carleson_constant(&DiscreteMeasure::zero(1), 0.0, &grid).unwrap().value, 0.0);
        let mu = DiscreteMeasure::dirac(BallPoint::origin(1), 1.0).unwrap();
        let v = carleson_constant(&mu, 0.0, &grid).unwrap().value;
        assert!((v - 1.0 / (1.01f64 * 1.01)).abs() < 1e-15);
        let g = CarlesonGrid::standard(2, 1);
        assert_eq!(g.len(), 256 * 24);
        assert!((g.radii[0] - 1e-3).abs() < 1e-18 && (g.radii[23] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn berezin_examples() {
        let mu = DiscreteMeasure::dirac(BallPoint::origin(2), 1.0).unwrap();
        let z = [c(0.3, 0.1), c(-0.2, 0.5)];
        let w = 1.0 - norm_sqr(&z);
        assert!((berezin(&mu, 1.5, 0.7, &z).unwrap() - w.powf(1.5)).abs() < 1e-15);
        let b = bergman_dist(&z, &[c(0.0, 0.0); 2]).unwrap();
        for r in [b * 0.9, b * 1.1] {
            let want = if b < r { w.powf(-(3.0 + 0.4)) } else { 0.0 };
            assert!((muhat(&mu, r, 0.4, &z).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn muhat_dominated_by_berezin() {
        let mut g = rng(11, 0);
        let atoms: Vec<Atom> = (0..50)
            .map(|_| Atom { z: BallPoint::new(ball_point(&mut g, 1, 0.99)).unwrap(), mass: 0.5 + g.random::<f64>() })
            .collect();
        let mu = DiscreteMeasure::new(1, atoms).unwrap();
        let (rad, s, gam) = (0.5, 1.0, 0.0);
        let mut worst = 0.0f64;
        for _ in 0..1000 {
            let z = ball_point(&mut g, 1, 0.995);
            let b = berezin(&mu, s, gam, &z).unwrap();
            let m = muhat(&mu, rad, gam, &z).unwrap();
            assert!(b > 0.0);
            worst = worst.max(m / b);
        }
        // on D(z,R) the kernel quotient is bounded by a constant depending on R only
        let t = rad.tanh();
        let bound = ((1.0 + t) / (1.0 - t)).powf(2.0 + s + gam) / (1.0 - t * t).powf(1.0 + gam + 1.0);
        assert!(worst <= bound, "{worst} {bound}");
    }

    #[test]
    fn forelli_rudin_values() {
        let v = forelli_rudin(1, 0.0, 0.0, 0.3, 1e-14).unwrap();
        assert!((v.value - 1.0).abs() < 1e-15);
        let v = forelli_rudin(2, 0.0, 0.5, 1.0, 1e-14).unwrap();
        let want = 2.0 * crate::gamma::gamma(1.5).unwrap() / crate::gamma::gamma(3.5).unwrap();
        assert!((v.value - want).abs() < 1e-14);
        // n=1, s=0, t=1: ∫ dA/|1−zw̄|^3 = Σ (k+1)^2... check against the direct series
        let rho: f64 = 0.5;
        let direct: f64 = (0..400)
            .map(|k| {
                let h = 1.5;
                let mut p = 1.0;
                for i in 0..k {
                    p *= (h + i as f64) / (i as f64 + 1.0);
                }
                p * p / (k as f64 + 1.0) * rho.powi(2 * k)
            })
            .sum();
        let v = forelli_rudin(1, rho, 0.0, 1.0, 1e-15).unwrap();
        assert!((v.value - direct).abs() < 1e-13 * direct);
        assert!(v.tail_bound <= 1e-15 * v.value);
        assert!(forelli_rudin(1, 0.5, -1.0, 0.0, 1e-10).is_err());
    }

    #[test]
    fn forelli_rudin_monte_carlo() {
        let (rho, s, t) = (0.6, 0.5, 0.7);
        let z = [c(rho, 0.0), c(0.0, 0.0)];
        let e = 2.0 + 1.0 + s + t;
        let mc = ball_integral_mc(2, s, 1.0, 400_000, 5, |w| {
            (C64::new(1.0, 0.0) - herm_pair(&z, w).unwrap()).norm().powf(-e)
        })
        .unwrap();
        let v = forelli_rudin(2, rho, s, t, 1e-13).unwrap();
        assert!((mc.mean - v.value).abs() < 5.0 * mc.stderr, "{} {} {}", mc.mean, v.value, mc.stderr);
    }

    #[test]
    fn forelli_rudin_terminating() {
        // h = −1: a single nonzero term
        let v = forelli_rudin(1, 0.9, 0.0, -4.0, 1e-12).unwrap();
        assert_eq!(v.tail_bound, 0.0);
        assert!((v.value - (1.0 + 0.81 / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn kernel_radial_powers() {
        let x = c(0.3, -0.4);
        let e = 2.5;
        assert_eq!(stirling2_row(3), vec![0.0, 1.0, 3.0, 1.0]);
        // compare with the series Σ (e)_j/j! j^k x^j
        for k in 0..4u32 {
            let mut want = c(0.0, 0.0);
            let mut coef = 1.0;
            let mut xp = c(1.0, 0.0);
            for j in 0..400 {
                if j > 0 {
                    coef *= (e + (j - 1) as f64) / j as f64;
                    xp *= x;
                }
                want += xp * coef * (j as f64).powi(k as i32);
            }
            let got = radial_power_of_kernel(e, k, x);
            assert!((got - want).norm() < 1e-12 * want.norm(), "{k}");
        }
    }

    #[test]
    fn embedding_examples() {
        let sp = SpaceParams::new(1, 2.0, 0.0).unwrap();
        let q = QuadratureSpec::default();
        let fam = vec![TestFunction::KernelPower { a: pt(&[c(0.5, 0.0)]), e: 1.5 }];
        let r = embedding_probe(&DiscreteMeasure::zero(1), &sp, 2.0, 0, &fam, 0.3, &q).unwrap();
        assert_eq!(r.ratios, vec![0.0]);
        let a = pt(&[c(0.0, 0.7)]);
        let mu = DiscreteMeasure::dirac(a.clone(), 1.0).unwrap();
        let r = embedding_probe(&mu, &sp, 3.0, 1, &fam, 1e-3, &q).unwrap();
        assert_eq!(r.branch, EmbeddingBranch::Carleson);
        let want = (1.0 - 0.49f64).powf(-(2.0 + 2.0) * 3.0 / 2.0);
        assert!((r.statistic - want).abs() < 1e-12 * want);
        let r = embedding_probe(&mu, &sp, 1.0, 0, &fam, 0.5, &q).unwrap();
        assert_eq!(r.branch, EmbeddingBranch::Integrable);
        assert!(r.statistic > 0.0);
    }
}
