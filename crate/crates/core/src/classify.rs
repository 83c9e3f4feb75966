//! Inclusions between `A^p_α` and `Λ_α`, witness functions, atoms, lattices,
//! atomic synthesis and multiplier probes.

use alloc::vec::Vec;

use num_traits::Float;

use crate::geometry::{bergman_dist, forelli_rudin_growth, radial_power_of_kernel, Growth as FrGrowth};
use crate::lacunary::{lacunary_bergman_test, lacunary_lipschitz_test, Decision, Growth, LipschitzClass, Orders};
use crate::radial::power_multiplier;
use crate::sample::{rng, sphere_point};
use crate::series::{binomial_series_coeffs, herm_pair, BallPoint, MultiIndex, TaylorPolynomial};
use crate::spaces::{
    bergman_norm, bergman_norm_p2, bergman_norm_with, NormEstimate, QuadratureSpec, SpaceParams, TIE_TOL,
};
use crate::{Error, Result, C64};

/// How the first space sits relative to the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    StrictSubset,
    StrictSuperset,
    Neither,
}

impl Relation {
    pub fn reverse(self) -> Self {
        match self {
            Relation::StrictSubset => Relation::StrictSuperset,
            Relation::StrictSuperset => Relation::StrictSubset,
            r => r,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Relation::Equal => "equal",
            Relation::StrictSubset => "strict-subset",
            Relation::StrictSuperset => "strict-superset",
            Relation::Neither => "neither",
        }
    }
}

/// `(p, α)` of a Bergman space, dimension implied by context.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bergman {
    pub p: f64,
    pub alpha: f64,
}

impl Bergman {
    pub fn new(p: f64, alpha: f64) -> Self {
        Bergman { p, alpha }
    }
}

/// `A^p_α ⊂ A^q_β` in dimension `n`.
pub fn bergman_subset(n: usize, a: Bergman, b: Bergman) -> bool {
    let nf = n as f64;
    if a.p <= b.p {
        (nf + 1.0 + a.alpha) / a.p <= (nf + 1.0 + b.alpha) / b.p + TIE_TOL
    } else {
        (1.0 + a.alpha) / a.p < (1.0 + b.alpha) / b.p - TIE_TOL
    }
}

/// Relation of `A^p_α` to `A^q_β`.
pub fn inclusion_bergman(n: usize, a: Bergman, b: Bergman) -> Result<Relation> {
    if !(a.p > 0.0 && b.p > 0.0) {
        return Err(Error::InvalidParams("exponents must be positive"));
    }
    if (a.p - b.p).abs() <= TIE_TOL && (a.alpha - b.alpha).abs() <= TIE_TOL {
        return Ok(Relation::Equal);
    }
    Ok(match (bergman_subset(n, a, b), bergman_subset(n, b, a)) {
        (true, false) => Relation::StrictSubset,
        (false, true) => Relation::StrictSuperset,
        (false, false) => Relation::Neither,
        // distinct spaces are never mutually included
        (true, true) => return Err(Error::InvalidParams("inconsistent inclusion predicates")),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Stretch {
    pub stretch: f64,
    pub lower: f64,
    pub upper: f64,
}

/// `A^p_α` sits between `Λ_{−lower}` and `Λ_{−upper}`; the stretch is `1/p`.
pub fn lipschitz_stretch(p: f64, alpha: f64, n: usize) -> Result<Stretch> {
    if !(p > 0.0) {
        return Err(Error::InvalidParams("p must be positive"));
    }
    let nf = n as f64;
    Ok(Stretch { stretch: 1.0 / p, lower: (1.0 + alpha) / p, upper: (nf + 1.0 + alpha) / p })
}

/// Relation of `Λ_α` to `Λ_β`.
pub fn inclusion_lipschitz(alpha: f64, beta: f64) -> Relation {
    if (alpha - beta).abs() <= TIE_TOL {
        Relation::Equal
    } else if alpha > beta {
        Relation::StrictSubset
    } else {
        Relation::StrictSuperset
    }
}

/// Relation of `A^p_α` to `Λ_{−γ}` in dimension `n`.
pub fn bergman_vs_lipschitz(n: usize, p: f64, alpha: f64, gamma_: f64) -> Result<Relation> {
    let s = lipschitz_stretch(p, alpha, n)?;
    Ok(if gamma_ < s.lower - TIE_TOL {
        Relation::StrictSuperset
    } else if gamma_ >= s.upper - TIE_TOL {
        Relation::StrictSubset
    } else {
        Relation::Neither
    })
}

/// `f_t = R^{−k}[(1−z_1)^{−t−k} − 1]`: the coefficient of `z_1^j` is
/// `Γ(t+k+j)/(j!Γ(t+k))·j^{−k}`.
pub fn witness_ft(n: usize, t: f64, k: u32, degree: u32) -> Result<TaylorPolynomial> {
    if n == 0 {
        return Err(Error::InvalidParams("dimension must be at least 1"));
    }
    let c = binomial_series_coeffs(t + f64::from(k), degree);
    let terms = c.iter().enumerate().skip(1).map(|(j, &a)| {
        let mut m = alloc::vec![0u32; n];
        m[0] = j as u32;
        (MultiIndex::new(m), C64::new(a * (j as f64).powi(-(k as i32)), 0.0))
    });
    TaylorPolynomial::from_terms(n, degree, terms)
}

/// `R^k f_t(z) = (1−z_1)^{−t−k} − 1`.
pub fn witness_ft_radial(t: f64, k: u32, z1: C64) -> C64 {
    (C64::new(1.0, 0.0) - z1).powf(-t - f64::from(k)) - C64::new(1.0, 0.0)
}

/// `f_t ∈ A^p_α`: `|R^N f_t|^p` is a Forelli–Rudin integrand with excess `tp − (n+1+α)`.
pub fn witness_ft_in_bergman(t: f64, sp: &SpaceParams) -> bool {
    let excess = t * sp.p - (sp.n as f64 + 1.0 + sp.alpha);
    matches!(forelli_rudin_growth(excess), FrGrowth::Bounded)
}

/// `f_t ∈ Λ_{−γ}`: the profile `(1−x²)^{k+γ}|R^k f_t(x e_1)|` behaves like `(1−x)^{γ−t}`.
pub fn witness_ft_in_lipschitz(t: f64, gamma_: f64) -> bool {
    t <= gamma_ + TIE_TOL
}

/// `Σ_k 2^{kσ}k^{−τ} z^{2^k}` in one variable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LacunaryWitness {
    pub sigma: f64,
    pub tau: f64,
}

impl LacunaryWitness {
    /// `σ = (1+α)/p`, `τ = 0`.
    pub fn boundary(p: f64, alpha: f64) -> Self {
        LacunaryWitness { sigma: (1.0 + alpha) / p, tau: 0.0 }
    }

    pub fn orders() -> Orders {
        Orders::powers_of_two()
    }

    pub fn coefficient_growth(&self) -> Growth {
        Growth::unit().geometric(2f64.powf(self.sigma)).power_of_index(-self.tau)
    }

    /// The first `blocks` terms.
    pub fn polynomial(&self, blocks: u32) -> Result<TaylorPolynomial> {
        if blocks > 30 {
            return Err(Error::InvalidParams("at most 30 lacunary blocks"));
        }
        let degree = if blocks == 0 { 0 } else { 1u32 << blocks };
        let terms = (1..=blocks).map(|k| {
            let c = 2f64.powf(f64::from(k) * self.sigma) * f64::from(k).powf(-self.tau);
            (MultiIndex::new(alloc::vec![1u32 << k]), C64::new(c, 0.0))
        });
        TaylorPolynomial::from_terms(1, degree, terms)
    }

    pub fn in_bergman(&self, sp: &SpaceParams) -> Result<Decision> {
        if sp.n != 1 {
            return Err(Error::InvalidParams("lacunary witnesses are one-dimensional"));
        }
        lacunary_bergman_test(&Self::orders(), &self.coefficient_growth(), sp)
    }

    /// Membership in `Λ_{−γ}` (`Λ_{−γ,0}` included).
    pub fn in_lipschitz(&self, gamma_: f64) -> Result<LipschitzClass> {
        lacunary_lipschitz_test(&Self::orders(), &self.coefficient_growth(), -gamma_)
    }
}

/// `Σ_{k=1}^{K} 2^{k(1+α)/p} z^{2^k}`, which lies in `Λ_{−(1+α)/p}` but not in `A^p_α`.
pub fn lacunary_witness(n: usize, p: f64, alpha: f64, blocks: u32) -> Result<TaylorPolynomial> {
    if n != 1 {
        return Err(Error::InvalidParams("lacunary witnesses are one-dimensional"));
    }
    LacunaryWitness::boundary(p, alpha).polynomial(blocks)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Witness {
    Ft { t: f64 },
    Lacunary(LacunaryWitness),
}

impl Witness {
    pub fn id(&self) -> &'static str {
        match self {
            Witness::Ft { .. } => "ft",
            Witness::Lacunary(_) => "lacunary",
        }
    }

    pub fn member(&self, sp: &SpaceParams) -> Result<Decision> {
        match self {
            Witness::Ft { t } => Ok(if witness_ft_in_bergman(*t, sp) { Decision::Member } else { Decision::NonMember }),
            Witness::Lacunary(w) => w.in_bergman(sp),
        }
    }
}

/// A function in `A^p_α` but not in `A^q_β` (n = 1), when `A^p_α ⊄ A^q_β`.
pub fn find_witness(a: Bergman, b: Bergman) -> Option<Witness> {
    if bergman_subset(1, a, b) {
        return None;
    }
    if a.p <= b.p {
        let t = 0.5 * ((2.0 + a.alpha) / a.p + (2.0 + b.alpha) / b.p);
        return Some(Witness::Ft { t });
    }
    let (sa, sb) = ((1.0 + a.alpha) / a.p, (1.0 + b.alpha) / b.p);
    if sa > sb + TIE_TOL {
        Some(Witness::Lacunary(LacunaryWitness { sigma: 0.5 * (sa + sb), tau: 0.0 }))
    } else {
        // σ on the common threshold; τp > 1 ≥ τq
        Some(Witness::Lacunary(LacunaryWitness { sigma: sa, tau: 0.5 * (1.0 / a.p + 1.0 / b.p) }))
    }
}

/// `(1 − ⟨z,a⟩)^{−b}` with its admissibility data.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomSpec {
    pub a: BallPoint,
    pub b: f64,
}

/// `n·max(1, 1/p) + (α+1)/p`; admissible `b` must exceed it.
pub fn atom_exponent_bound(sp: &SpaceParams) -> f64 {
    sp.n as f64 * (1.0f64).max(1.0 / sp.p) + (sp.alpha + 1.0) / sp.p
}

fn check_b(b: f64, sp: &SpaceParams) -> Result<()> {
    if !b.is_finite() || b == 0.0 || (b < 0.0 && b == b.round()) {
        return Err(Error::InvalidParams("b must be neither 0 nor a negative integer"));
    }
    if !(b > atom_exponent_bound(sp)) {
        return Err(Error::InvalidParams("b must exceed n max(1, 1/p) + (alpha+1)/p"));
    }
    Ok(())
}

impl AtomSpec {
    pub fn new(a: BallPoint, b: f64, sp: &SpaceParams) -> Result<Self> {
        if a.dim() != sp.n {
            return Err(Error::DimensionMismatch { left: sp.n, right: a.dim() });
        }
        check_b(b, sp)?;
        Ok(AtomSpec { a, b })
    }

    /// `(1−|a|²)^{b−(n+1+α)/p}`, the factor making the norm of order one.
    pub fn normalizer(&self, sp: &SpaceParams) -> f64 {
        (1.0 - self.a.norm_sqr()).powf(self.b - (sp.n as f64 + 1.0 + sp.alpha) / sp.p)
    }
}

pub fn atom_eval(spec: &AtomSpec, z: &[C64]) -> Result<C64> {
    Ok((C64::new(1.0, 0.0) - herm_pair(z, spec.a.coords())?).powf(-spec.b))
}

/// `R^k` of the atom at `z`.
pub fn atom_radial(spec: &AtomSpec, k: u32, z: &[C64]) -> Result<C64> {
    Ok(radial_power_of_kernel(spec.b, k, herm_pair(z, spec.a.coords())?))
}

/// `(1−|a|²)^{(n+1+α)/p − b}`, the size of `‖(1−⟨z,a⟩)^{−b}‖_{p,α}`.
pub fn atom_norm_asymptote(spec: &AtomSpec, sp: &SpaceParams) -> f64 {
    1.0 / spec.normalizer(sp)
}

/// Exponents `(bp/q, bp/r)` splitting an atom when `1/p = 1/q + 1/r`.
pub fn atom_factor_exponents(b: f64, p: f64, q: f64, r: f64) -> Result<(f64, f64)> {
    if ((1.0 / p) - (1.0 / q + 1.0 / r)).abs() > 1e-12 {
        return Err(Error::InvalidParams("need 1/p = 1/q + 1/r"));
    }
    Ok((b * p / q, b * p / r))
}

/// Points on shells `|a| = 1 − 2^{−j}` with pairwise Bergman distance `≥ δ/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    pub points: Vec<BallPoint>,
    /// Shell number `j` of each point.
    pub shell: Vec<u32>,
    pub separation: f64,
    pub shells: u32,
    pub seed: u64,
}

impl Lattice {
    pub fn shell_counts(&self) -> Vec<usize> {
        let mut c = alloc::vec![0usize; self.shells as usize];
        for &j in &self.shell {
            c[j as usize - 1] += 1;
        }
        c
    }

    pub fn min_separation(&self) -> Result<f64> {
        let mut m = f64::INFINITY;
        for i in 0..self.points.len() {
            for j in 0..i {
                m = m.min(bergman_dist(self.points[i].coords(), self.points[j].coords())?);
            }
        }
        Ok(m)
    }
}

const LATTICE_MAX_CANDIDATES: usize = 200_000;

/// Shells `r_j = 1 − 2^{−j}`, `j = 1..=J`. Each shell draws seeded directions and
/// keeps a candidate when it is `δ` from its shell-mates and `δ/2` from every point.
pub fn lattice_generate(n: usize, delta: f64, shells: u32, seed: u64) -> Result<Lattice> {
    if n == 0 || !(delta > 0.0) || shells == 0 || shells > 40 {
        return Err(Error::InvalidParams("need n >= 1, delta > 0, 1 <= J <= 40"));
    }
    let mut points: Vec<BallPoint> = Vec::new();
    let mut shell: Vec<u32> = Vec::new();
    for j in 1..=shells {
        let r = 1.0 - 0.5f64.powi(j as i32);
        // hyperbolic size of the shell ≍ (2^j/δ)^n per unit of δ-ball; oversample
        let want = (4.0 * core::f64::consts::PI * 2f64.powi(j as i32) / delta).powi(n as i32) * 4.0 + 16.0;
        let candidates = (want as usize).min(LATTICE_MAX_CANDIDATES);
        let mut g = rng(seed, u64::from(j));
        let start = points.len();
        for _ in 0..candidates {
            let z: Vec<C64> = sphere_point(&mut g, n).into_iter().map(|c| c * r).collect();
            let mut ok = true;
            for (i, p) in points.iter().enumerate() {
                let d = bergman_dist(&z, p.coords())?;
                let need = if i >= start { delta } else { delta / 2.0 };
                if d < need {
                    ok = false;
                    break;
                }
            }
            if ok {
                points.push(BallPoint::new(z)?);
                shell.push(j);
            }
        }
    }
    let lat = Lattice { points, shell, separation: delta, shells, seed };
    if lat.min_separation()? < delta / 2.0 {
        return Err(Error::InvalidParams("lattice separation check failed"));
    }
    Ok(lat)
}

/// `Σ_k c_k (1−|a_k|²)^{b−(n+1+α)/p}(1−⟨z,a_k⟩)^{−b}`.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomicSum {
    pub sp: SpaceParams,
    pub b: f64,
    /// Atom centres with the already normalized coefficients.
    pub terms: Vec<(BallPoint, C64)>,
    /// `Σ |c_k|^p`
    pub lp_sum: f64,
}

impl AtomicSum {
    pub fn eval(&self, z: &[C64]) -> Result<C64> {
        self.radial(0, z)
    }

    /// `R^k f(z)`
    pub fn radial(&self, k: u32, z: &[C64]) -> Result<C64> {
        let mut acc = C64::new(0.0, 0.0);
        for (a, c) in &self.terms {
            acc += c * radial_power_of_kernel(self.b, k, herm_pair(z, a.coords())?);
        }
        Ok(acc)
    }

    /// Quasi-norm estimate.
    pub fn norm(&self, q: &QuadratureSpec) -> Result<NormEstimate> {
        let big_n = self.sp.smallest_n();
        let f0 = self.eval(&alloc::vec![C64::new(0.0, 0.0); self.sp.n])?;
        bergman_norm_with(&self.sp, q, big_n, f0, |z| self.radial(big_n, z).unwrap_or(C64::new(f64::NAN, 0.0)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SynthesisReport {
    /// `‖f‖^p_{p,α}` (estimated).
    pub norm_pow: f64,
    pub lp_sum: f64,
    /// `norm_pow / lp_sum`, the empirical constant.
    pub ratio: f64,
}

/// Builds the atomic sum over the first `coeffs.len()` lattice points.
pub fn atomic_synthesize(coeffs: &[C64], lattice: &Lattice, b: f64, sp: &SpaceParams) -> Result<AtomicSum> {
    check_b(b, sp)?;
    if coeffs.len() > lattice.points.len() {
        return Err(Error::InvalidParams("more coefficients than lattice points"));
    }
    let mut terms = Vec::with_capacity(coeffs.len());
    let mut lp_sum = 0.0;
    for (c, a) in coeffs.iter().zip(&lattice.points) {
        if a.dim() != sp.n {
            return Err(Error::DimensionMismatch { left: sp.n, right: a.dim() });
        }
        let spec = AtomSpec { a: a.clone(), b };
        lp_sum += c.norm().powf(sp.p);
        if *c != C64::new(0.0, 0.0) {
            terms.push((a.clone(), c * spec.normalizer(sp)));
        }
    }
    Ok(AtomicSum { sp: *sp, b, terms, lp_sum })
}

pub fn synthesis_report(f: &AtomicSum, q: &QuadratureSpec) -> Result<SynthesisReport> {
    let norm_pow = f.norm(q)?.value.powf(f.sp.p);
    let ratio = if f.lp_sum > 0.0 { norm_pow / f.lp_sum } else { 0.0 };
    Ok(SynthesisReport { norm_pow, lp_sum: f.lp_sum, ratio })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultiplierReport {
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
}

/// `max ‖M f‖_{p,β}/‖f‖_{p,α}` over the family, `M` the multiplier `|m|^{(β−α)/p}`.
/// For `p = 2` the norms are exact.
pub fn multiplier_bound_probe(
    n: usize,
    p: f64,
    alpha: f64,
    beta: f64,
    family: &[TaylorPolynomial],
    q: &QuadratureSpec,
) -> Result<MultiplierReport> {
    let src = SpaceParams::new(n, p, alpha)?;
    let dst = SpaceParams::new(n, p, beta)?;
    let e = (beta - alpha) / p;
    let mut ratios = Vec::with_capacity(family.len());
    for f in family {
        let g = power_multiplier(f, e);
        let (nf, ng) = if p == 2.0 {
            (bergman_norm_p2(f, &src)?, bergman_norm_p2(&g, &dst)?)
        } else {
            (bergman_norm(f, &src, q)?.value, bergman_norm(&g, &dst, q)?.value)
        };
        if nf == 0.0 {
            continue;
        }
        ratios.push(ng / nf);
    }
    let max_ratio = ratios.iter().cloned().fold(0.0, f64::max);
    Ok(MultiplierReport { ratios, max_ratio })
}

/// `‖|m|^{(β−α)/2} z^m‖_{2,β}/‖z^m‖_{2,α}`, exact.
pub fn monomial_multiplier_ratio(m: &MultiIndex, alpha: f64, beta: f64) -> Result<f64> {
    let n = m.dim();
    let f = TaylorPolynomial::monomial(m.clone(), C64::new(1.0, 0.0), m.order())?;
    let r = multiplier_bound_probe(n, 2.0, alpha, beta, &[f], &QuadratureSpec::default())?;
    Ok(r.max_ratio)
}
