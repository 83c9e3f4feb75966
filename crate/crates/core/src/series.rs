//! Truncated multi-index power series on the unit ball.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{Float, Zero};

use crate::gamma::ln_factorial;
use crate::{Error, Result, C64};

/// Coefficients smaller than this in magnitude are not stored.
pub const DROP_TOL: f64 = 1e-300;
/// Points with `|z| >= 1 - BALL_MARGIN` are rejected by [`BallPoint::new`].
pub const BALL_MARGIN: f64 = 1e-14;

/// An n-tuple of nonnegative integers.
///
/// Ordered by total order `|m|` first, then lexicographically. This is the
/// summation order used everywhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(components: Vec<u32>) -> Self {
        MultiIndex(components)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The unit index `e_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut c = vec![0; n];
        c[i] = 1;
        MultiIndex(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    /// `|m|`
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn ln_factorial(&self) -> f64 {
        self.0.iter().map(|&k| ln_factorial(k)).sum()
    }

    /// `m! = Π m_i!`, exact for `|m| <= 20`.
    pub fn factorial(&self) -> f64 {
        if self.order() <= 20 {
            self.0.iter().map(|&k| factorial_u64(k)).product::<u64>() as f64
        } else {
            self.ln_factorial().exp()
        }
    }

    /// `|m|!/m!`, exact for `|m| <= 20`.
    pub fn multinomial(&self) -> f64 {
        let total = self.order();
        if total <= 20 {
            let den: u64 = self.0.iter().map(|&k| factorial_u64(k)).product();
            return (factorial_u64(total) / den) as f64;
        }
        // product of binomials C(m_1+..+m_i, m_i)
        let mut acc = 1.0;
        let mut partial = 0u32;
        for &k in &self.0 {
            partial += k;
            let small = k.min(partial - k);
            for i in 1..=small {
                acc = acc * f64::from(partial - small + i) / f64::from(i);
            }
        }
        acc
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if self.dim() != other.dim() {
            return None;
        }
        let mut c = Vec::with_capacity(self.dim());
        for (a, b) in self.0.iter().zip(&other.0) {
            c.push(a.checked_sub(*b)?);
        }
        Some(MultiIndex(c))
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `z^m`
    pub fn monomial_value(&self, z: &[C64]) -> C64 {
        self.0.iter().zip(z).fold(C64::new(1.0, 0.0), |acc, (&k, zi)| acc * zi.powu(k))
    }

    /// All indices of dimension `n` and order `k`, lexicographically ascending.
    pub fn of_order(n: usize, k: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fill_of_order(&mut cur, 0, k, &mut out);
        out
    }

    /// All indices with `|m| <= degree`, in summation order.
    pub fn up_to(n: usize, degree: u32) -> Vec<MultiIndex> {
        (0..=degree).flat_map(|k| MultiIndex::of_order(n, k)).collect()
    }
}

fn fill_of_order(cur: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    let n = cur.len();
    if n == 0 {
        return;
    }
    if pos == n - 1 {
        cur[pos] = remaining;
        out.push(MultiIndex(cur.clone()));
        return;
    }
    for v in 0..=remaining {
        cur[pos] = v;
        fill_of_order(cur, pos + 1, remaining - v, out);
    }
}

fn factorial_u64(k: u32) -> u64 {
    (1..=u64::from(k)).product()
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order().cmp(&other.order()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

/// `⟨z,w⟩ = Σ z_i conj(w_i)`. Works for boundary points too.
pub fn herm_pair(z: &[C64], w: &[C64]) -> Result<C64> {
    if z.len() != w.len() {
        return Err(Error::DimensionMismatch { left: z.len(), right: w.len() });
    }
    Ok(z.iter().zip(w).map(|(a, b)| a * b.conj()).sum())
}

pub(crate) fn norm_sqr(z: &[C64]) -> f64 {
    z.iter().map(|c| c.norm_sqr()).sum()
}

/// A point of the open unit ball.
#[derive(Clone, Debug, PartialEq)]
pub struct BallPoint(Vec<C64>);

impl BallPoint {
    pub fn new(coords: Vec<C64>) -> Result<Self> {
        let r = norm_sqr(&coords).sqrt();
        if coords.is_empty() || !r.is_finite() || r >= 1.0 - BALL_MARGIN {
            return Err(Error::OutsideBall { norm: r });
        }
        Ok(BallPoint(coords))
    }

    /// Caller guarantees `|z| < 1`.
    pub(crate) fn new_unchecked(coords: Vec<C64>) -> Self {
        BallPoint(coords)
    }

    pub fn origin(n: usize) -> Self {
        BallPoint(vec![C64::zero(); n])
    }

    /// `x·e_1` in dimension `n`.
    pub fn on_axis(n: usize, x: C64) -> Result<Self> {
        let mut c = vec![C64::zero(); n];
        c[0] = x;
        BallPoint::new(c)
    }

    pub fn coords(&self) -> &[C64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.0)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }
}

/// A holomorphic function on `B_n` truncated at total degree `D`.
///
/// Invariants: every key has dimension `n` and order `<= degree`; absent keys
/// are zero coefficients; no stored coefficient is below [`DROP_TOL`].
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorPolynomial {
    n: usize,
    degree: u32,
    coeffs: BTreeMap<MultiIndex, C64>,
}

impl TaylorPolynomial {
    pub fn zero(n: usize, degree: u32) -> Self {
        TaylorPolynomial { n, degree, coeffs: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: C64, degree: u32) -> Self {
        let mut f = Self::zero(n, degree);
        f.put(MultiIndex::zero(n), c);
        f
    }

    pub fn monomial(m: MultiIndex, c: C64, degree: u32) -> Result<Self> {
        let mut f = Self::zero(m.dim(), degree);
        f.add_term(m, c)?;
        Ok(f)
    }

    /// Builds a series from `(m, a_m)` pairs; repeated indices are summed.
    pub fn from_terms<I>(n: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, C64)>,
    {
        let mut f = Self::zero(n, degree);
        for (m, c) in terms {
            f.add_term(m, c)?;
        }
        Ok(f)
    }

    /// Adds `c z^m`, validating arity and order.
    pub fn add_term(&mut self, m: MultiIndex, c: C64) -> Result<()> {
        if m.dim() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: m.dim() });
        }
        if m.order() > self.degree {
            return Err(Error::DegreeExceeded { order: m.order(), degree: self.degree });
        }
        let cur = self.coefficient(&m);
        self.put(m, cur + c);
        Ok(())
    }

    fn put(&mut self, m: MultiIndex, c: C64) {
        if c.norm() < DROP_TOL {
            self.coeffs.remove(&m);
        } else {
            self.coeffs.insert(m, c);
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coefficient(&self, m: &MultiIndex) -> C64 {
        self.coeffs.get(m).copied().unwrap_or_else(C64::zero)
    }

    /// Stored terms in summation order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &C64)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest order with a nonzero coefficient.
    pub fn max_order(&self) -> u32 {
        self.coeffs.keys().next_back().map_or(0, |m| m.order())
    }

    /// `f(0)`
    pub fn value_at_origin(&self) -> C64 {
        self.coefficient(&MultiIndex::zero(self.n))
    }

    /// `f_k`, the homogeneous part of order `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        TaylorPolynomial {
            n: self.n,
            degree: self.degree,
            coeffs: self.coeffs.iter().filter(|(m, _)| m.order() == k).map(|(m, c)| (m.clone(), *c)).collect(),
        }
    }

    /// Re-truncates (or extends) to a new degree.
    pub fn truncate(&self, degree: u32) -> Self {
        TaylorPolynomial {
            n: self.n,
            degree,
            coeffs: self.coeffs.iter().filter(|(m, _)| m.order() <= degree).map(|(m, c)| (m.clone(), *c)).collect(),
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.truncate(self.degree.max(other.degree));
        for (m, c) in &other.coeffs {
            let cur = out.coefficient(m);
            out.put(m.clone(), cur + c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: C64) -> Self {
        self.map_terms(|_, a| a * c)
    }

    /// Cauchy product, discarding every term of total order above `degree`.
    pub fn multiply_truncated(&self, other: &Self, degree: u32) -> Result<Self> {
        self.check_dim(other)?;
        let mut acc: BTreeMap<MultiIndex, C64> = BTreeMap::new();
        for (m1, c1) in &self.coeffs {
            let o1 = m1.order();
            if o1 > degree {
                break;
            }
            for (m2, c2) in &other.coeffs {
                if o1 + m2.order() > degree {
                    break;
                }
                *acc.entry(m1.plus(m2)).or_insert_with(C64::zero) += c1 * c2;
            }
        }
        let mut out = Self::zero(self.n, degree);
        for (m, c) in acc {
            out.put(m, c);
        }
        Ok(out)
    }

    /// Applies `a_m ↦ g(m, a_m)` to every stored term.
    pub fn map_terms<F: Fn(&MultiIndex, C64) -> C64>(&self, g: F) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        for (m, c) in &self.coeffs {
            out.put(m.clone(), g(m, *c));
        }
        out
    }

    /// Multiplies the homogeneous part of order `k` by `g(k)`.
    pub fn map_orders<F: Fn(u32) -> f64>(&self, g: F) -> Self {
        self.map_terms(|m, c| c * g(m.order()))
    }

    /// `f(z)` for a ball point.
    pub fn evaluate(&self, z: &BallPoint) -> Result<C64> {
        self.evaluate_at(z.coords())
    }

    /// `f(z)` at an arbitrary point of `C^n` (e.g. on the sphere); the sum is finite.
    pub fn evaluate_at(&self, z: &[C64]) -> Result<C64> {
        if z.len() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: z.len() });
        }
        let top = self.max_order() as usize;
        let powers: Vec<Vec<C64>> = z.iter().map(|&zi| powers_of(zi, top)).collect();
        let mut sum = C64::zero();
        for (m, c) in &self.coeffs {
            let mut term = *c;
            for (i, &k) in m.components().iter().enumerate() {
                if k > 0 {
                    term *= powers[i][k as usize];
                }
            }
            sum += term;
        }
        Ok(sum)
    }
}

/// `[1, x, x², …, x^top]`
pub(crate) fn powers_of(x: C64, top: usize) -> Vec<C64> {
    let mut p = Vec::with_capacity(top + 1);
    let mut cur = C64::new(1.0, 0.0);
    p.push(cur);
    for _ in 0..top {
        cur *= x;
        p.push(cur);
    }
    p
}

/// Expansion of `Σ_k c_k ⟨z,w⟩^k` in `z`: the coefficient of `z^m` is
/// `coef(|m|, |m|!/m!)·conj(w)^m`.
pub fn radial_kernel_series_with<F>(w: &BallPoint, degree: u32, coef: F) -> TaylorPolynomial
where
    F: Fn(u32, f64) -> f64,
{
    let n = w.dim();
    let top = degree as usize;
    let conj_pows: Vec<Vec<C64>> = w.coords().iter().map(|wi| powers_of(wi.conj(), top)).collect();
    let support: Vec<bool> = w.coords().iter().map(|wi| !wi.is_zero()).collect();
    let mut out = TaylorPolynomial::zero(n, degree);
    for k in 0..=degree {
        for m in MultiIndex::of_order(n, k) {
            if m.components().iter().zip(&support).any(|(&e, &s)| e > 0 && !s) {
                continue;
            }
            let mut wm = C64::new(1.0, 0.0);
            for (i, &e) in m.components().iter().enumerate() {
                if e > 0 {
                    wm *= conj_pows[i][e as usize];
                }
            }
            let a = coef(k, m.multinomial());
            out.put(m, wm * a);
        }
    }
    out
}

/// Expansion of `Σ_k coeffs[k]·⟨z,w⟩^k`, truncated at `degree`; missing coefficients are 0.
pub fn radial_kernel_series(coeffs: &[f64], w: &BallPoint, degree: u32) -> TaylorPolynomial {
    radial_kernel_series_with(w, degree, |k, mult| coeffs.get(k as usize).copied().unwrap_or(0.0) * mult)
}

/// Binomial-series coefficients `Γ(c+k)/(k!Γ(c))` for `k = 0..=degree`.
///
/// Computed by the recurrence `(c+k−1)/k`, so a nonpositive integer `c`
/// terminates the series exactly.
pub fn binomial_series_coeffs(c: f64, degree: u32) -> Vec<f64> {
    let mut out = Vec::with_capacity(degree as usize + 1);
    let mut a = 1.0;
    out.push(a);
    for k in 1..=degree {
        a = a * (c + f64::from(k) - 1.0) / f64::from(k);
        out.push(a);
    }
    out
}

/// Truncated expansion of `(1−⟨z,w⟩)^{−c}` in `z`.
pub fn power_kernel_series(c: f64, w: &BallPoint, degree: u32) -> Result<TaylorPolynomial> {
    if !c.is_finite() {
        return Err(Error::InvalidParams("kernel exponent must be finite"));
    }
    Ok(radial_kernel_series(&binomial_series_coeffs(c, degree), w, degree))
}

/// Truncated expansion of `1 + log(1/(1−⟨z,w⟩))` in `z`.
pub fn log_kernel_series(w: &BallPoint, degree: u32) -> TaylorPolynomial {
    radial_kernel_series_with(w, degree, |k, mult| if k == 0 { 1.0 } else { mult / f64::from(k) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn herm_pair_examples() {
        let z = [c(0.5, 0.0), c(0.0, 0.0)];
        let w = [c(0.0, 0.0), c(0.5, 0.0)];
        assert_eq!(herm_pair(&z, &w).unwrap(), c(0.0, 0.0));
        let z = [c(0.6, 0.0), c(0.0, 0.0)];
        assert!((herm_pair(&z, &z).unwrap() - c(0.36, 0.0)).norm() < 1e-15);
        let z = [c(0.3, 0.4), c(0.0, 0.0)];
        let w = [c(0.1, 0.0), c(0.0, 0.0)];
        assert!((herm_pair(&z, &w).unwrap() - c(0.03, 0.04)).norm() < 1e-15);
        assert!(herm_pair(&z, &w[..1]).is_err());
    }

    #[test]
    fn ordering_is_order_then_lex() {
        let all = MultiIndex::up_to(2, 2);
        let want = [[0, 0], [0, 1], [1, 0], [0, 2], [1, 1], [2, 0]];
        assert_eq!(all.len(), want.len());
        for (m, w) in all.iter().zip(want.iter()) {
            assert_eq!(m.components(), w);
        }
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
    }

    #[test]
    fn factorials() {
        assert_eq!(mi(&[3, 2]).factorial(), 12.0);
        assert_eq!(mi(&[3, 2]).multinomial(), 10.0);
        let big = mi(&[15, 20]);
        let exact = 3_247_943_160.0; // C(35,15)
        assert!((big.multinomial() / exact - 1.0).abs() < 1e-14);
        assert!((big.factorial().ln() - big.ln_factorial()).abs() < 1e-12);
    }

    #[test]
    fn ball_point_rejects_boundary() {
        assert!(BallPoint::new(vec![c(1.0, 0.0)]).is_err());
        assert!(BallPoint::new(vec![c(1.0 - 1e-15, 0.0)]).is_err());
        assert!(BallPoint::new(vec![c(0.6, 0.0), c(0.0, 0.79)]).is_ok());
        assert!(BallPoint::new(vec![]).is_err());
    }

    #[test]
    fn add_scale_examples() {
        let z1 = TaylorPolynomial::monomial(mi(&[1, 0]), c(1.0, 0.0), 1).unwrap();
        let z2 = TaylorPolynomial::monomial(mi(&[0, 1]), c(1.0, 0.0), 3).unwrap();
        let s = z1.add(&z2).unwrap();
        assert_eq!(s.degree(), 3);
        assert_eq!(s.coefficient(&mi(&[1, 0])), c(1.0, 0.0));
        assert_eq!(s.coefficient(&mi(&[0, 1])), c(1.0, 0.0));
        assert!(z1.scale(c(0.0, 0.0)).is_empty());
        assert!(s.add(&s.scale(c(-1.0, 0.0))).unwrap().is_empty());
        let other = TaylorPolynomial::zero(3, 1);
        assert!(s.add(&other).is_err());
    }

    #[test]
    fn add_term_validates() {
        let mut f = TaylorPolynomial::zero(2, 2);
        assert!(f.add_term(mi(&[1, 2]), c(1.0, 0.0)).is_err());
        assert!(f.add_term(mi(&[1]), c(1.0, 0.0)).is_err());
        f.add_term(mi(&[1, 1]), c(1e-301, 0.0)).unwrap();
        assert!(f.is_empty());
    }

    #[test]
    fn multiply_examples() {
        let one = |n| TaylorPolynomial::constant(n, c(1.0, 0.0), 4);
        let zk = |k: u32, a: f64| TaylorPolynomial::monomial(mi(&[k]), c(a, 0.0), 4).unwrap();
        let f = one(1).add(&zk(1, 1.0)).unwrap();
        let g = one(1).add(&zk(1, -1.0)).unwrap();
        let p = f.multiply_truncated(&g, 2).unwrap();
        assert_eq!(p, one(1).add(&zk(2, -1.0)).unwrap().truncate(2));
        assert_eq!(f.multiply_truncated(&one(1), 4).unwrap(), f);
        // (1 + z + ... + z^4)(1 - z) = 1 - z^5, truncated at 4
        let mut geo = TaylorPolynomial::zero(1, 4);
        for k in 0..=4 {
            geo.add_term(mi(&[k]), c(1.0, 0.0)).unwrap();
        }
        let p = geo.multiply_truncated(&g, 4).unwrap();
        assert_eq!(p, one(1));
    }

    #[test]
    fn evaluate_examples() {
        let f = TaylorPolynomial::monomial(mi(&[1, 1]), c(1.0, 0.0), 2).unwrap();
        let z = BallPoint::new(vec![c(0.5, 0.0), c(0.0, 0.5)]).unwrap();
        assert!((f.evaluate(&z).unwrap() - c(0.0, 0.25)).norm() < 1e-16);
        let three = TaylorPolynomial::constant(2, c(3.0, 0.0), 0);
        assert_eq!(three.evaluate(&z).unwrap(), c(3.0, 0.0));
        let mut geo = TaylorPolynomial::zero(2, 50);
        for k in 0..=50 {
            geo.add_term(mi(&[k, 0]), c(1.0, 0.0)).unwrap();
        }
        let x = BallPoint::new(vec![c(0.5, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((geo.evaluate(&x).unwrap() - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn power_kernel_examples() {
        let w = BallPoint::new(vec![c(0.3, -0.2)]).unwrap();
        let f = power_kernel_series(2.0, &w, 10).unwrap();
        for k in 0..=10u32 {
            let want = w.coords()[0].conj().powu(k) * f64::from(k + 1);
            assert!((f.coefficient(&mi(&[k])) - want).norm() < 1e-15 * want.norm().max(1.0));
        }
        let w2 = BallPoint::new(vec![c(0.3, -0.2), c(0.1, 0.4)]).unwrap();
        let g = power_kernel_series(2.7, &w2, 3).unwrap();
        assert_eq!(g.coefficient(&MultiIndex::zero(2)), c(1.0, 0.0));
        let want = w2.coords()[0].conj() * 2.7;
        assert!((g.coefficient(&mi(&[1, 0])) - want).norm() < 1e-15);
        // terminating series for c = -2
        let t = power_kernel_series(-2.0, &w, 10).unwrap();
        assert_eq!(t.max_order(), 2);
        assert!(power_kernel_series(f64::NAN, &w, 3).is_err());
    }

    #[test]
    fn log_kernel_examples() {
        let w = BallPoint::new(vec![c(0.5, 0.0)]).unwrap();
        let f = log_kernel_series(&w, 8);
        assert_eq!(f.value_at_origin(), c(1.0, 0.0));
        for k in 1..=8u32 {
            let want = 0.5f64.powi(k as i32) / f64::from(k);
            assert!((f.coefficient(&mi(&[k])).re - want).abs() < 1e-17);
        }
        let w2 = BallPoint::new(vec![c(0.3, 0.1), c(0.0, 0.2)]).unwrap();
        let g = log_kernel_series(&w2, 4);
        let want = (w2.coords()[0] * w2.coords()[1]).conj();
        assert!((g.coefficient(&mi(&[1, 1])) - want).norm() < 1e-16);
    }
}
