//! Lacunary series: membership decided from symbolic block growth.
//!
//! For orders `m_k ≍ λ^k` every quantity in the criteria has the form
//! `ln|term_k| = A·M ln M + B·M + C·k + D·ln k + O(1)` with `M = m_k`.
//! Gamma factors enter through Stirling's formula, powers of `M` through
//! `ln M = k ln λ + O(1)`. The leading nonzero coefficient decides.

use alloc::vec::Vec;

use num_traits::Float;

use crate::series::MultiIndex;
use crate::spaces::SpaceParams;
use crate::{Error, Result};

const ZERO_TOL: f64 = 1e-12;

/// Orders of a lacunary series.
#[derive(Clone, Debug, PartialEq)]
pub enum Orders {
    /// Finitely many strictly increasing orders (possibly none).
    Finite(Vec<u64>),
    /// `m_k = first·ratio^{k−1}`, `k ≥ 1`.
    Geometric { first: u64, ratio: f64 },
}

impl Orders {
    pub fn powers_of_two() -> Self {
        Orders::Geometric { first: 2, ratio: 2.0 }
    }

    /// Checks `inf m_{k+1}/m_k > 1`.
    pub fn validate(&self) -> Result<()> {
        match self {
            Orders::Finite(v) => {
                if v.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::NotLacunary);
                }
                Ok(())
            }
            Orders::Geometric { first, ratio } => {
                if *first == 0 || !(*ratio > 1.0) || !ratio.is_finite() {
                    return Err(Error::NotLacunary);
                }
                Ok(())
            }
        }
    }

    fn ln_ratio(&self) -> f64 {
        match self {
            Orders::Finite(_) => 0.0,
            Orders::Geometric { ratio, .. } => ratio.ln(),
        }
    }
}

/// Asymptotic `ln` of a block quantity: `A·M ln M + B·M + C·k + D·ln k`.
///
/// `d = None` records that the polynomial correction is unknown.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Growth {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: Option<f64>,
}

impl Default for Growth {
    fn default() -> Self {
        Growth { a: 0.0, b: 0.0, c: 0.0, d: Some(0.0) }
    }
}

impl Growth {
    /// Constant growth (bounded above and below).
    pub fn unit() -> Self {
        Self::default()
    }

    /// `× base^k`
    pub fn geometric(mut self, base: f64) -> Self {
        self.c += base.ln();
        self
    }

    /// `× M^e`, given `ln M = k ln λ`.
    pub fn power_of_order(mut self, e: f64, orders: &Orders) -> Self {
        self.c += e * orders.ln_ratio();
        self
    }

    /// `× k^e`
    pub fn power_of_index(mut self, e: f64) -> Self {
        self.d = self.d.map(|d| d + e);
        self
    }

    /// `× exp(b·M)`
    pub fn exp_of_order(mut self, b: f64) -> Self {
        self.b += b;
        self
    }

    /// `× Γ(uM + v)^e` with `u > 0`.
    pub fn gamma_factor(mut self, u: f64, v: f64, e: f64, orders: &Orders) -> Self {
        // ln Γ(uM+v) = uM ln M + uM(ln u − 1) + (v − 1/2) ln M + O(1)
        self.a += e * u;
        self.b += e * u * (u.ln() - 1.0);
        self.c += e * (v - 0.5) * orders.ln_ratio();
        self
    }

    /// Polynomial correction unknown.
    pub fn unknown_polynomial(mut self) -> Self {
        self.d = None;
        self
    }

    /// `× other`
    pub fn times(mut self, other: Growth) -> Self {
        self.a += other.a;
        self.b += other.b;
        self.c += other.c;
        self.d = match (self.d, other.d) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        };
        self
    }

    /// `(·)^p`
    pub fn pow(self, p: f64) -> Self {
        Growth { a: self.a * p, b: self.b * p, c: self.c * p, d: self.d.map(|d| d * p) }
    }

    /// Sign of the leading coefficient among `A, B, C` (0 if all vanish).
    fn leading_sign(&self) -> i32 {
        for x in [self.a, self.b, self.c] {
            if x > ZERO_TOL {
                return 1;
            }
            if x < -ZERO_TOL {
                return -1;
            }
        }
        0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Member,
    NonMember,
    Inconclusive,
}

/// Convergence of `Σ_k exp(growth)`.
pub fn series_converges(orders: &Orders, g: &Growth) -> Result<Decision> {
    orders.validate()?;
    if let Orders::Finite(_) = orders {
        return Ok(Decision::Member);
    }
    Ok(match g.leading_sign() {
        -1 => Decision::Member,
        1 => Decision::NonMember,
        _ => match g.d {
            None => Decision::Inconclusive,
            Some(d) if d < -1.0 - ZERO_TOL => Decision::Member,
            Some(d) if d > -1.0 + ZERO_TOL => Decision::NonMember,
            // Σ 1/k diverges
            Some(_) => Decision::NonMember,
        },
    })
}

/// Membership in `A^p_α` via `Σ m_k^{−1−α}‖f_{m_k}‖_{H^p}^p < ∞`, given the growth of `‖f_{m_k}‖_{H^p}`.
pub fn lacunary_bergman_test(orders: &Orders, hp_norm: &Growth, sp: &SpaceParams) -> Result<Decision> {
    let term = hp_norm.pow(sp.p).power_of_order(-1.0 - sp.alpha, orders);
    series_converges(orders, &term)
}

/// Direction of monomial blocks `m_k = (d_1 M, …, d_n M)`, `Σ d_i = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialShape(pub Vec<f64>);

impl MonomialShape {
    /// Pure powers of `z_1`.
    pub fn first_axis(n: usize) -> Self {
        let mut d = alloc::vec![0.0; n];
        d[0] = 1.0;
        MonomialShape(d)
    }

    fn validate(&self, n: usize) -> Result<()> {
        let s: f64 = self.0.iter().sum();
        if self.0.len() != n || self.0.iter().any(|&d| d < 0.0) || (s - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParams("monomial shape must be n nonnegative fractions summing to 1"));
        }
        Ok(())
    }

    /// Growth of `‖ζ^{m_k}‖_{H^p}^p = (n−1)!Π Γ(d_i M p/2 + 1)/Γ(Mp/2 + n)`.
    pub fn hardy_pow_growth(&self, p: f64, orders: &Orders) -> Growth {
        let n = self.0.len() as f64;
        let mut g = Growth::unit();
        for &d in &self.0 {
            if d > 0.0 {
                g = g.gamma_factor(d * p / 2.0, 1.0, 1.0, orders);
            }
        }
        g.gamma_factor(p / 2.0, n, -1.0, orders)
    }

    /// Growth of the sup of `|ζ^{m_k}|` on the sphere: `sqrt(Π m_i^{m_i}/M^M)`.
    pub fn sup_growth(&self) -> Growth {
        let s: f64 = self.0.iter().filter(|&&d| d > 0.0).map(|&d| d * d.ln()).sum();
        Growth::unit().exp_of_order(0.5 * s)
    }
}

/// `sqrt(Π m_i^{m_i}/|m|^{|m|})`, the sup of `|ζ^m|` over the unit sphere.
pub fn monomial_sup_norm(m: &MultiIndex) -> f64 {
    let total = f64::from(m.order());
    if total == 0.0 {
        return 1.0;
    }
    let mut l = 0.0;
    for &mi in m.components() {
        if mi > 0 {
            let x = f64::from(mi);
            l += x * (x / total).ln();
        }
    }
    (0.5 * l).exp()
}

/// Membership test for blocks `a_k ζ^{m_k}`, given the growth of `|a_k|`.
pub fn lacunary_monomial_test(
    orders: &Orders,
    shape: &MonomialShape,
    coeff: &Growth,
    sp: &SpaceParams,
) -> Result<Decision> {
    shape.validate(sp.n)?;
    let term = coeff.pow(sp.p).times(shape.hardy_pow_growth(sp.p, orders)).power_of_order(-1.0 - sp.alpha, orders);
    series_converges(orders, &term)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LipschitzClass {
    /// In `Λ_{α,0}` (hence in `Λ_α`).
    LittleOh,
    /// In `Λ_α` but not `Λ_{α,0}`.
    BigOnly,
    Neither,
    Inconclusive,
}

/// Classifies by `m_k^α·‖f_{m_k}‖_∞`, given the growth of the sup norms.
pub fn lacunary_lipschitz_test(orders: &Orders, sup_norm: &Growth, alpha: f64) -> Result<LipschitzClass> {
    orders.validate()?;
    if let Orders::Finite(_) = orders {
        return Ok(LipschitzClass::LittleOh);
    }
    let t = sup_norm.power_of_order(alpha, orders);
    Ok(match t.leading_sign() {
        -1 => LipschitzClass::LittleOh,
        1 => LipschitzClass::Neither,
        _ => match t.d {
            None => LipschitzClass::Inconclusive,
            Some(d) if d < -ZERO_TOL => LipschitzClass::LittleOh,
            Some(d) if d > ZERO_TOL => LipschitzClass::Neither,
            Some(_) => LipschitzClass::BigOnly,
        },
    })
}

/// Monomial blocks `a_k ζ^{m_k}`; the sup norm carries the radical.
pub fn lacunary_monomial_lipschitz_test(
    orders: &Orders,
    shape: &MonomialShape,
    coeff: &Growth,
    alpha: f64,
) -> Result<LipschitzClass> {
    shape.validate(shape.0.len())?;
    lacunary_lipschitz_test(orders, &coeff.times(shape.sup_growth()), alpha)
}
