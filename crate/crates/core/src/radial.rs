//! Coefficient multipliers: radial derivatives, fractional operators, partial
//! derivatives and the power multipliers `|m|^e`.

use alloc::vec::Vec;

use num_traits::Float;

use crate::gamma::{frac_coeff, FracOpParams};
use crate::series::{MultiIndex, TaylorPolynomial};
use crate::Result;

/// `R f`: the order-`j` part is multiplied by `j`.
pub fn radial_derivative(f: &TaylorPolynomial) -> TaylorPolynomial {
    radial_power(f, 1)
}

/// `R^k f`. For `k = 0` this is the identity.
pub fn radial_power(f: &TaylorPolynomial, k: u32) -> TaylorPolynomial {
    if k == 0 {
        return f.clone();
    }
    f.map_orders(|j| f64::from(j).powi(k as i32))
}

/// `R^{−k} f`: `f_j ↦ j^{−k} f_j` for `j ≥ 1`, constant term dropped.
pub fn radial_antipower(f: &TaylorPolynomial, k: u32) -> TaylorPolynomial {
    f.map_orders(|j| if j == 0 { 0.0 } else { f64::from(j).powi(-(k as i32)) })
}

/// `R^t f = Σ_{j≥1} j^t f_j`; the constant term survives only for `t = 0`.
pub fn frac_radial(f: &TaylorPolynomial, t: f64) -> TaylorPolynomial {
    if t == 0.0 {
        return f.clone();
    }
    f.map_orders(|j| if j == 0 { 0.0 } else { f64::from(j).powf(t) })
}

/// `R^{s,t} f`
pub fn rst(f: &TaylorPolynomial, params: &FracOpParams) -> Result<TaylorPolynomial> {
    let table = symbols(params, f.max_order())?;
    Ok(f.map_orders(|j| table[j as usize]))
}

/// `R_{s,t} f`, the inverse of [`rst`].
pub fn rst_inv(f: &TaylorPolynomial, params: &FracOpParams) -> Result<TaylorPolynomial> {
    let table = symbols(params, f.max_order())?;
    Ok(f.map_orders(|j| 1.0 / table[j as usize]))
}

fn symbols(params: &FracOpParams, top: u32) -> Result<Vec<f64>> {
    (0..=top).map(|k| frac_coeff(params, k)).collect()
}

/// `∂^m f`; the truncation degree drops by `|m|`.
pub fn partial_derivative(f: &TaylorPolynomial, m: &MultiIndex) -> Result<TaylorPolynomial> {
    let degree = f.degree().saturating_sub(m.order());
    let mut terms = Vec::new();
    for (idx, c) in f.terms() {
        if let Some(rest) = idx.checked_sub(m) {
            let mut factor = 1.0;
            for (&a, &d) in idx.components().iter().zip(m.components()) {
                for i in 0..d {
                    factor *= f64::from(a - i);
                }
            }
            terms.push((rest, c * factor));
        }
    }
    TaylorPolynomial::from_terms(f.dim(), degree, terms)
}

/// `f(0) + Σ_{|m|>0} |m|^e a_m z^m`
pub fn power_multiplier(f: &TaylorPolynomial, e: f64) -> TaylorPolynomial {
    if e == 0.0 {
        return f.clone();
    }
    f.map_orders(|j| if j == 0 { 1.0 } else { f64::from(j).powf(e) })
}

/// `z_i f`, raising the truncation degree by one.
pub fn multiply_by_coordinate(f: &TaylorPolynomial, i: usize) -> Result<TaylorPolynomial> {
    let e = MultiIndex::unit(f.dim(), i);
    TaylorPolynomial::from_terms(f.dim(), f.degree() + 1, f.terms().map(|(m, c)| (m.plus(&e), *c)))
}

/// `Σ_i z_i ∂f/∂z_i`, the radial derivative computed through partial derivatives.
pub fn euler_radial_derivative(f: &TaylorPolynomial) -> Result<TaylorPolynomial> {
    let mut acc = TaylorPolynomial::zero(f.dim(), f.degree());
    for i in 0..f.dim() {
        let d = partial_derivative(f, &MultiIndex::unit(f.dim(), i))?;
        acc = acc.add(&multiply_by_coordinate(&d, i)?)?;
    }
    Ok(acc.truncate(f.degree()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;
    use alloc::vec;

    fn mono(v: &[u32], a: f64, d: u32) -> TaylorPolynomial {
        TaylorPolynomial::monomial(MultiIndex::new(v.to_vec()), C64::new(a, 0.0), d).unwrap()
    }

    #[test]
    fn radial_power_examples() {
        assert_eq!(radial_derivative(&mono(&[1, 2], 1.0, 3)), mono(&[1, 2], 3.0, 3));
        assert!(radial_derivative(&mono(&[0], 5.0, 0)).is_empty());
        let f = mono(&[1], 1.0, 2).add(&mono(&[2], 1.0, 2)).unwrap();
        let want = mono(&[1], 1.0, 2).add(&mono(&[2], 4.0, 2)).unwrap();
        assert_eq!(radial_power(&f, 2), want);
    }

    #[test]
    fn antipower_examples() {
        let f = mono(&[0], 2.0, 3).add(&mono(&[3], 1.0, 3)).unwrap();
        let back = radial_antipower(&radial_power(&f, 2), 2);
        assert_eq!(back, mono(&[3], 1.0, 3));
        assert_eq!(radial_antipower(&mono(&[3], 1.0, 3), 2), mono(&[3], 1.0 / 9.0, 3));
        assert!(radial_antipower(&mono(&[0], 7.0, 0), 1).is_empty());
    }

    #[test]
    fn frac_radial_examples() {
        let f = mono(&[0, 0], 1.5, 4).add(&mono(&[1, 2], 2.0, 4)).unwrap();
        assert_eq!(frac_radial(&f, 1.0), radial_derivative(&f));
        assert_eq!(frac_radial(&mono(&[4], 1.0, 4), 0.5), mono(&[4], 2.0, 4));
        let g = frac_radial(&frac_radial(&f, 1.0), -1.0);
        assert_eq!(g, mono(&[1, 2], 2.0, 4));
        assert_eq!(frac_radial(&f, 0.0), f);
    }

    #[test]
    fn rst_examples() {
        let p = FracOpParams::new(1, 0.0, 1.0).unwrap();
        assert_eq!(rst(&mono(&[0], 1.0, 5), &p).unwrap(), mono(&[0], 1.0, 5));
        for k in 1..8u32 {
            let got = rst(&mono(&[k], 1.0, 8), &p).unwrap();
            let want = (f64::from(k) + 2.0) / 2.0;
            assert!((got.coefficient(&MultiIndex::new(vec![k])).re - want).abs() < 1e-13);
        }
        let q = FracOpParams::new(2, -0.4, 1.3).unwrap();
        let f = mono(&[1, 2], 0.7, 5).add(&mono(&[2, 2], -1.1, 5)).unwrap();
        let back = rst_inv(&rst(&f, &q).unwrap(), &q).unwrap();
        for (m, c) in f.terms() {
            assert!((back.coefficient(m) - c).norm() < 1e-12);
        }
        assert!(rst(&f, &FracOpParams { n: 1, s: -2.0, t: 0.0 }).is_err());
    }

    #[test]
    fn partial_examples() {
        let d = partial_derivative(&mono(&[2, 1], 1.0, 3), &MultiIndex::new(vec![1, 0])).unwrap();
        assert_eq!(d, mono(&[1, 1], 2.0, 2));
        let d = partial_derivative(&mono(&[1, 0], 1.0, 3), &MultiIndex::new(vec![0, 2])).unwrap();
        assert!(d.is_empty());
    }

    #[test]
    fn euler_identity() {
        let f = mono(&[0, 0], 1.0, 4).add(&mono(&[1, 3], 2.0, 4)).unwrap().add(&mono(&[2, 1], -3.0, 4)).unwrap();
        assert_eq!(euler_radial_derivative(&f).unwrap(), radial_derivative(&f));
    }

    #[test]
    fn power_multiplier_examples() {
        let f = mono(&[0], 3.0, 4).add(&mono(&[4], 1.0, 4)).unwrap();
        assert_eq!(power_multiplier(&f, 0.0), f);
        let g = power_multiplier(&f, -1.0);
        assert_eq!(g, mono(&[0], 3.0, 4).add(&mono(&[4], 0.25, 4)).unwrap());
    }
}
