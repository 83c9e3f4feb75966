//! Weighted Bergman spaces `A^p_α` and Lipschitz spaces `Λ_α` on the unit ball of `C^n`.
//!
//! Everything is built on truncated multi-index power series ([`TaylorPolynomial`]).
//! Operators that are diagonal in the monomial basis act on coefficients; norms use
//! closed forms where they exist and quadrature or Monte Carlo otherwise.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
// float methods resolve to std's inherent impls when std is linked
#![allow(unused_imports)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

#[cfg(test)]
extern crate std;

extern crate alloc;

pub mod classify;
pub mod error;
pub mod gamma;
pub mod geometry;
pub mod kernels;
pub mod lacunary;
pub mod quad;
pub mod radial;
pub mod sample;
pub mod series;
pub mod spaces;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
pub use series::{herm_pair, BallPoint, MultiIndex, TaylorPolynomial};

/// Default seed used by every seeded routine when the caller does not choose one.
pub const DEFAULT_SEED: u64 = 0xB16B_00B5;
