//! Exact eigenvalue-ratio and condition-number distributions of indefinite
//! rank-2 Wishart matrices `A = WᵀW Σ`, where `W` is an `L × 2` matrix of
//! β-normal entries and `Σ = diag(x1, x2)` has entries of opposite sign.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the numerics:
//!
//! * [`specfun`]: log-gamma and the Gauss hypergeometric function on `z ≤ 0`.
//! * [`sampling`]: χ and gamma variates, the triangular factor `R`, the
//!   product `RΣRᵀ`, its 2×2 eigendecomposition, and a direct `W` sampler
//!   for the real, complex and quaternion cases.
//! * [`densities`]: the closed-form densities of the ratio `t = -λ2/λ1` and
//!   of the condition number `σ = max(t, 1/t)`.
//! * [`analysis`]: quadrature, CDFs, histograms, Kolmogorov–Smirnov
//!   statistics and Monte Carlo verification reports.
//!
//! IO, threading and the command-line front end live in the `wishcond` crate.
#![no_std]
#![warn(missing_debug_implementations)]
// `!(x >= lo)` is used on purpose: unlike `x < lo` it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod densities;
mod error;
mod params;
pub mod sampling;
pub mod specfun;

pub use error::{Error, Result};
pub use params::ModelParams;
