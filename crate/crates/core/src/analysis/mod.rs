//! Quadrature, CDFs, histograms and Kolmogorov–Smirnov comparison of Monte
//! Carlo samples against the analytic condition-number density.

mod quadrature;
mod stats;
mod verify;

pub use quadrature::{integrate, integrate_adaptive, Quadrature, Tolerance, MAX_INTERVALS};
pub use stats::{
    default_histogram_range, histogram, ks_statistic, ks_statistic_sorted, ks_two_sample,
    DensityGrid, Histogram,
};
pub use verify::{
    cdf_increments, ks_threshold, normalization_residual, report_from_cdf, verify, verify_samples,
    VerificationReport, NORMALIZATION_LIMIT,
};

use crate::densities::RatioDensity;
use crate::{Error, ModelParams, Result};

/// Quadrature tolerance for CDF pieces.
pub(crate) const CDF_TOL: Tolerance = Tolerance {
    abs: 1e-13,
    rel: 1e-10,
};

/// `F(σ) = ∫₁^σ f`, the condition-number CDF, clamped to `[0, 1]`.
pub fn cond_cdf(sigma: f64, params: &ModelParams) -> Result<f64> {
    CondCdf::new(params).cdf(sigma)
}

/// Condition-number CDF for a fixed parameter set.
#[derive(Debug, Clone, Copy)]
pub struct CondCdf {
    density: RatioDensity,
}

impl CondCdf {
    pub fn new(params: &ModelParams) -> Self {
        Self {
            density: RatioDensity::new(params),
        }
    }

    pub fn density(&self) -> &RatioDensity {
        &self.density
    }

    /// `∫_lo^hi f(σ) dσ` for `1 ≤ lo ≤ hi ≤ ∞`.
    pub fn mass(&self, lo: f64, hi: f64) -> Result<f64> {
        if !(lo >= 1.0) {
            return Err(Error::Domain("condition number must be >= 1"));
        }
        let d = &self.density;
        integrate(|s| d.cond_density_unchecked(s), lo, hi, CDF_TOL).map(|q| q.value)
    }

    pub fn cdf(&self, sigma: f64) -> Result<f64> {
        if !(sigma >= 1.0) {
            return Err(Error::Domain("condition number must be >= 1"));
        }
        if sigma == f64::INFINITY {
            return Ok(1.0);
        }
        Ok(self.mass(1.0, sigma)?.clamp(0.0, 1.0))
    }

    /// The CDF on an ascending grid, accumulated piece by piece so the
    /// result is nondecreasing. Pointwise [`CondCdf::cdf`] calls are
    /// separate quadratures and may disagree in the last few bits.
    pub fn cdf_grid(&self, grid: &[f64]) -> Result<alloc::vec::Vec<f64>> {
        let pieces = cdf_increments(self, 1.0, grid)?;
        let mut acc = 0.0;
        Ok(pieces
            .into_iter()
            .map(|p| {
                acc += p;
                acc.clamp(0.0, 1.0)
            })
            .collect())
    }
}
