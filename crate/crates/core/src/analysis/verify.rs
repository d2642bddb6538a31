use alloc::vec::Vec;

use super::quadrature::integrate;
use super::stats::ks_statistic_sorted;
use super::{CondCdf, CDF_TOL};
use crate::sampling::{sample_sharded, Sampler};
use crate::{Error, ModelParams, Result};

/// Largest accepted `|∫₁^∞ f - 1|`.
pub const NORMALIZATION_LIMIT: f64 = 1e-6;

/// Monte Carlo versus closed-form comparison for one parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub params: ModelParams,
    pub n: usize,
    pub seed: u64,
    pub ks_statistic: f64,
    pub ks_threshold: f64,
    pub normalization_residual: f64,
    pub sampler: Sampler,
    /// `ks_statistic ≤ ks_threshold` and `normalization_residual ≤ 1e-6`.
    pub pass: bool,
}

/// `1.95 / √n`, the asymptotic KS critical value at `α ≈ 0.001`.
pub fn ks_threshold(n: usize) -> f64 {
    1.95 / libm::sqrt(n as f64)
}

/// `|∫₁^∞ f(σ) dσ - 1|`.
pub fn normalization_residual(params: &ModelParams) -> Result<f64> {
    Ok((CondCdf::new(params).mass(1.0, f64::INFINITY)? - 1.0).abs())
}

/// Mass of `f` between consecutive points: element `i` is `∫ f` over
/// `[points[i-1], points[i]]`, with `start` standing in for `points[-1]`.
///
/// `points` must be ascending and `≥ start ≥ 1`. Each element depends only
/// on its own interval, so callers may split the work and concatenate.
pub fn cdf_increments(cdf: &CondCdf, start: f64, points: &[f64]) -> Result<Vec<f64>> {
    let d = cdf.density();
    let mut prev = start;
    let mut out = Vec::with_capacity(points.len());
    for &x in points {
        if !(x >= prev) {
            return Err(Error::Domain("points must be ascending and >= 1"));
        }
        let piece = if x == prev {
            0.0
        } else {
            integrate(|s| d.cond_density_unchecked(s), prev, x, CDF_TOL)?.value
        };
        out.push(piece);
        prev = x;
    }
    Ok(out)
}

/// Assembles a report from the CDF increments at the sorted samples.
pub fn report_from_cdf(
    params: &ModelParams,
    seed: u64,
    sampler: Sampler,
    increments: &[f64],
) -> Result<VerificationReport> {
    let mut acc = 0.0;
    let cdf: Vec<f64> = increments
        .iter()
        .map(|piece| {
            acc += piece;
            acc.clamp(0.0, 1.0)
        })
        .collect();
    let ks = ks_statistic_sorted(&cdf)?;
    let n = increments.len();
    let threshold = ks_threshold(n);
    let residual = normalization_residual(params)?;
    Ok(VerificationReport {
        params: *params,
        n,
        seed,
        ks_statistic: ks,
        ks_threshold: threshold,
        normalization_residual: residual,
        sampler,
        pass: ks <= threshold && residual <= NORMALIZATION_LIMIT,
    })
}

/// Compares already drawn condition numbers against the density of `params`.
pub fn verify_samples(
    params: &ModelParams,
    mut samples: Vec<f64>,
    seed: u64,
    sampler: Sampler,
) -> Result<VerificationReport> {
    if samples.is_empty() {
        return Err(Error::Domain("no samples to verify"));
    }
    if samples.iter().any(|s| !(*s >= 1.0) || !s.is_finite()) {
        return Err(Error::Domain("condition numbers must be finite and >= 1"));
    }
    samples.sort_by(f64::total_cmp);
    let cdf = CondCdf::new(params);
    let increments = cdf_increments(&cdf, 1.0, &samples)?;
    report_from_cdf(params, seed, sampler, &increments)
}

/// Draws `n ≥ 100` condition numbers with `sampler` (sharded streams
/// `seed, seed + 1, …`) and tests them against the closed-form CDF.
pub fn verify(
    params: &ModelParams,
    n: usize,
    seed: u64,
    sampler: Sampler,
) -> Result<VerificationReport> {
    if n < 100 {
        return Err(Error::Domain("verification needs n >= 100"));
    }
    let samples = sample_sharded(params, sampler, n, seed)?;
    verify_samples(params, samples, seed, sampler)
}
