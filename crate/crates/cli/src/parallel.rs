//! Multi-threaded sampling and CDF evaluation.
//!
//! Work is split exactly as the sequential core routines split it, so the
//! results are bit-identical to theirs whatever the thread count.

use std::num::NonZeroUsize;
use std::thread;

use wishcond_core::analysis::{cdf_increments, report_from_cdf, CondCdf, VerificationReport};
use wishcond_core::sampling::{sample_shard, shard_plan, DirectSampler, Sampler};
use wishcond_core::{Error, ModelParams, Result};

fn workers() -> usize {
    thread::available_parallelism().map_or(1, NonZeroUsize::get)
}

/// Same output as `sampling::sample_sharded`, with shards spread over threads.
pub fn sample(params: &ModelParams, sampler: Sampler, n: usize, seed: u64) -> Result<Vec<f64>> {
    if sampler == Sampler::DirectW {
        DirectSampler::from_params(params)?;
    }
    let plan: Vec<(u64, usize)> = shard_plan(n, seed).collect();
    let per_worker = plan.len().div_ceil(workers()).max(1);
    let parts: Vec<Result<Vec<Vec<f64>>>> = thread::scope(|scope| {
        let handles: Vec<_> = plan
            .chunks(per_worker)
            .map(|chunk| {
                scope.spawn(move || {
                    chunk
                        .iter()
                        .map(|&(stream, len)| sample_shard(params, sampler, stream, len))
                        .collect()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampling thread panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(n);
    for part in parts {
        for shard in part? {
            out.extend(shard);
        }
    }
    Ok(out)
}

/// CDF increments over ascending `points` starting at 1, computed in
/// contiguous chunks on several threads.
pub fn increments(cdf: &CondCdf, points: &[f64]) -> Result<Vec<f64>> {
    if points.is_empty() {
        return Ok(Vec::new());
    }
    let chunk = points.len().div_ceil(workers()).max(1);
    let parts: Vec<Result<Vec<f64>>> = thread::scope(|scope| {
        let handles: Vec<_> = points
            .chunks(chunk)
            .enumerate()
            .map(|(k, piece)| {
                let start = if k == 0 { 1.0 } else { points[k * chunk - 1] };
                scope.spawn(move || cdf_increments(cdf, start, piece))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("quadrature thread panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(points.len());
    for part in parts {
        out.extend(part?);
    }
    Ok(out)
}

/// Threaded counterpart of `analysis::verify_samples`.
pub fn verify_samples(
    params: &ModelParams,
    mut samples: Vec<f64>,
    seed: u64,
    sampler: Sampler,
) -> Result<VerificationReport> {
    if samples.is_empty() {
        return Err(Error::Domain("no samples to verify"));
    }
    if samples.iter().any(|s| !s.is_finite() || *s < 1.0) {
        return Err(Error::Domain("condition numbers must be finite and >= 1"));
    }
    samples.sort_by(f64::total_cmp);
    let pieces = increments(&CondCdf::new(params), &samples)?;
    report_from_cdf(params, seed, sampler, &pieces)
}

/// Threaded counterpart of `analysis::verify`.
pub fn verify(
    params: &ModelParams,
    n: usize,
    seed: u64,
    sampler: Sampler,
) -> Result<VerificationReport> {
    if n < 100 {
        return Err(Error::Domain("verification needs n >= 100"));
    }
    let samples = sample(params, sampler, n, seed)?;
    verify_samples(params, samples, seed, sampler)
}

#[cfg(test)]
mod tests {
    use super::*;
    use wishcond_core::analysis;
    use wishcond_core::sampling::sample_sharded;

    #[test]
    fn matches_sequential() {
        let p = ModelParams::new(3, 1.5, 2.0, -3.0).unwrap();
        let n = 100_000;
        let seq = sample_sharded(&p, Sampler::ChiPipeline, n, 4).unwrap();
        let par = sample(&p, Sampler::ChiPipeline, n, 4).unwrap();
        assert_eq!(seq, par);
        let a =
            analysis::verify_samples(&p, seq[..5000].to_vec(), 4, Sampler::ChiPipeline).unwrap();
        let b = verify_samples(&p, par[..5000].to_vec(), 4, Sampler::ChiPipeline).unwrap();
        assert_eq!(a, b);
    }
}
