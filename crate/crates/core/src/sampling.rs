//! Random variates for the indefinite Wishart model.
//!
//! The main pipeline draws the upper-triangular factor
//!
//! ```text
//! R = [a b]   a ~ χ_{Lβ},  b ~ χ_β,  c ~ χ_{(L-1)β}
//!     [0 c]
//! ```
//!
//! forms `RΣRᵀ = [[d, f], [f, e]]` and reads the eigenvalue ratio and the
//! condition number from its closed-form 2×2 eigendecomposition. A second
//! path ([`sample_direct`]) builds `W` itself from real, complex or
//! quaternion normals and never touches the χ sampler, so the two can be
//! compared.
//!
//! Streams are ChaCha8 keyed by a 64-bit seed. Normal variates come from the
//! Ziggurat sampler of `rand_distr` and gamma variates from its
//! Marsaglia–Tsang implementation (boosted by `U^(1/shape)` below shape 1).

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::{Error, ModelParams, Result};

/// A seeded, bit-reproducible random stream.
#[derive(Debug, Clone)]
pub struct RngState {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// The seed this stream was created from.
    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl RngCore for RngState {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

/// Entries `(a, b, c)` of the upper-triangular factor `R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangularFactor {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Entries of the symmetric matrix `RΣRᵀ = [[d, f], [f, e]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricProduct {
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

/// `[[d, f], [f, e]] = Q(θ) diag(λ1, λ2) Q(θ)ᵀ` with `θ ∈ [0, π/2]` and
/// `Q(θ) = [[cos θ, -sin θ], [sin θ, cos θ]]`.
///
/// Restricting `θ` to the first quadrant fixes the labels: `λ1 < λ2` when
/// `f < 0` and `λ1 > λ2` when `f > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenDecomp {
    pub lambda1: f64,
    pub lambda2: f64,
    pub theta: f64,
}

impl EigenDecomp {
    /// Rebuilds `(d, e, f)` from the decomposition.
    pub fn reconstruct(&self) -> SymmetricProduct {
        let (s, c) = libm::sincos(self.theta);
        SymmetricProduct {
            d: self.lambda1 * c * c + self.lambda2 * s * s,
            e: self.lambda1 * s * s + self.lambda2 * c * c,
            f: s * c * (self.lambda1 - self.lambda2),
        }
    }
}

/// One draw from `Gamma(shape, 1)`.
pub fn gamma_sample(shape: f64, rng: &mut RngState) -> Result<f64> {
    let dist = Gamma::new(shape, 1.0).map_err(|_| Error::Domain("gamma shape must be positive"))?;
    Ok(dist.sample(rng))
}

/// One draw from the χ distribution with `dof` degrees of freedom
/// (non-integer `dof` allowed), as `√(2·Gamma(dof/2, 1))`.
pub fn chi_sample(dof: f64, rng: &mut RngState) -> Result<f64> {
    if !(dof > 0.0 && dof.is_finite()) {
        return Err(Error::Domain("chi degrees of freedom must be positive"));
    }
    Ok(ChiSampler::new(dof).sample(rng))
}

/// A χ distribution with its gamma parameters precomputed.
#[derive(Debug, Clone, Copy)]
struct ChiSampler(Gamma<f64>);

impl ChiSampler {
    fn new(dof: f64) -> Self {
        Self(Gamma::new(0.5 * dof, 1.0).expect("positive shape"))
    }

    fn sample(&self, rng: &mut RngState) -> f64 {
        libm::sqrt(2.0 * self.0.sample(rng))
    }
}

/// Draws `(a, b, c)` for a fixed model; reuse it when sampling many factors.
#[derive(Debug, Clone, Copy)]
pub struct TriangularSampler {
    a: ChiSampler,
    b: ChiSampler,
    c: ChiSampler,
}

impl TriangularSampler {
    pub fn new(params: &ModelParams) -> Self {
        let beta = params.beta();
        Self {
            a: ChiSampler::new(params.beta_l()),
            b: ChiSampler::new(beta),
            c: ChiSampler::new(params.beta_l() - beta),
        }
    }

    pub fn sample(&self, rng: &mut RngState) -> TriangularFactor {
        let a = self.a.sample(rng);
        let b = self.b.sample(rng);
        let c = self.c.sample(rng);
        TriangularFactor { a, b, c }
    }
}

/// `a ~ χ_{Lβ}`, `b ~ χ_β`, `c ~ χ_{(L-1)β}`, mutually independent.
pub fn sample_triangular(params: &ModelParams, rng: &mut RngState) -> TriangularFactor {
    TriangularSampler::new(params).sample(rng)
}

/// `d = a²x1 + b²x2`, `e = c²x2`, `f = b·c·x2`.
pub fn form_product(r: &TriangularFactor, params: &ModelParams) -> SymmetricProduct {
    product_with_sigma(r, params.x1(), params.x2())
}

pub(crate) fn product_with_sigma(r: &TriangularFactor, x1: f64, x2: f64) -> SymmetricProduct {
    SymmetricProduct {
        d: r.a * r.a * x1 + r.b * r.b * x2,
        e: r.c * r.c * x2,
        f: r.b * r.c * x2,
    }
}

/// Closed-form eigendecomposition of a real symmetric 2×2 matrix.
///
/// When `f = 0` exactly the labels are `λ1 = d`, `λ2 = e` with `θ = 0`.
pub fn eig_sym2(m: &SymmetricProduct) -> Result<EigenDecomp> {
    let SymmetricProduct { d, e, f } = *m;
    if !(d.is_finite() && e.is_finite() && f.is_finite()) {
        return Err(Error::Domain("matrix entries must be finite"));
    }
    if f == 0.0 {
        return Ok(EigenDecomp {
            lambda1: d,
            lambda2: e,
            theta: 0.0,
        });
    }
    let mean = 0.5 * (d + e);
    let half_gap = libm::hypot(0.5 * (d - e), f);
    // the eigenvalue of larger magnitude has no cancellation; recover the
    // other from the determinant when mean ± half_gap would cancel
    let (upper, lower) = if mean.abs() > 0.5 * half_gap {
        let det = d * e - f * f;
        if mean > 0.0 {
            let big = mean + half_gap;
            (big, det / big)
        } else {
            let big = mean - half_gap;
            (det / big, big)
        }
    } else {
        (mean + half_gap, mean - half_gap)
    };
    // sin 2θ ≥ 0 on [0, π/2], so λ1 - λ2 carries the sign of f
    let (lambda1, lambda2, two_theta) = if f > 0.0 {
        (upper, lower, libm::atan2(2.0 * f, d - e))
    } else {
        (lower, upper, libm::atan2(-2.0 * f, e - d))
    };
    Ok(EigenDecomp {
        lambda1,
        lambda2,
        theta: (0.5 * two_theta).clamp(0.0, FRAC_PI_2),
    })
}

/// `t = -λ2 / λ1`.
pub fn ratio_t(eig: &EigenDecomp) -> Result<f64> {
    if eig.lambda1 == 0.0 {
        return Err(Error::Degenerate("lambda1 is zero"));
    }
    Ok(-eig.lambda2 / eig.lambda1)
}

/// `σ = max(|λ1|, |λ2|) / min(|λ1|, |λ2|)`.
pub fn condition_number(eig: &EigenDecomp) -> Result<f64> {
    condition_from_eigenvalues(eig.lambda1, eig.lambda2)
}

pub(crate) fn condition_from_eigenvalues(l1: f64, l2: f64) -> Result<f64> {
    let (p, q) = (l1.abs(), l2.abs());
    if p == 0.0 || q == 0.0 {
        return Err(Error::Degenerate("zero eigenvalue"));
    }
    Ok(if p >= q { p / q } else { q / p })
}

/// Which generator produces the condition-number samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sampler {
    /// χ-distributed triangular factor.
    ChiPipeline,
    /// Explicit Gaussian `W` (only β ∈ {1, 2, 4}).
    DirectW,
}

impl Sampler {
    /// Stable name used in reports.
    pub fn as_str(&self) -> &'static str {
        match self {
            Sampler::ChiPipeline => "chi_pipeline",
            Sampler::DirectW => "direct_w",
        }
    }
}

/// `n` independent condition numbers from a single stream.
pub fn sample_condition(params: &ModelParams, n: usize, rng: &mut RngState) -> Vec<f64> {
    let sampler = TriangularSampler::new(params);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let r = sampler.sample(rng);
        let eig = eig_sym2(&form_product(&r, params)).expect("finite product");
        // a zero eigenvalue needs a = 0 or c = 0, which has probability zero
        if let Ok(sigma) = condition_number(&eig) {
            out.push(sigma);
        }
    }
    out
}

/// `n` independent eigenvalue ratios `t = -λ2/λ1` from a single stream.
pub fn sample_ratio(params: &ModelParams, n: usize, rng: &mut RngState) -> Vec<f64> {
    let sampler = TriangularSampler::new(params);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let r = sampler.sample(rng);
        let eig = eig_sym2(&form_product(&r, params)).expect("finite product");
        if let Ok(t) = ratio_t(&eig) {
            out.push(t);
        }
    }
    out
}

/// Normed division algebras over the reals with `dim` ∈ {1, 2, 4}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Algebra {
    Real,
    Complex,
    Quaternion,
}

impl Algebra {
    fn from_beta(beta: u32) -> Result<Self> {
        match beta {
            1 => Ok(Algebra::Real),
            2 => Ok(Algebra::Complex),
            4 => Ok(Algebra::Quaternion),
            _ => Err(Error::Unsupported(
                "direct W sampling needs beta in {1, 2, 4}",
            )),
        }
    }

    fn dim(self) -> usize {
        match self {
            Algebra::Real => 1,
            Algebra::Complex => 2,
            Algebra::Quaternion => 4,
        }
    }

    /// `conj(p) · q`; components beyond `dim` are zero.
    fn conj_mul(self, p: [f64; 4], q: [f64; 4]) -> [f64; 4] {
        let [p0, p1, p2, p3] = p;
        let [q0, q1, q2, q3] = q;
        match self {
            Algebra::Real => [p0 * q0, 0.0, 0.0, 0.0],
            Algebra::Complex => [p0 * q0 + p1 * q1, p0 * q1 - p1 * q0, 0.0, 0.0],
            // (p0 - p1 i - p2 j - p3 k)(q0 + q1 i + q2 j + q3 k)
            Algebra::Quaternion => [
                p0 * q0 + p1 * q1 + p2 * q2 + p3 * q3,
                p0 * q1 - p1 * q0 - p2 * q3 + p3 * q2,
                p0 * q2 + p1 * q3 - p2 * q0 - p3 * q1,
                p0 * q3 - p1 * q2 + p2 * q1 - p3 * q0,
            ],
        }
    }
}

/// Builds `W` from β-normal entries for β ∈ {1, 2, 4}.
#[derive(Debug, Clone, Copy)]
pub struct DirectSampler {
    rows: u32,
    algebra: Algebra,
    x1: f64,
    x2: f64,
}

impl DirectSampler {
    pub fn new(rows: u32, beta: u32, x1: f64, x2: f64) -> Result<Self> {
        let algebra = Algebra::from_beta(beta)?;
        if rows < 2 {
            return Err(Error::InvalidParams("L must be an integer >= 2"));
        }
        crate::params::check_sigma(x1, x2)?;
        Ok(Self {
            rows,
            algebra,
            x1,
            x2,
        })
    }

    pub fn from_params(params: &ModelParams) -> Result<Self> {
        let beta = params.beta();
        if libm::trunc(beta) != beta || beta > 4.0 {
            return Err(Error::Unsupported(
                "direct W sampling needs beta in {1, 2, 4}",
            ));
        }
        Self::new(params.rows(), beta as u32, params.x1(), params.x2())
    }

    /// `(a, b, c)` from the QR factorization of a fresh `W`:
    /// `a = ‖w1‖`, `b = |⟨w1, w2⟩| / ‖w1‖`, `c = √(‖w2‖² - b²)`.
    pub fn sample_factor(&self, rng: &mut RngState) -> TriangularFactor {
        let dim = self.algebra.dim();
        let mut norm1 = 0.0;
        let mut norm2 = 0.0;
        let mut inner = [0.0; 4];
        for _ in 0..self.rows {
            let mut p = [0.0; 4];
            let mut q = [0.0; 4];
            for slot in p.iter_mut().take(dim) {
                *slot = StandardNormal.sample(rng);
            }
            for slot in q.iter_mut().take(dim) {
                *slot = StandardNormal.sample(rng);
            }
            norm1 += p.iter().map(|v| v * v).sum::<f64>();
            norm2 += q.iter().map(|v| v * v).sum::<f64>();
            let pq = self.algebra.conj_mul(p, q);
            for (acc, v) in inner.iter_mut().zip(pq) {
                *acc += v;
            }
        }
        let a = libm::sqrt(norm1);
        let b = libm::sqrt(inner.iter().map(|v| v * v).sum::<f64>()) / a;
        let c = libm::sqrt((norm2 - b * b).max(0.0));
        TriangularFactor { a, b, c }
    }

    /// Eigenvalues `(λ1, λ2)` of `RΣRᵀ` for a fresh `W`.
    pub fn sample_eigenvalues(&self, rng: &mut RngState) -> (f64, f64) {
        let r = self.sample_factor(rng);
        let eig = eig_sym2(&product_with_sigma(&r, self.x1, self.x2)).expect("finite product");
        (eig.lambda1, eig.lambda2)
    }
}

/// Eigenvalues of `RΣRᵀ` where `R` comes from an explicit Gaussian `W`.
pub fn sample_direct(
    rows: u32,
    beta: u32,
    x1: f64,
    x2: f64,
    rng: &mut RngState,
) -> Result<(f64, f64)> {
    Ok(DirectSampler::new(rows, beta, x1, x2)?.sample_eigenvalues(rng))
}

/// `n` condition numbers from the direct-`W` path.
pub fn sample_condition_direct(
    params: &ModelParams,
    n: usize,
    rng: &mut RngState,
) -> Result<Vec<f64>> {
    let sampler = DirectSampler::from_params(params)?;
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (l1, l2) = sampler.sample_eigenvalues(rng);
        if let Ok(sigma) = condition_from_eigenvalues(l1, l2) {
            out.push(sigma);
        }
    }
    Ok(out)
}

/// Samples per independent stream when Monte Carlo work is sharded.
pub const SHARD_LEN: usize = 1 << 15;

/// Splits `n` draws into streams seeded `seed, seed + 1, …`.
///
/// The split depends only on `n`, never on the number of worker threads, so
/// concatenating shard outputs in order is reproducible.
pub fn shard_plan(n: usize, seed: u64) -> impl Iterator<Item = (u64, usize)> {
    let shards = n.div_ceil(SHARD_LEN);
    (0..shards).map(move |i| {
        let len = SHARD_LEN.min(n - i * SHARD_LEN);
        (seed.wrapping_add(i as u64), len)
    })
}

/// Draws one shard of condition numbers.
pub fn sample_shard(
    params: &ModelParams,
    sampler: Sampler,
    stream_seed: u64,
    len: usize,
) -> Result<Vec<f64>> {
    let mut rng = RngState::new(stream_seed);
    match sampler {
        Sampler::ChiPipeline => Ok(sample_condition(params, len, &mut rng)),
        Sampler::DirectW => sample_condition_direct(params, len, &mut rng),
    }
}

/// All shards of [`shard_plan`] drawn sequentially and concatenated.
pub fn sample_sharded(
    params: &ModelParams,
    sampler: Sampler,
    n: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if sampler == Sampler::DirectW {
        DirectSampler::from_params(params)?;
    }
    let mut out = Vec::with_capacity(n);
    for (stream, len) in shard_plan(n, seed) {
        out.extend(sample_shard(params, sampler, stream, len)?);
    }
    Ok(out)
}
