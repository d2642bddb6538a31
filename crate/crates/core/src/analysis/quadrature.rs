//! Globally adaptive 21-point Gauss–Kronrod quadrature.
//!
//! The interval with the largest error estimate is bisected until the total
//! estimate meets the tolerance. A semi-infinite range `[lo, ∞)` is mapped
//! onto `(0, 1]` with `x = lo + (1 - u)/u`, which is `x = 1/u` for `lo = 1`.
//! Kronrod nodes never touch the endpoints, so integrable endpoint
//! singularities are handled by repeated bisection.

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;

use crate::{Error, Result};

/// Absolute and relative error targets; the looser of the two wins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn relative(rel: f64) -> Self {
        Self { abs: 0.0, rel }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

/// Result of a converged integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub abs_error: f64,
    pub intervals: usize,
}

pub const MAX_INTERVALS: usize = 4_000;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// One Gauss–Kronrod 10/21 panel: `(kronrod, |kronrod - gauss|)`.
pub(crate) fn gk21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    for j in 0..10 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn adaptive<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol: Tolerance,
) -> Result<Quadrature> {
    let (value, error) = gk21(&mut f, lo, hi);
    let mut heap = BinaryHeap::new();
    heap.push(Segment {
        lo,
        hi,
        value,
        error,
    });
    let (mut total, mut total_err) = (value, error);
    loop {
        if !total.is_finite() || !total_err.is_finite() {
            return Err(Error::IntegrationFailure {
                estimate: total,
                error: total_err,
            });
        }
        if total_err <= tol.target(total) {
            break;
        }
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::IntegrationFailure {
                estimate: total,
                error: total_err,
            });
        }
        let worst = heap.pop().expect("non-empty heap");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // cannot bisect further in floating point
            return Err(Error::IntegrationFailure {
                estimate: total,
                error: total_err,
            });
        }
        let (lv, le) = gk21(&mut f, worst.lo, mid);
        let (rv, re) = gk21(&mut f, mid, worst.hi);
        total += lv + rv - worst.value;
        total_err += le + re - worst.error;
        heap.push(Segment {
            lo: worst.lo,
            hi: mid,
            value: lv,
            error: le,
        });
        heap.push(Segment {
            lo: mid,
            hi: worst.hi,
            value: rv,
            error: re,
        });
    }
    // re-sum to shed the drift of the running updates
    let (value, abs_error) = heap
        .iter()
        .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
    Ok(Quadrature {
        value,
        abs_error,
        intervals: heap.len(),
    })
}

/// Integrates `f` over `[lo, hi]`; `hi` may be `+∞`.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol: Tolerance,
) -> Result<Quadrature> {
    if !lo.is_finite() || hi.is_nan() {
        return Err(Error::Domain("integration needs a finite lower limit"));
    }
    if !(tol.abs >= 0.0 && tol.rel >= 0.0) || (tol.abs == 0.0 && tol.rel == 0.0) {
        return Err(Error::Domain("integration tolerance must be positive"));
    }
    if hi == lo {
        return Ok(Quadrature {
            value: 0.0,
            abs_error: 0.0,
            intervals: 0,
        });
    }
    if hi < lo {
        return Err(Error::Domain("integration requires lo <= hi"));
    }
    if hi == f64::INFINITY {
        adaptive(
            |u| {
                let x = lo + (1.0 - u) / u;
                f(x) / (u * u)
            },
            0.0,
            1.0,
            tol,
        )
    } else {
        adaptive(f, lo, hi, tol)
    }
}

/// `∫_lo^hi f` to relative tolerance `tol`; `hi` may be `+∞`.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    integrate(f, lo, hi, Tolerance::relative(tol)).map(|q| q.value)
}
