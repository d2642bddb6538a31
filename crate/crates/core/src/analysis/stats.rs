use alloc::vec::Vec;

use crate::{Error, Result};

/// Abscissae with matching non-negative density values.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    points: Vec<f64>,
    values: Vec<f64>,
}

impl DensityGrid {
    /// Requires equal lengths, strictly increasing points and values `≥ 0`.
    pub fn new(points: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if points.len() != values.len() {
            return Err(Error::Domain("grid points and values differ in length"));
        }
        if points.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Domain("grid points must be strictly increasing"));
        }
        if values.iter().any(|v| !(*v >= 0.0)) {
            return Err(Error::Domain("grid values must be non-negative"));
        }
        Ok(Self { points, values })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.points.iter().copied().zip(self.values.iter().copied())
    }
}

/// Density-normalized histogram evaluated at bin midpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub grid: DensityGrid,
    pub bin_width: f64,
    /// Samples that fell outside `[lo, hi]`.
    pub overflow: usize,
    pub total: usize,
}

/// Histogram of `samples` on `[lo, hi]` with `bins` equal bins, normalized
/// as `count / (n · width)`. A sample equal to `hi` lands in the last bin.
pub fn histogram(samples: &[f64], bins: usize, lo: f64, hi: f64) -> Result<Histogram> {
    if bins == 0 {
        return Err(Error::Domain("histogram needs at least one bin"));
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain("histogram range must satisfy lo < hi"));
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = alloc::vec![0usize; bins];
    let mut overflow = 0;
    for &x in samples {
        if !(x >= lo && x <= hi) {
            overflow += 1;
            continue;
        }
        let k = (((x - lo) / width) as usize).min(bins - 1);
        counts[k] += 1;
    }
    let n = samples.len();
    let scale = if n == 0 {
        0.0
    } else {
        1.0 / (n as f64 * width)
    };
    let points = (0..bins).map(|k| lo + (k as f64 + 0.5) * width).collect();
    let values = counts.iter().map(|&c| c as f64 * scale).collect();
    Ok(Histogram {
        grid: DensityGrid::new(points, values)?,
        bin_width: width,
        overflow,
        total: n,
    })
}

/// `[1, q99.5]`, the default plotting range for condition-number samples.
pub fn default_histogram_range(samples: &[f64]) -> Result<(f64, f64)> {
    if samples.is_empty() {
        return Err(Error::Domain("no samples"));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let idx = libm::round((sorted.len() - 1) as f64 * 0.995) as usize;
    let hi = sorted[idx];
    Ok((
        1.0,
        if hi > 1.0 {
            hi
        } else {
            1.0 + libm::sqrt(f64::EPSILON)
        },
    ))
}

/// One-sample KS statistic `sup |F_n - F|` of `samples` against `cdf`.
pub fn ks_statistic<F: FnMut(f64) -> f64>(samples: &[f64], mut cdf: F) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::Domain("KS statistic of an empty sample"));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let values: Vec<f64> = sorted.iter().map(|&x| cdf(x)).collect();
    ks_statistic_sorted(&values)
}

/// KS statistic from `F(x_(i))` evaluated at the ascending order statistics.
pub fn ks_statistic_sorted(cdf_at_sorted: &[f64]) -> Result<f64> {
    let n = cdf_at_sorted.len();
    if n == 0 {
        return Err(Error::Domain("KS statistic of an empty sample"));
    }
    let nf = n as f64;
    let d = cdf_at_sorted
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            let above = (i + 1) as f64 / nf - f;
            let below = f - i as f64 / nf;
            above.max(below)
        })
        .fold(0.0, f64::max);
    Ok(d)
}

/// Two-sample KS statistic `sup |F_a - F_b|`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Domain("KS statistic of an empty sample"));
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn ks_hand_example() {
        let d = ks_statistic(&[1.0, 2.0, 3.0], |x| (x / 4.0).clamp(0.0, 1.0)).unwrap();
        assert!((d - 0.25).abs() < 1e-15);
    }

    #[test]
    fn ks_constant_at_median() {
        let d = ks_statistic(&[2.0; 50], |x| (x / 4.0).clamp(0.0, 1.0)).unwrap();
        assert_eq!(d, 0.5);
    }

    #[test]
    fn ks_empty_is_error() {
        assert!(ks_statistic(&[], |x| x).is_err());
        assert!(ks_two_sample(&[], &[1.0]).is_err());
    }

    #[test]
    fn two_sample_examples() {
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[3.0, 4.0]).unwrap(), 1.0);
        let d = ks_two_sample(&[1.0, 2.0, 3.0, 4.0], &[2.5]).unwrap();
        assert_eq!(d, 0.5);
    }

    #[test]
    fn histogram_accounting() {
        let samples = vec![0.5, 1.0, 1.2, 1.9, 2.0, 3.5, -1.0];
        let h = histogram(&samples, 4, 1.0, 2.0).unwrap();
        assert_eq!(h.overflow, 3);
        // bins [1,1.25) [1.25,1.5) [1.5,1.75) [1.75,2]
        let counts: Vec<f64> = h.grid.values().iter().map(|v| v * 7.0 * 0.25).collect();
        assert_eq!(counts, vec![2.0, 0.0, 0.0, 2.0]);
        assert_eq!(h.grid.values()[1], 0.0);
        let mass: f64 = h.grid.values().iter().map(|v| v * h.bin_width).sum::<f64>()
            + h.overflow as f64 / h.total as f64;
        assert!((mass - 1.0).abs() < 1e-15);
        assert_eq!(h.grid.points()[0], 1.125);
    }

    #[test]
    fn histogram_rejects_bad_range() {
        assert!(histogram(&[1.0], 0, 0.0, 1.0).is_err());
        assert!(histogram(&[1.0], 3, 1.0, 1.0).is_err());
    }

    #[test]
    fn grid_invariants() {
        assert!(DensityGrid::new(vec![1.0, 2.0], vec![0.0, 1.0]).is_ok());
        assert!(DensityGrid::new(vec![1.0, 1.0], vec![0.0, 1.0]).is_err());
        assert!(DensityGrid::new(vec![1.0, 2.0], vec![0.0, -1.0]).is_err());
        assert!(DensityGrid::new(vec![1.0], vec![]).is_err());
    }
}
