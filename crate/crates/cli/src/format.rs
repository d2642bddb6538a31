use serde::{Deserialize, Serialize};
use wishcond_core::analysis::VerificationReport;

use crate::args::GridArgs;
use crate::CliError;

/// `x` with `digits` significant digits in positional notation.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding can carry into a new leading digit, e.g. 9.99… -> 10.0…
    let rounded: f64 = s.parse().unwrap_or(x);
    if rounded != 0.0 && rounded.abs().log10().floor() as i64 > magnitude && decimals > 0 {
        let decimals = decimals - 1;
        return format!("{x:.decimals$}");
    }
    s
}

/// `points` abscissae on `[min, max]`, geometric unless `linear`.
pub fn log_grid(grid: &GridArgs) -> Result<Vec<f64>, CliError> {
    let GridArgs {
        min,
        max,
        points,
        linear,
    } = *grid;
    if !min.is_finite() || min < 1.0 || !max.is_finite() {
        return Err(CliError::Usage(
            "grid requires a finite max and min >= 1".into(),
        ));
    }
    if max <= min {
        return Err(CliError::Usage("grid requires max > min".into()));
    }
    if points < 2 {
        return Err(CliError::Usage("grid requires at least 2 points".into()));
    }
    let last = (points - 1) as f64;
    let mut xs: Vec<f64> = if linear {
        (0..points)
            .map(|i| min + (max - min) * i as f64 / last)
            .collect()
    } else {
        let ratio = max / min;
        (0..points)
            .map(|i| min * ratio.powf(i as f64 / last))
            .collect()
    };
    xs[0] = min;
    xs[points - 1] = max;
    Ok(xs)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsJson {
    #[serde(rename = "L")]
    pub rows: u32,
    pub beta: f64,
    pub x1: f64,
    pub x2: f64,
}

/// JSON shape of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub params: ParamsJson,
    pub n: usize,
    pub seed: u64,
    pub sampler: String,
    pub ks_statistic: f64,
    pub ks_threshold: f64,
    pub normalization_residual: f64,
    pub pass: bool,
}

impl From<&VerificationReport> for ReportJson {
    fn from(r: &VerificationReport) -> Self {
        Self {
            params: ParamsJson {
                rows: r.params.rows(),
                beta: r.params.beta(),
                x1: r.params.x1(),
                x2: r.params.x2(),
            },
            n: r.n,
            seed: r.seed,
            sampler: r.sampler.as_str().to_owned(),
            ks_statistic: r.ks_statistic,
            ks_threshold: r.ks_threshold,
            normalization_residual: r.normalization_residual,
            pass: r.pass,
        }
    }
}
