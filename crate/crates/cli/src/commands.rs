use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use wishcond_core::analysis::{default_histogram_range, histogram};
use wishcond_core::densities::{limit_condition_number, RatioDensity};
use wishcond_core::sampling::Sampler;
use wishcond_core::ModelParams;

use crate::args::{Cli, Command};
use crate::format::{format_significant, log_grid, ReportJson};
use crate::{parallel, CliError, Outcome};

/// Executes one parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Density { model, grid, out } => {
            let params = model.params()?;
            let xs = log_grid(grid)?;
            let density = RatioDensity::new(&params);
            let mut w = open_output(out.as_deref())?;
            writeln!(w, "sigma,density")?;
            for s in xs {
                writeln!(w, "{s},{}", density.cond_density(s)?)?;
            }
            w.flush()?;
            Ok(Outcome::Success)
        }
        Command::Sample {
            model,
            n,
            seed,
            sampler,
            bins,
            min,
            max,
            out,
        } => {
            let params = model.params()?;
            let samples = parallel::sample(&params, (*sampler).into(), to_usize(*n)?, *seed)?;
            let mut w = open_output(out.as_deref())?;
            match bins {
                None => {
                    writeln!(w, "sigma")?;
                    for s in &samples {
                        writeln!(w, "{s}")?;
                    }
                }
                Some(bins) => {
                    let (dlo, dhi) = default_histogram_range(&samples)?;
                    let (lo, hi) = (min.unwrap_or(dlo), max.unwrap_or(dhi));
                    let h = histogram(&samples, to_usize(*bins)?, lo, hi)?;
                    writeln!(w, "sigma,density")?;
                    for (x, v) in h.grid.iter() {
                        writeln!(w, "{x},{v}")?;
                    }
                    eprintln!("{} of {} samples outside [{lo}, {hi}]", h.overflow, h.total);
                }
            }
            w.flush()?;
            Ok(Outcome::Success)
        }
        Command::Verify {
            model,
            n,
            seed,
            sampler,
            samples,
            out,
        } => {
            let params = model.params()?;
            let sampler: Sampler = (*sampler).into();
            let report = match samples {
                Some(path) => {
                    parallel::verify_samples(&params, read_samples(path)?, *seed, sampler)?
                }
                None => parallel::verify(&params, to_usize(*n)?, *seed, sampler)?,
            };
            let json = serde_json::to_string_pretty(&ReportJson::from(&report))
                .map_err(|e| CliError::Io(e.into()))?;
            let mut w = open_output(out.as_deref())?;
            writeln!(w, "{json}")?;
            w.flush()?;
            Ok(if report.pass {
                Outcome::Success
            } else {
                Outcome::VerificationFailed
            })
        }
        Command::Limit { rows, beta, x1, x2 } => {
            if let Some(beta) = beta {
                ModelParams::new(*rows, *beta, *x1, *x2)?;
            }
            let limit = limit_condition_number(*rows, *x1, *x2)?;
            println!("{}", format_significant(limit, 12));
            Ok(Outcome::Success)
        }
        Command::Sweep {
            rows,
            x1,
            x2,
            betas,
            grid,
            n,
            seed,
            out,
        } => {
            let xs = log_grid(grid)?;
            let models = betas
                .iter()
                .map(|&b| ModelParams::new(*rows, b, *x1, *x2))
                .collect::<Result<Vec<_>, _>>()?;
            let mut w = open_output(out.as_deref())?;
            writeln!(w, "beta,sigma,density")?;
            for p in &models {
                let density = RatioDensity::new(p);
                for &s in &xs {
                    writeln!(w, "{},{s},{}", p.beta(), density.cond_density(s)?)?;
                }
            }
            for p in &models {
                let samples = parallel::sample(p, Sampler::ChiPipeline, to_usize(*n)?, *seed)?;
                writeln!(w, "{},{},NaN", p.beta(), median(samples))?;
            }
            w.flush()?;
            Ok(Outcome::Success)
        }
    }
}

fn to_usize(n: u64) -> Result<usize, CliError> {
    usize::try_from(n).map_err(|_| CliError::Usage(format!("count {n} is too large")))
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Reads the single-column CSV written by `sample`.
fn read_samples(path: &PathBuf) -> Result<Vec<f64>, CliError> {
    let reader = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let field = line.trim();
        if field.is_empty() || (i == 0 && field == "sigma") {
            continue;
        }
        let v = field.parse::<f64>().map_err(|_| {
            CliError::Usage(format!(
                "{}:{}: not a number: {field:?}",
                path.display(),
                i + 1
            ))
        })?;
        out.push(v);
    }
    Ok(out)
}

pub(crate) fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}
