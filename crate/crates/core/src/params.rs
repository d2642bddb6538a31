use crate::{Error, Result};

/// The tuple `(L, β, x1, x2)` shared by every density and sampler.
///
/// `L ≥ 2` is the number of rows of `W`, `β > 0` the ghost parameter and
/// `Σ = diag(x1, x2)` must be indefinite (`x1·x2 < 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    rows: u32,
    beta: f64,
    x1: f64,
    x2: f64,
}

impl ModelParams {
    pub fn new(rows: u32, beta: f64, x1: f64, x2: f64) -> Result<Self> {
        if rows < 2 {
            return Err(Error::InvalidParams("L must be an integer >= 2"));
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::InvalidParams("beta must be positive and finite"));
        }
        check_sigma(x1, x2)?;
        Ok(Self { rows, beta, x1, x2 })
    }

    /// Number of rows `L` of `W`.
    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn x2(&self) -> f64 {
        self.x2
    }

    /// `β·L`, the exponent that appears throughout the densities.
    pub(crate) fn beta_l(&self) -> f64 {
        self.beta * f64::from(self.rows)
    }

    /// Same `L` and `β` with a different `Σ`.
    pub fn with_sigma(&self, x1: f64, x2: f64) -> Result<Self> {
        Self::new(self.rows, self.beta, x1, x2)
    }

    /// Same `L` and `Σ` with a different `β`.
    pub fn with_beta(&self, beta: f64) -> Result<Self> {
        Self::new(self.rows, beta, self.x1, self.x2)
    }
}

pub(crate) fn check_sigma(x1: f64, x2: f64) -> Result<()> {
    if !(x1.is_finite() && x2.is_finite()) {
        return Err(Error::InvalidParams("x1 and x2 must be finite"));
    }
    if !(x1 * x2 < 0.0) {
        return Err(Error::InvalidParams("x1 and x2 must have opposite signs"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_each_invariant() {
        assert!(ModelParams::new(2, 1.0, 1.0, -1.0).is_ok());
        assert_eq!(
            ModelParams::new(1, 1.0, 1.0, -1.0),
            Err(Error::InvalidParams("L must be an integer >= 2"))
        );
        assert!(ModelParams::new(2, 0.0, 1.0, -1.0).is_err());
        assert!(ModelParams::new(2, f64::NAN, 1.0, -1.0).is_err());
        assert_eq!(
            ModelParams::new(2, 1.0, 1.0, 2.0),
            Err(Error::InvalidParams("x1 and x2 must have opposite signs"))
        );
        assert!(ModelParams::new(2, 1.0, 0.0, -1.0).is_err());
        assert!(ModelParams::new(2, 1.0, f64::INFINITY, -1.0).is_err());
    }
}
