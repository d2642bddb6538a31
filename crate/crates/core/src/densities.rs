//! Closed-form densities of the indefinite rank-2 Wishart model.
//!
//! Everything is evaluated as `exp(Σ log-terms)` so that Gamma ratios with
//! `βL` in the hundreds neither overflow nor lose precision, and the
//! hypergeometric factor enters through its logarithm.
//!
//! Notation: `t = -λ2/λ1 ≥ 0` is the eigenvalue ratio and
//! `σ = max(t, 1/t) ≥ 1` the condition number. With
//!
//! ```text
//! K = 2^(βL-1) (-x1x2)^(βL/2) Γ(βL/2 + 1/2) Γ(β(L-1) + 1)
//!     / (√π Γ(β(L-1)/2) Γ(βL - β/2 + 1))
//! F(z) = ₂F₁(βL, β/2; βL - β/2 + 1; z)
//! ```
//!
//! the ratio density is
//!
//! ```text
//! ρ(t) = K (1 + t)^β t^(β(L-1)/2 - 1) |t·x2 - x1|^(-βL) F((x2 - t·x1) / (x1 - t·x2))
//! ```
//!
//! and folding about `t = 1` gives `f(σ) = ρ(1/σ)/σ² + ρ(σ)`, which in
//! closed form is
//!
//! ```text
//! f(σ) = K (1 + σ)^β σ^(β(L-1)/2 - 1) [ |σx1 - x2|^(-βL) F(r) + |σx2 - x1|^(-βL) F(1/r) ],
//! r = (σx2 - x1) / (σx1 - x2).
//! ```

use core::f64::consts::{FRAC_PI_2, PI};

use crate::sampling::{condition_number, eig_sym2, SymmetricProduct};
use crate::specfun::{lgamma, ln_hyp2f1_nonpositive};
use crate::{Error, ModelParams, Result};

const LN_2: f64 = core::f64::consts::LN_2;
const LN_SQRT_PI: f64 = 0.572_364_942_924_700_087_071_713_675_677;

/// `ln(x^p)` for `x ≥ 0`, with `0^p` read as `0`, `1` or `∞` by the sign of `p`.
fn ln_pow(x: f64, p: f64) -> f64 {
    if x == 0.0 {
        if p > 0.0 {
            f64::NEG_INFINITY
        } else if p == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else if p == 0.0 {
        0.0
    } else {
        p * libm::log(x)
    }
}

/// The ratio and condition-number densities for one parameter set, with the
/// normalizing constant computed once.
#[derive(Debug, Clone, Copy)]
pub struct RatioDensity {
    params: ModelParams,
    ln_norm: f64,
    beta_l: f64,
    /// `β(L-1)/2 - 1`, the power of `t` (and `σ`).
    t_power: f64,
    hyp_a: f64,
    hyp_b: f64,
    hyp_c: f64,
}

impl RatioDensity {
    pub fn new(params: &ModelParams) -> Self {
        let beta = params.beta();
        let bl = params.beta_l();
        let x1x2 = -params.x1() * params.x2();
        let ln_norm = (bl - 1.0) * LN_2
            + 0.5 * bl * libm::log(x1x2)
            + lgamma(0.5 * bl + 0.5)
            + lgamma(bl - beta + 1.0)
            - LN_SQRT_PI
            - lgamma(0.5 * (bl - beta))
            - lgamma(bl - 0.5 * beta + 1.0);
        Self {
            params: *params,
            ln_norm,
            beta_l: bl,
            t_power: 0.5 * (bl - beta) - 1.0,
            hyp_a: bl,
            hyp_b: 0.5 * beta,
            hyp_c: bl - 0.5 * beta + 1.0,
        }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    fn ln_hyp(&self, z: f64) -> f64 {
        ln_hyp2f1_nonpositive(self.hyp_a, self.hyp_b, self.hyp_c, z).value
    }

    /// Density of `t = -λ2/λ1` at `t ≥ 0`.
    ///
    /// At `t = 0` the value is `0`, finite or an error depending on whether
    /// `β(L-1)/2 - 1` is positive, zero or negative.
    pub fn rho_t(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::Domain("rho_t requires a finite t >= 0"));
        }
        if t == 0.0 && self.t_power < 0.0 {
            return Err(Error::Domain(
                "rho_t diverges at t = 0 for these parameters",
            ));
        }
        let (x1, x2) = (self.params.x1(), self.params.x2());
        let beta = self.params.beta();
        let z = (x2 - t * x1) / (x1 - t * x2);
        let ln = self.ln_norm + beta * libm::log1p(t) + ln_pow(t, self.t_power)
            - self.beta_l * libm::log((t * x2 - x1).abs())
            + self.ln_hyp(z);
        Ok(libm::exp(ln))
    }

    /// Condition-number density at `σ ≥ 1`, from the explicit folded formula.
    pub fn cond_density(&self, sigma: f64) -> Result<f64> {
        check_sigma_arg(sigma)?;
        Ok(self.cond_density_unchecked(sigma))
    }

    pub(crate) fn cond_density_unchecked(&self, sigma: f64) -> f64 {
        let (x1, x2) = (self.params.x1(), self.params.x2());
        let beta = self.params.beta();
        let common = self.ln_norm + beta * libm::log1p(sigma) + ln_pow(sigma, self.t_power);
        let g1 = sigma * x1 - x2;
        let g2 = sigma * x2 - x1;
        let r = g2 / g1;
        let first = common - self.beta_l * libm::log(g1.abs()) + self.ln_hyp(r);
        let second = common - self.beta_l * libm::log(g2.abs()) + self.ln_hyp(1.0 / r);
        libm::exp(first) + libm::exp(second)
    }

    /// Condition-number density via `ρ(1/σ)/σ² + ρ(σ)`.
    pub fn cond_density_fold(&self, sigma: f64) -> Result<f64> {
        check_sigma_arg(sigma)?;
        Ok(self.rho_t(1.0 / sigma)? / (sigma * sigma) + self.rho_t(sigma)?)
    }
}

fn check_sigma_arg(sigma: f64) -> Result<()> {
    if !(sigma >= 1.0) || !sigma.is_finite() {
        return Err(Error::Domain(
            "condition number must be a finite value >= 1",
        ));
    }
    Ok(())
}

/// Joint density of the entries `(a, b, c)` of the triangular factor: the
/// product of independent `χ_{Lβ}`, `χ_β` and `χ_{(L-1)β}` densities.
///
/// On the boundary a zero coordinate with a negative exponent yields `+∞`.
pub fn rho_r(a: f64, b: f64, c: f64, params: &ModelParams) -> Result<f64> {
    if !(a >= 0.0 && b >= 0.0 && c >= 0.0) {
        return Err(Error::Domain("rho_R requires a, b, c >= 0"));
    }
    let beta = params.beta();
    let bl = params.beta_l();
    let ln = (3.0 - bl) * LN_2
        + ln_pow(a, bl - 1.0)
        + ln_pow(b, beta - 1.0)
        + ln_pow(c, bl - beta - 1.0)
        - 0.5 * (a * a + b * b + c * c)
        - lgamma(0.5 * bl)
        - lgamma(0.5 * beta)
        - lgamma(0.5 * (bl - beta));
    Ok(libm::exp(ln))
}

/// Joint density of the ratio `t` and the rotation angle `θ`, with the
/// eigenvalue scale `u = λ1` integrated out.
///
/// Zero outside the admissible region `tan²θ > t`.
pub fn rho_t_theta(t: f64, theta: f64, params: &ModelParams) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain("rho_t_theta requires a finite t >= 0"));
    }
    if !(0.0..=FRAC_PI_2).contains(&theta) {
        return Err(Error::Domain("theta must lie in [0, pi/2]"));
    }
    let (s, c) = libm::sincos(theta);
    let (s2, c2) = (s * s, c * c);
    let gap = s2 - t * c2;
    if !(gap > 0.0) {
        return Ok(0.0);
    }
    let beta = params.beta();
    let bl = params.beta_l();
    let (x1, x2) = (params.x1(), params.x2());
    let denom = (x1 * (t * t * c2 + s2) - x2 * t).abs();
    let ln = LN_2
        + 0.5 * bl * libm::log(-x1 * x2)
        + lgamma(bl)
        + ln_pow(t, 0.5 * bl - 1.0)
        + beta * libm::log1p(t)
        - lgamma(0.5 * beta)
        - lgamma(0.5 * (bl - beta))
        - lgamma(0.5 * bl)
        + ln_pow(s * c, beta - 1.0)
        + ln_pow(gap, bl - beta)
        - bl * libm::log(denom);
    Ok(libm::exp(ln))
}

/// Density of `t = -λ2/λ1`; see [`RatioDensity::rho_t`].
pub fn rho_t(t: f64, params: &ModelParams) -> Result<f64> {
    RatioDensity::new(params).rho_t(t)
}

/// Condition-number density `f(σ)` for any `β > 0`.
pub fn cond_density(sigma: f64, params: &ModelParams) -> Result<f64> {
    RatioDensity::new(params).cond_density(sigma)
}

/// Condition-number density from the dedicated real (β = 1), complex
/// (β = 2) and quaternion (β = 4) formulas. The complex case is a rational
/// function with no hypergeometric factor.
pub fn cond_density_special(sigma: f64, params: &ModelParams) -> Result<f64> {
    check_sigma_arg(sigma)?;
    let beta = params.beta();
    let rows = f64::from(params.rows());
    let (x1, x2) = (params.x1(), params.x2());
    let x1x2 = -x1 * x2;
    let g1 = sigma * x1 - x2;
    let g2 = sigma * x2 - x1;
    let r = g2 / g1;
    if beta == 1.0 {
        let ln_k = (rows - 1.0) * LN_2
            + 0.5 * rows * libm::log(x1x2)
            + lgamma(0.5 * rows + 0.5)
            + lgamma(rows)
            - LN_SQRT_PI
            - lgamma(0.5 * rows - 0.5)
            - lgamma(0.5 + rows);
        let common = ln_k + libm::log1p(sigma) + (0.5 * rows - 1.5) * libm::log(sigma);
        let hyp = |z| ln_hyp2f1_nonpositive(0.5, rows, rows + 0.5, z).value;
        let first = common - rows * libm::log(g1.abs()) + hyp(r);
        let second = common - rows * libm::log(g2.abs()) + hyp(1.0 / r);
        Ok(libm::exp(first) + libm::exp(second))
    } else if beta == 2.0 {
        // σ^(L+2) (σx1 - x2) / (x2 - x1σ)^(2L) and its mirror; both numerators
        // share the sign of x1 - x2
        let ln_k =
            rows * libm::log(4.0 * x1x2) + lgamma(rows - 0.5) - LN_SQRT_PI - lgamma(rows - 1.0)
                + libm::log1p(sigma)
                + (rows - 2.0) * libm::log(sigma)
                - 2.0 * LN_2;
        let spread = x1 - x2;
        let first = libm::log(g1 / spread) - 2.0 * rows * libm::log(g1.abs());
        let second = libm::log(-g2 / spread) - 2.0 * rows * libm::log(g2.abs());
        Ok(libm::exp(ln_k + first) + libm::exp(ln_k + second))
    } else if beta == 4.0 {
        let ln_k = (4.0 * rows - 1.0) * LN_2
            + 2.0 * rows * libm::log(x1x2)
            + lgamma(2.0 * rows + 0.5)
            + lgamma(4.0 * rows - 3.0)
            - LN_SQRT_PI
            - lgamma(2.0 * rows - 2.0)
            - lgamma(4.0 * rows - 1.0);
        let common = ln_k + 4.0 * libm::log1p(sigma) + (2.0 * rows - 3.0) * libm::log(sigma);
        let hyp = |z| ln_hyp2f1_nonpositive(4.0 * rows, 2.0, 4.0 * rows - 1.0, z).value;
        let first = common - 4.0 * rows * libm::log(g1.abs()) + hyp(r);
        let second = common - 4.0 * rows * libm::log(g2.abs()) + hyp(1.0 / r);
        Ok(libm::exp(first) + libm::exp(second))
    } else {
        Err(Error::Unsupported(
            "closed-form specializations exist only for beta in {1, 2, 4}",
        ))
    }
}

/// Condition-number density when `x1 = -x2`, where it no longer depends on `Σ`:
///
/// ```text
/// f(σ) = 2 σ^(β(L-1)/2 - 1) Γ(β(L-1) + 1) (1 + σ)^(-β(L-1)) / (β(L-1) Γ(β(L-1)/2)²)
/// ```
pub fn cond_density_symmetric(sigma: f64, rows: u32, beta: f64) -> Result<f64> {
    let params = ModelParams::new(rows, beta, 1.0, -1.0)?;
    check_sigma_arg(sigma)?;
    let m = params.beta_l() - beta;
    let ln = LN_2 + ln_pow(sigma, 0.5 * m - 1.0) + lgamma(m + 1.0)
        - m * libm::log1p(sigma)
        - libm::log(m)
        - 2.0 * lgamma(0.5 * m);
    Ok(libm::exp(ln))
}

/// `2 / (π √σ (σ + 1))`: the real `L = 2` case with `x1 = -x2`.
pub fn simple_case_density(sigma: f64) -> Result<f64> {
    check_sigma_arg(sigma)?;
    Ok(2.0 / (PI * libm::sqrt(sigma) * (sigma + 1.0)))
}

/// Condition number reached as `β → ∞`: that of `M Σ Mᵀ` with
/// `M = [[√L, 1], [0, √(L-1)]]`, since `χ_s / √s → 1`.
pub fn limit_condition_number(rows: u32, x1: f64, x2: f64) -> Result<f64> {
    if rows < 2 {
        return Err(Error::InvalidParams("L must be an integer >= 2"));
    }
    crate::params::check_sigma(x1, x2)?;
    let l = f64::from(rows);
    // R^T R with R = [[√L, 1], [0, √(L-1)]], squared entries taken exactly
    let m = SymmetricProduct {
        d: l * x1 + x2,
        e: (l - 1.0) * x2,
        f: libm::sqrt(l - 1.0) * x2,
    };
    condition_number(&eig_sym2(&m)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rows: u32, beta: f64, x1: f64, x2: f64) -> ModelParams {
        ModelParams::new(rows, beta, x1, x2).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn simple_case_values() {
        assert!(rel(simple_case_density(1.0).unwrap(), 1.0 / PI) < 1e-15);
        let at3 = 1.0 / (2.0 * libm::sqrt(3.0) * PI);
        assert!(rel(simple_case_density(3.0).unwrap(), at3) < 1e-15);
        assert!(simple_case_density(0.5).is_err());
    }

    #[test]
    fn cond_density_matches_simple_case() {
        let prm = p(2, 1.0, 1.0, -1.0);
        assert!(rel(cond_density(1.0, &prm).unwrap(), 1.0 / PI) < 1e-13);
        let at3 = cond_density(3.0, &prm).unwrap();
        assert!(rel(at3, 0.0918881492369653) < 1e-12, "{at3}");
        assert!(cond_density(0.99, &prm).is_err());
    }

    #[test]
    fn rho_t_endpoint_behaviour() {
        // β(L-1)/2 - 1 = 0.5 > 0
        assert_eq!(rho_t(0.0, &p(4, 1.0, 1.0, -1.0)).unwrap(), 0.0);
        // exponent -1/2: diverges
        assert!(rho_t(0.0, &p(2, 1.0, 1.0, -1.0)).is_err());
        // exponent 0: finite
        assert!(rho_t(0.0, &p(2, 2.0, 1.0, -1.0)).unwrap() > 0.0);
        assert!(rho_t(-1.0, &p(2, 1.0, 1.0, -1.0)).is_err());
    }

    #[test]
    fn rho_t_at_one_is_half_the_fold() {
        let prm = p(2, 1.0, 1.0, -1.0);
        assert!(rel(2.0 * rho_t(1.0, &prm).unwrap(), 1.0 / PI) < 1e-13);
    }

    #[test]
    fn rho_t_theta_zero_outside_constraint() {
        let prm = p(2, 1.0, 1.0, -1.0);
        assert_eq!(
            rho_t_theta(1.0, core::f64::consts::FRAC_PI_4, &prm).unwrap(),
            0.0
        );
        assert_eq!(rho_t_theta(4.0, 0.3, &prm).unwrap(), 0.0);
        assert!(rho_t_theta(0.5, 1.2, &prm).unwrap() > 0.0);
        assert!(rho_t_theta(0.5, 2.0, &prm).is_err());
    }

    #[test]
    fn rho_r_boundary() {
        // exponents βL-1 = 1, β-1 = 0, β(L-1)-1 = 0 at L = 2, β = 1
        let prm = p(2, 1.0, 1.0, -1.0);
        assert_eq!(rho_r(0.0, 1.0, 1.0, &prm).unwrap(), 0.0);
        assert!(rho_r(1.0, 0.0, 1.0, &prm).unwrap() > 0.0);
        assert!(rho_r(-1.0, 0.0, 1.0, &prm).is_err());
        // β = 0.5: b^(-1/2) blows up at b = 0
        assert_eq!(
            rho_r(1.0, 0.0, 1.0, &p(3, 0.5, 1.0, -1.0)).unwrap(),
            f64::INFINITY
        );
    }

    #[test]
    fn rho_r_complex_case_by_hand() {
        // 2^(-2L+3) (L-1) a^(2L-1) b c^(2L-3) e^(-3/2) / Γ(L)² at L = 2, a = b = c = 1
        let expected = 0.5 * libm::exp(-1.5);
        assert!(
            rel(
                rho_r(1.0, 1.0, 1.0, &p(2, 2.0, 1.0, -1.0)).unwrap(),
                expected
            ) < 1e-14
        );
    }

    #[test]
    fn special_rejects_ghost_beta() {
        assert_eq!(
            cond_density_special(2.0, &p(2, 3.0, 1.0, -1.0)),
            Err(Error::Unsupported(
                "closed-form specializations exist only for beta in {1, 2, 4}"
            ))
        );
    }

    #[test]
    fn symmetric_case_values() {
        assert!(rel(cond_density_symmetric(1.0, 2, 1.0).unwrap(), 1.0 / PI) < 1e-14);
        assert!(cond_density_symmetric(1.0, 1, 1.0).is_err());
    }

    #[test]
    fn limit_examples() {
        assert_eq!(limit_condition_number(2, 1.0, -1.0).unwrap(), 1.0);
        let l4 = limit_condition_number(4, 0.231, -4.4).unwrap();
        // eigenvalues of [[-3.476, -4.4√3], [-4.4√3, -13.2]] by the quadratic formula
        let (tr, det) = (-3.476 - 13.2, -3.476 * -13.2 - 3.0 * 4.4 * 4.4);
        let disc = libm::sqrt(tr * tr - 4.0 * det);
        let expected = ((tr - disc) / (tr + disc)).abs();
        assert!(rel(l4, expected) < 1e-12, "{l4} {expected}");
        assert!((l4 - 24.76).abs() < 0.01);
        for s in [0.1, 7.0] {
            assert!(rel(limit_condition_number(4, 0.231 * s, -4.4 * s).unwrap(), l4) < 1e-14);
        }
    }
}
