//! Generalized Tempered Stable model, `Y = mu + X_+ - X_-` with independent
//! one-sided tempered stable parts.
//!
//! The characteristic exponent is
//!
//! ```text
//! Psi(xi) = i mu xi + a+ G(-b+) ((l+ - i xi)^b+ - l+^b+) + a- G(-b-) ((l- + i xi)^b- - l-^b-)
//! ```
//!
//! with `E[e^{i Y xi}] = e^{Psi(xi)}` and `F[f](y) = e^{Psi(-y)}`. The
//! negative-side base carries `+ i xi`, which makes `Psi(-xi) = conj(Psi(xi))`.
//! There is no closed-form density; [`gts_density_oracle`] integrates the
//! inversion formula directly.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::integrate::{integrate_pieces, Tolerance};
use super::special::gamma_of_negative_fraction;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GtsParams {
    pub mu: f64,
    pub beta_plus: f64,
    pub beta_minus: f64,
    pub alpha_plus: f64,
    pub alpha_minus: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
}

impl GtsParams {
    pub fn validate(&self) -> Result<()> {
        if !self.mu.is_finite() {
            return Err(Error::InvalidParameter("GTS mu must be finite".into()));
        }
        for (name, b) in [("beta_plus", self.beta_plus), ("beta_minus", self.beta_minus)] {
            if !(b > 0.0 && b < 1.0) {
                return Err(Error::InvalidParameter(format!("GTS {name} must lie in (0, 1), got {b}")));
            }
        }
        for (name, v) in [
            ("alpha_plus", self.alpha_plus),
            ("alpha_minus", self.alpha_minus),
            ("lambda_plus", self.lambda_plus),
            ("lambda_minus", self.lambda_minus),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!("GTS {name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

fn ln_1p(u: Complex64) -> Complex64 {
    // ln|1+u| = ln1p(2 Re u + |u|^2) / 2
    Complex64::new(
        0.5 * (2.0 * u.re + u.norm_sqr()).ln_1p(),
        u.im.atan2(1.0 + u.re),
    )
}

fn exp_m1(w: Complex64) -> Complex64 {
    let half_sin = (0.5 * w.im).sin();
    Complex64::new(
        w.re.exp_m1() * w.im.cos() - 2.0 * half_sin * half_sin,
        w.re.exp() * w.im.sin(),
    )
}

// alpha Gamma(-beta) ((lambda + i t)^beta - lambda^beta), written as
// alpha Gamma(-beta) lambda^beta expm1(beta ln(1 + i t / lambda)) so t = 0 gives 0 exactly.
fn tempered_term(alpha: f64, beta: f64, lambda: f64, t: f64) -> Complex64 {
    let coeff = alpha * gamma_of_negative_fraction(beta).expect("validated beta") * lambda.powf(beta);
    let ln_base = ln_1p(Complex64::new(0.0, t / lambda));
    exp_m1(ln_base * beta) * coeff
}

/// Characteristic exponent `Psi(xi)`.
pub fn gts_psi(p: &GtsParams, xi: f64) -> Complex64 {
    Complex64::new(0.0, p.mu * xi)
        + tempered_term(p.alpha_plus, p.beta_plus, p.lambda_plus, -xi)
        + tempered_term(p.alpha_minus, p.beta_minus, p.lambda_minus, xi)
}

/// `F[f](y) = exp(Psi(-y))`.
pub fn gts_fourier(p: &GtsParams, y: f64) -> Complex64 {
    gts_psi(p, -y).exp()
}

/// Smallest power-of-two frequency beyond which `|F[f]|` stays below `bound`.
pub fn gts_truncation(p: &GtsParams, bound: f64) -> f64 {
    let target = bound.ln();
    let mut x = 1.0;
    // Re Psi decreases in |xi|; the second probe guards against a flat stretch.
    while gts_psi(p, -x).re > target || gts_psi(p, -2.0 * x).re > target {
        x *= 2.0;
        if x > 1e12 {
            break;
        }
    }
    x
}

/// Density by adaptive quadrature of `(1/pi) integral_0^X Re(e^{i y x} F[f](x)) dx`,
/// with `X` chosen so that `|F[f]| < 1e-15` beyond it.
pub fn gts_density_oracle(p: &GtsParams, y: f64) -> Result<f64> {
    p.validate()?;
    if !y.is_finite() {
        return Err(Error::Domain(format!("density point {y} is not finite")));
    }
    let upper = gts_truncation(p, 1e-15);
    let pieces = 256usize;
    let breaks: Vec<f64> = (0..=pieces).map(|k| upper * k as f64 / pieces as f64).collect();
    let tol = Tolerance {
        abs: 1e-14,
        rel: 1e-12,
        max_intervals: 20_000,
    };
    let integrand = |x: f64| {
        let w = gts_psi(p, -x) + Complex64::new(0.0, y * x);
        w.re.exp() * w.im.cos()
    };
    Ok(integrate_pieces(integrand, &breaks, tol)? / PI)
}
