//! Variance-Gamma model: a normal mean-variance mixture over a Gamma
//! subordinator with shape `alpha` and scale `theta`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::integrate::{integrate_pieces, Tolerance};
use super::special::{ln_bessel_k, log_gamma};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VgParams {
    /// Location.
    pub mu: f64,
    /// Drift of the mixture (the symmetry parameter).
    pub delta: f64,
    pub sigma: f64,
    /// Gamma shape.
    pub alpha: f64,
    /// Gamma scale.
    pub theta: f64,
}

impl VgParams {
    pub fn validate(&self) -> Result<()> {
        let all = [self.mu, self.delta, self.sigma, self.alpha, self.theta];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("VG parameters must be finite".into()));
        }
        for (name, v) in [("sigma", self.sigma), ("alpha", self.alpha), ("theta", self.theta)] {
            if !(v > 0.0) {
                return Err(Error::InvalidParameter(format!("VG {name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    // delta^2 + 2 sigma^2 / theta
    fn tail_rate_sq(&self) -> f64 {
        self.delta * self.delta + 2.0 * self.sigma * self.sigma / self.theta
    }

    fn ln_normalizer(&self) -> Result<f64> {
        Ok(-0.5 * (2.0 * PI).ln()
            - self.sigma.ln()
            - log_gamma(self.alpha)?
            - self.alpha * self.theta.ln())
    }
}

/// Fourier transform of the density,
/// `F[f](x) = exp(-i mu x) / (1 + theta sigma^2 x^2 / 2 + i delta theta x)^alpha`.
pub fn vg_cf(p: &VgParams, x: f64) -> Complex64 {
    let base = Complex64::new(
        1.0 + 0.5 * p.theta * p.sigma * p.sigma * x * x,
        p.delta * p.theta * x,
    );
    debug_assert!(base.re > 0.0, "principal branch requires a positive real part");
    let ln_base = base.ln();
    Complex64::new(-p.alpha * ln_base.re, -p.mu * x - p.alpha * ln_base.im).exp()
}

/// Closed-form density through `K_{1/2 - alpha}`; undefined at `y = mu`,
/// where [`vg_peak_density`] applies.
pub fn vg_density_closed(p: &VgParams, y: f64) -> Result<f64> {
    p.validate()?;
    let u = (y - p.mu).abs();
    if u == 0.0 {
        return Err(Error::Domain(
            "closed form is singular at y = mu; use vg_peak_density".into(),
        ));
    }
    let c = p.tail_rate_sq();
    let s2 = p.sigma * p.sigma;
    let order = 0.5 - p.alpha;
    let ln_f = 2f64.ln() + p.delta * (y - p.mu) / s2 + p.ln_normalizer()?
        + (p.alpha - 0.5) * (u.ln() - 0.5 * c.ln())
        + ln_bessel_k(order, c.sqrt() * u / s2)?;
    Ok(ln_f.exp())
}

/// Density at the location parameter,
/// `Gamma(alpha - 1/2) / (sqrt(2 pi theta) sigma Gamma(alpha) (1 + theta delta^2 / (2 sigma^2))^(alpha - 1/2))`.
pub fn vg_peak_density(p: &VgParams) -> Result<f64> {
    p.validate()?;
    if !(p.alpha > 0.5) {
        return Err(Error::Domain(format!(
            "density at mu diverges for alpha <= 1/2 (alpha = {})",
            p.alpha
        )));
    }
    let ratio = 1.0 + p.theta * p.delta * p.delta / (2.0 * p.sigma * p.sigma);
    let ln_f = log_gamma(p.alpha - 0.5)? - log_gamma(p.alpha)?
        - 0.5 * (2.0 * PI * p.theta).ln()
        - p.sigma.ln()
        - (p.alpha - 0.5) * ratio.ln();
    Ok(ln_f.exp())
}

/// Brute-force density from the Gamma mixture integral
/// `f(y) = e^{delta (y-mu) / sigma^2} / (sqrt(2 pi) sigma Gamma(alpha) theta^alpha)
///         * integral_0^inf exp(-A nu - B / nu) nu^(alpha - 3/2) dnu`,
/// integrated over `u = ln nu`.
pub fn vg_density_oracle(p: &VgParams, y: f64) -> Result<f64> {
    p.validate()?;
    let s2 = p.sigma * p.sigma;
    let a = p.tail_rate_sq() / (2.0 * s2);
    let b = (y - p.mu) * (y - p.mu) / (2.0 * s2);
    let power = p.alpha - 0.5;
    if b == 0.0 && power <= 0.0 {
        return Err(Error::Domain(format!(
            "mixture integral diverges at y = mu for alpha = {}",
            p.alpha
        )));
    }
    let phi = |u: f64| -a * u.exp() - b * (-u).exp() + power * u;
    let t_star = (power + (power * power + 4.0 * a * b).sqrt()) / (2.0 * a);
    let u_star = t_star.ln();
    let top = phi(u_star);
    let reach = |dir: f64| {
        let mut step = 1.0;
        while phi(u_star + dir * step) > top - 48.0 {
            step *= 2.0;
        }
        u_star + dir * step
    };
    let (lo, hi) = (reach(-1.0), reach(1.0));
    let tol = Tolerance {
        abs: 0.0,
        rel: 1e-12,
        max_intervals: 4000,
    };
    let integral = integrate_pieces(|u| (phi(u) - top).exp(), &[lo, u_star, hi], tol)?;
    let ln_f = p.delta * (y - p.mu) / s2 + p.ln_normalizer()? + top + integral.ln();
    Ok(ln_f.exp())
}
