//! Special functions needed by the VG and GTS models.

#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use super::integrate::{integrate_pieces, Tolerance};
use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural logarithm of the gamma function for `x > 0` (Lanczos, g = 7).
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("log_gamma needs x > 0, got {x}")));
    }
    Ok(ln_gamma_pos(x))
}

fn ln_gamma_pos(x: f64) -> f64 {
    if x < 0.5 {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return (PI / (PI * x).sin()).ln() - ln_gamma_pos(1.0 - x);
    }
    let z = x - 1.0;
    let mut series = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + series.ln()
}

/// `Gamma(-b)` for `0 < b < 1` via the reflection formula
/// `Gamma(-b) = -pi / (b sin(pi b) Gamma(b))`.
pub fn gamma_of_negative_fraction(b: f64) -> Result<f64> {
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::Domain(format!("expected 0 < b < 1, got {b}")));
    }
    Ok(-PI / (b * (PI * b).sin() * ln_gamma_pos(b).exp()))
}

/// Modified Bessel function of the second kind, `K_order(z)` for `z > 0`.
pub fn bessel_k(order: f64, z: f64) -> Result<f64> {
    Ok(ln_bessel_k(order, z)?.exp())
}

/// `ln K_order(z)`, usable where `K` itself would underflow.
///
/// Starts from `K(z) = 1/2 (z/2)^order integral_0^inf exp(-t - z^2/(4t)) t^(-order-1) dt`.
/// Substituting `t = (z/2) e^u` cancels the power prefactor and leaves
/// `integral_0^inf exp(-z cosh u) cosh(order u) du`, which is integrated
/// adaptively after factoring out its largest exponent.
pub fn ln_bessel_k(order: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("bessel_k needs z > 0, got {z}")));
    }
    if !order.is_finite() {
        return Err(Error::Domain(format!("bessel_k order {order} is not finite")));
    }
    let nu = order.abs();
    // exponent of the dominant half, relative to e^{-z}
    let phi = |u: f64| -z * (u.cosh() - 1.0) + nu * u;
    let peak_u = (nu / z).asinh();
    let peak = phi(peak_u);
    let mut upper = peak_u + 1.0;
    let mut step = 1.0;
    while phi(upper) > peak - 45.0 {
        step *= 2.0;
        upper = peak_u + step;
    }
    let integrand = |u: f64| {
        let c = u.cosh() - 1.0;
        0.5 * ((-z * c + nu * u - peak).exp() + (-z * c - nu * u - peak).exp())
    };
    let breaks: Vec<f64> = if peak_u > 0.0 {
        vec![0.0, peak_u, upper]
    } else {
        vec![0.0, upper]
    };
    let tol = Tolerance {
        abs: 0.0,
        rel: 1e-14,
        max_intervals: 2000,
    };
    let scaled = integrate_pieces(integrand, &breaks, tol)?;
    Ok(scaled.ln() + peak - z)
}
