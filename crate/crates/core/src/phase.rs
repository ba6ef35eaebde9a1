//! Accurate evaluation of `exp(i*pi*t)` for large arguments.
//!
//! Chirp exponents such as `pi * alpha * j^2` grow quadratically with the
//! sequence length. Rounding the product once and handing it to `sin`/`cos`
//! loses the low bits that matter after range reduction, so products are
//! reduced modulo 2 (in half-turns) with an FMA error term first.

use num_complex::Complex64;
use std::f64::consts::PI;

/// `a * b` reduced into `[-1, 1]` modulo 2, carrying the rounding error of
/// the product.
#[inline]
pub(crate) fn mul_mod2(a: f64, b: f64) -> f64 {
    let p = a * b;
    let err = a.mul_add(b, -p);
    let r = p - 2.0 * (p * 0.5).round();
    r + err
}

/// `exp(i * pi * t)` for `t` already reduced to a moderate range.
#[inline]
pub(crate) fn cis_pi(t: f64) -> Complex64 {
    let (s, c) = (PI * t).sin_cos();
    Complex64::new(c, s)
}

/// `exp(i * pi * a * b)` with the product reduced before the trigonometry.
#[inline]
pub(crate) fn cis_pi_mul(a: f64, b: f64) -> Complex64 {
    cis_pi(mul_mod2(a, b))
}

/// `exp(sign * i * pi * alpha * (j + s)^2)` for integer `j`, fraction `s`
/// and a possibly complex `alpha`.
pub(crate) fn chirp(alpha: Complex64, j: u64, s: f64, sign: f64) -> Complex64 {
    let jf = j as f64;
    let jj = (j * j) as f64;
    let turns = if s == 0.0 {
        mul_mod2(alpha.re, jj)
    } else {
        mul_mod2(alpha.re, jj) + mul_mod2(alpha.re, 2.0 * s * jf) + alpha.re * s * s
    };
    let rotation = cis_pi(sign * turns);
    if alpha.im == 0.0 {
        rotation
    } else {
        let t = (jf + s) * (jf + s);
        rotation * (-sign * PI * alpha.im * t).exp()
    }
}
