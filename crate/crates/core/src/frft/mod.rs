//! Fractional Fourier transform.
//!
//! For a sequence `x` of length `L`, a complex parameter `alpha` and a
//! fractional output shift `s` in `[0, 1)`,
//!
//! ```text
//! G_{k+s}(x, alpha) = sum_{j<L} x_j exp(-2 pi i j (k+s) alpha),   0 <= k < L
//! ```
//!
//! Writing `2j(k+s) = j^2 + (k+s)^2 - (k-j+s)^2` turns the sum into a linear
//! convolution of `y_j = x_j exp(-pi i j^2 alpha)` with the chirp
//! `z_m = exp(pi i (m+s)^2 alpha)`. Extending both to length `2L` (zeros for
//! `y`, the wrapped chirp `exp(pi i (j+s-2L)^2 alpha)` for `z`) makes the
//! convolution circular, so three DFTs of length `2L` evaluate all `L`
//! outputs. The classic operation count for power-of-two `L` is about
//! `20 L log2(L) + 44 L`; Bluestein lengths carry larger constants.

mod fft;

pub use fft::{dft, idft, FftPlan};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::phase;

fn check_shift(s: f64) -> Result<()> {
    if (0.0..1.0).contains(&s) {
        Ok(())
    } else {
        Err(Error::ShiftOutOfRange(s))
    }
}

/// Precomputed chirps and convolution kernel for one `(L, alpha, s)` triple.
///
/// Plans are immutable; [`FrftPlan::execute`] allocates its own scratch, so a
/// plan can be shared between threads.
#[derive(Debug, Clone)]
pub struct FrftPlan {
    len: usize,
    alpha: Complex64,
    s: f64,
    fft: FftPlan,
    input_chirp: Vec<Complex64>,
    kernel: Vec<Complex64>,
    kernel_spectrum: Vec<Complex64>,
    output_chirp: Vec<Complex64>,
}

impl FrftPlan {
    pub fn new(len: usize, alpha: Complex64, s: f64) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptySequence);
        }
        check_shift(s)?;
        if !(alpha.re.is_finite() && alpha.im.is_finite()) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} is not finite")));
        }
        let padded = 2 * len;
        let input_chirp: Vec<Complex64> = (0..len as u64)
            .map(|j| phase::chirp(alpha, j, 0.0, -1.0))
            .collect();
        let output_chirp: Vec<Complex64> = (0..len as u64)
            .map(|k| phase::chirp(alpha, k, s, -1.0))
            .collect();

        // z_j = exp(pi i (j+s)^2 alpha) for j < L and exp(pi i (j+s-2L)^2 alpha)
        // for L <= j < 2L. With m = 2L - j the wrapped index is (s - m)^2 = (m - s)^2.
        let mut kernel = Vec::with_capacity(padded);
        for j in 0..len as u64 {
            kernel.push(phase::chirp(alpha, j, s, 1.0));
        }
        for j in len as u64..padded as u64 {
            let m = padded as u64 - j;
            kernel.push(reflected_chirp(alpha, m, s));
        }
        let fft = FftPlan::new(padded);
        let mut kernel_spectrum = kernel.clone();
        fft.forward(&mut kernel_spectrum);

        Ok(FrftPlan {
            len,
            alpha,
            s,
            fft,
            input_chirp,
            kernel,
            kernel_spectrum,
            output_chirp,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn shift(&self) -> f64 {
        self.s
    }

    /// Length of the circular convolution, `2L`.
    pub fn padded_len(&self) -> usize {
        self.fft.len()
    }

    /// `exp(-pi i j^2 alpha)`, `j < L`.
    pub fn input_chirp(&self) -> &[Complex64] {
        &self.input_chirp
    }

    /// The `2L`-long circular chirp `z`.
    pub fn kernel(&self) -> &[Complex64] {
        &self.kernel
    }

    /// `exp(-pi i (k+s)^2 alpha)`, `k < L`.
    pub fn output_chirp(&self) -> &[Complex64] {
        &self.output_chirp
    }

    pub fn execute(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                got: x.len(),
            });
        }
        let mut buf = vec![Complex64::new(0.0, 0.0); self.padded_len()];
        for (b, (v, c)) in buf.iter_mut().zip(x.iter().zip(&self.input_chirp)) {
            *b = v * c;
        }
        self.fft.forward(&mut buf);
        for (b, k) in buf.iter_mut().zip(&self.kernel_spectrum) {
            *b *= k;
        }
        self.fft.inverse(&mut buf);
        buf.truncate(self.len);
        for (b, c) in buf.iter_mut().zip(&self.output_chirp) {
            *b *= c;
        }
        Ok(buf)
    }
}

// exp(pi i (m - s)^2 alpha) = exp(pi i alpha (m^2 - 2ms + s^2))
fn reflected_chirp(alpha: Complex64, m: u64, s: f64) -> Complex64 {
    let mf = m as f64;
    let turns = phase::mul_mod2(alpha.re, (m * m) as f64) - phase::mul_mod2(alpha.re, 2.0 * s * mf)
        + alpha.re * s * s;
    let rotation = phase::cis_pi(turns);
    if alpha.im == 0.0 {
        rotation
    } else {
        rotation * (-std::f64::consts::PI * alpha.im * (mf - s) * (mf - s)).exp()
    }
}

/// Fast FRFT through the `2L` circular convolution.
pub fn frft_fast(x: &[Complex64], alpha: Complex64, s: f64) -> Result<Vec<Complex64>> {
    FrftPlan::new(x.len(), alpha, s)?.execute(x)
}

const RESEED: usize = 32;

/// Quadratic-time FRFT straight from the definition; the reference for
/// [`frft_fast`].
pub fn frft_direct(x: &[Complex64], alpha: Complex64, s: f64) -> Result<Vec<Complex64>> {
    if x.is_empty() {
        return Err(Error::EmptySequence);
    }
    check_shift(s)?;
    let len = x.len();
    let two_pi = 2.0 * std::f64::consts::PI;
    // exp(-2 pi i j (k+s) alpha), real part of alpha reduced in half-turns
    let exact = |j: usize, k: usize| {
        let turns = phase::mul_mod2(2.0 * alpha.re, (j * k) as f64)
            + phase::mul_mod2(2.0 * alpha.re * s, j as f64);
        let w = phase::cis_pi(-turns);
        if alpha.im == 0.0 {
            w
        } else {
            w * (two_pi * alpha.im * j as f64 * (k as f64 + s)).exp()
        }
    };
    let out = (0..len)
        .map(|k| {
            // step by the j = 1 factor, reseeding exactly every RESEED terms
            let step = exact(1, k);
            let mut w = Complex64::new(1.0, 0.0);
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, v) in x.iter().enumerate() {
                if j % RESEED == 0 {
                    w = exact(j, k);
                }
                acc += v * w;
                w *= step;
            }
            acc
        })
        .collect();
    Ok(out)
}
