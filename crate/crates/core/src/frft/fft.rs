//! Discrete Fourier transforms of any length.
//!
//! Power-of-two lengths run an iterative radix-2 kernel. Every other length
//! goes through Bluestein's algorithm on top of a power-of-two kernel of
//! length at least `2L - 1`, so no length is approximated by padding.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Reusable plan for forward and inverse transforms of one length.
#[derive(Debug, Clone)]
pub struct FftPlan {
    len: usize,
    kind: Kind,
}

#[derive(Debug, Clone)]
enum Kind {
    Trivial,
    Radix2(Radix2),
    Bluestein(Box<Bluestein>),
}

#[derive(Debug, Clone)]
struct Radix2 {
    len: usize,
    // twiddles[k] = exp(-2 pi i k / len), k < len / 2
    twiddles: Vec<Complex64>,
    bit_reverse: Vec<usize>,
}

#[derive(Debug, Clone)]
struct Bluestein {
    inner: Radix2,
    // exp(-pi i n^2 / len), n < len
    chirp: Vec<Complex64>,
    // forward transform of the conjugate chirp laid out circularly, scaled by 1/inner_len
    kernel_spectrum: Vec<Complex64>,
}

impl FftPlan {
    pub fn new(len: usize) -> Self {
        let kind = if len <= 1 {
            Kind::Trivial
        } else if len.is_power_of_two() {
            Kind::Radix2(Radix2::new(len))
        } else {
            Kind::Bluestein(Box::new(Bluestein::new(len)))
        };
        FftPlan { len, kind }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Unnormalized forward transform `X_k = sum_j x_j exp(-2 pi i jk / L)`, in place.
    pub fn forward(&self, data: &mut [Complex64]) {
        assert_eq!(data.len(), self.len, "buffer length does not match plan");
        match &self.kind {
            Kind::Trivial => {}
            Kind::Radix2(r) => r.process(data),
            Kind::Bluestein(b) => b.process(data),
        }
    }

    /// Inverse transform with `1/L` normalization, in place.
    pub fn inverse(&self, data: &mut [Complex64]) {
        for v in data.iter_mut() {
            *v = v.conj();
        }
        self.forward(data);
        let scale = 1.0 / self.len as f64;
        for v in data.iter_mut() {
            *v = v.conj() * scale;
        }
    }
}

impl Radix2 {
    fn new(len: usize) -> Self {
        debug_assert!(len.is_power_of_two() && len >= 2);
        let bits = len.trailing_zeros();
        let twiddles = (0..len / 2)
            .map(|k| {
                let (s, c) = (-2.0 * PI * k as f64 / len as f64).sin_cos();
                Complex64::new(c, s)
            })
            .collect();
        let bit_reverse = (0..len)
            .map(|i| i.reverse_bits() >> (usize::BITS - bits))
            .collect();
        Radix2 {
            len,
            twiddles,
            bit_reverse,
        }
    }

    fn process(&self, data: &mut [Complex64]) {
        let n = self.len;
        for i in 0..n {
            let j = self.bit_reverse[i];
            if i < j {
                data.swap(i, j);
            }
        }
        let mut half = 1;
        while half < n {
            let stride = n / (2 * half);
            for start in (0..n).step_by(2 * half) {
                for k in 0..half {
                    let w = self.twiddles[k * stride];
                    let a = data[start + k];
                    let b = data[start + k + half] * w;
                    data[start + k] = a + b;
                    data[start + k + half] = a - b;
                }
            }
            half *= 2;
        }
    }
}

impl Bluestein {
    fn new(len: usize) -> Self {
        let inner_len = (2 * len - 1).next_power_of_two();
        let inner = Radix2::new(inner_len);
        // n^2 mod 2L keeps the chirp argument exact.
        let modulus = 2 * len as u64;
        let chirp: Vec<Complex64> = (0..len as u64)
            .map(|n| {
                let r = (n * n) % modulus;
                let (s, c) = (-PI * r as f64 / len as f64).sin_cos();
                Complex64::new(c, s)
            })
            .collect();
        let mut kernel = vec![Complex64::new(0.0, 0.0); inner_len];
        let scale = 1.0 / inner_len as f64;
        kernel[0] = chirp[0].conj() * scale;
        for n in 1..len {
            let v = chirp[n].conj() * scale;
            kernel[n] = v;
            kernel[inner_len - n] = v;
        }
        inner.process(&mut kernel);
        Bluestein {
            inner,
            chirp,
            kernel_spectrum: kernel,
        }
    }

    fn process(&self, data: &mut [Complex64]) {
        let len = self.chirp.len();
        let inner_len = self.inner.len;
        let mut buf = vec![Complex64::new(0.0, 0.0); inner_len];
        for (b, (x, w)) in buf.iter_mut().zip(data.iter().zip(&self.chirp)) {
            *b = x * w;
        }
        self.inner.process(&mut buf);
        for (b, k) in buf.iter_mut().zip(&self.kernel_spectrum) {
            // conj so the forward kernel can serve as the inverse transform
            *b = (*b * k).conj();
        }
        self.inner.process(&mut buf);
        for (out, (b, w)) in data.iter_mut().zip(buf.iter().zip(&self.chirp)).take(len) {
            *out = b.conj() * w;
        }
    }
}

/// Forward DFT of any length.
pub fn dft(x: &[Complex64]) -> Vec<Complex64> {
    let mut out = x.to_vec();
    FftPlan::new(x.len()).forward(&mut out);
    out
}

/// Inverse DFT with `1/L` normalization, so `idft(dft(x)) == x`.
pub fn idft(x: &[Complex64]) -> Vec<Complex64> {
    let mut out = x.to_vec();
    FftPlan::new(x.len()).inverse(&mut out);
    out
}
