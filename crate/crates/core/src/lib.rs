//! Closed Newton-Cotes weights in exact arithmetic, a fast fractional Fourier
//! transform (FRFT), and FRFT-based schemes for inverting Fourier transforms of
//! probability densities.
//!
//! The crate is organised bottom-up:
//!
//! * [`quadrature`] builds closed Newton-Cotes weights of any order as exact
//!   rationals and the flattened composite weight vector.
//! * [`frft`] provides the DFT engine (radix-2 plus Bluestein), the fast FRFT
//!   via a `2L`-long circular convolution, and the quadratic-time reference.
//! * [`models`] evaluates Variance-Gamma and Generalized Tempered Stable
//!   characteristic functions together with independent density oracles.
//! * [`inversion`] turns a characteristic model into density samples with the
//!   direct weighted sum, the non-weighted FRFT, the weighted FRFT and the two
//!   composite-FRFT factorizations.

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod frft;
pub mod inversion;
pub mod models;
pub mod quadrature;

pub(crate) mod phase;

pub use error::{Error, Result};
pub use num_complex::Complex64;
