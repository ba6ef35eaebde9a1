use serde::Serialize;

use crate::error::{Error, Result};

/// Frequency and output grids shared by all inversion schemes.
///
/// `M = Q N` intervals of width `beta = a / M` cover `[-a/2, a/2]`, with input
/// nodes `y_j = (j - M/2) beta` for `j = 0..=M`. Outputs sit at
/// `x_k = (k + s - M/2) gamma` for `k < M`. The FRFT parameter is
/// `delta = beta gamma / (2 pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InversionGrid {
    q: usize,
    n: usize,
    a: f64,
    beta: f64,
    gamma: f64,
    delta: f64,
    s: f64,
}

impl InversionGrid {
    /// Grid whose outputs span `span` (so `gamma = span / M`).
    pub fn new(q: usize, n: usize, a: f64, span: f64, s: f64) -> Result<Self> {
        let m = q.checked_mul(n).unwrap_or(0);
        if !(span > 0.0) || !span.is_finite() {
            return Err(Error::InvalidGrid(format!("output span must be positive, got {span}")));
        }
        Self::with_output_step(q, n, a, span / m.max(1) as f64, s)
    }

    pub fn with_output_step(q: usize, n: usize, a: f64, gamma: f64, s: f64) -> Result<Self> {
        if q == 0 {
            return Err(Error::ZeroOrder);
        }
        if n == 0 {
            return Err(Error::ZeroPanels);
        }
        let m = q * n;
        if m < 2 {
            return Err(Error::InvalidGrid(format!("need at least two intervals, got M = {m}")));
        }
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::InvalidGrid(format!("frequency span must be positive, got {a}")));
        }
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidGrid(format!("output step must be positive, got {gamma}")));
        }
        if !(0.0..1.0).contains(&s) {
            return Err(Error::ShiftOutOfRange(s));
        }
        let beta = a / m as f64;
        let delta = beta * gamma / (2.0 * std::f64::consts::PI);
        Ok(InversionGrid {
            q,
            n,
            a,
            beta,
            gamma,
            delta,
            s,
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.q * self.n
    }

    /// Frequency span `a`.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Input step.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Output step.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// FRFT parameter `beta gamma / (2 pi)`.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn shift(&self) -> f64 {
        self.s
    }

    pub fn input_node(&self, j: usize) -> f64 {
        (j as f64 - self.m() as f64 / 2.0) * self.beta
    }

    pub fn output_node(&self, k: usize) -> f64 {
        (k as f64 + self.s - self.m() as f64 / 2.0) * self.gamma
    }

    /// The `M + 1` frequency nodes.
    pub fn input_nodes(&self) -> Vec<f64> {
        (0..=self.m()).map(|j| self.input_node(j)).collect()
    }

    /// The `M` output nodes.
    pub fn output_nodes(&self) -> Vec<f64> {
        (0..self.m()).map(|k| self.output_node(k)).collect()
    }

    /// Index of the output node closest to `x`.
    pub fn nearest_output(&self, x: f64) -> usize {
        let raw = x / self.gamma + self.m() as f64 / 2.0 - self.s;
        (raw.round().max(0.0) as usize).min(self.m() - 1)
    }
}
