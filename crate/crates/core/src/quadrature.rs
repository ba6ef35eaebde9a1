//! Closed Newton-Cotes rules computed in exact rational arithmetic.
//!
//! A rule of order `Q` integrates over a panel of `Q` equal steps of width
//! `h` as `h * sum_j W_j f(x_j)`, with
//!
//! ```text
//! W_j = (-1)^(Q-j) / (j! (Q-j)!) * integral_0^Q prod_{i != j} (y - i) dy
//! ```
//!
//! The product is expanded by sequential multiplication of linear factors
//! in big integers and integrated term by term, so every weight is exact.
//! Floats are produced by a single rounding of the final rational.
//!
//! Even orders are one degree more accurate than their odd neighbours: the
//! composite rule has a global error of `O(h^(Q+2))` for even `Q` and
//! `O(h^(Q+1))` for odd `Q` (local panel errors `O(h^(Q+3))` and `O(h^(Q+2))`).

use num_bigint::BigInt;
pub use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Closed Newton-Cotes rule of a given order.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    order: usize,
    weights: Vec<BigRational>,
    weights_f64: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Exact weights `W_0..=W_Q`.
    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    /// Weights rounded once to the nearest double.
    pub fn weights_f64(&self) -> &[f64] {
        &self.weights_f64
    }
}

/// Weights of the composite rule of order `Q` over `N` panels, flattened to
/// one value per node `0..=Q*N`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeWeightVector {
    q: usize,
    n: usize,
    values: Vec<f64>,
}

impl CompositeWeightVector {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of intervals, `Q * N`.
    pub fn m(&self) -> usize {
        self.q * self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// Coefficients `C_0..=C_Q` of `prod_{i=0..=Q, i != j} (y - i)` in ascending
/// powers of `y`.
pub fn lagrange_poly_coeffs(q: usize, j: usize) -> Result<Vec<BigRational>> {
    if j > q {
        return Err(Error::InvalidParameter(format!(
            "node index {j} exceeds order {q}"
        )));
    }
    let mut poly: Vec<BigInt> = vec![BigInt::one()];
    for root in (0..=q).filter(|&i| i != j) {
        let root = BigInt::from(root);
        // Multiply by (y - root).
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &root;
        }
        poly = next;
    }
    Ok(poly.into_iter().map(BigRational::from_integer).collect())
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Exact closed Newton-Cotes weights of order `q`.
pub fn newton_cotes_weights(q: usize) -> Result<QuadratureRule> {
    if q == 0 {
        return Err(Error::ZeroOrder);
    }
    let q_big = BigInt::from(q);
    let mut weights = Vec::with_capacity(q + 1);
    for j in 0..=q {
        let coeffs = lagrange_poly_coeffs(q, j)?;
        let mut integral = BigRational::zero();
        let mut q_pow = q_big.clone();
        for (i, c) in coeffs.iter().enumerate() {
            integral += c * BigRational::new(q_pow.clone(), BigInt::from(i + 1));
            q_pow *= &q_big;
        }
        let mut w = integral / BigRational::from_integer(factorial(j) * factorial(q - j));
        if (q - j) % 2 == 1 {
            w = -w;
        }
        weights.push(w);
    }
    let weights_f64 = weights.iter().map(rational_to_f64).collect();
    Ok(QuadratureRule {
        order: q,
        weights,
        weights_f64,
    })
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Flatten the double sum over panels and panel nodes into one weight per
/// node. Interior panel boundaries receive `W_0 + W_Q`.
pub fn flatten_composite_weights(q: usize, n: usize) -> Result<CompositeWeightVector> {
    let rule = newton_cotes_weights(q)?;
    flatten_rule(&rule, n)
}

pub(crate) fn flatten_rule(rule: &QuadratureRule, n: usize) -> Result<CompositeWeightVector> {
    if n == 0 {
        return Err(Error::ZeroPanels);
    }
    let q = rule.order();
    let m = q * n;
    // Accumulate in exact arithmetic so the shared boundary weight is rounded once.
    let mut boundary = rule.weights()[0].clone();
    boundary += &rule.weights()[q];
    let boundary = rational_to_f64(&boundary);
    let w = rule.weights_f64();
    let mut values = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let j = k % q;
        let v = if k == 0 {
            w[0]
        } else if k == m {
            w[q]
        } else if j == 0 {
            boundary
        } else {
            w[j]
        };
        values.push(v);
    }
    Ok(CompositeWeightVector { q, n, values })
}

/// Composite Newton-Cotes approximation of `integral_a^b f` from `M + 1`
/// equally spaced samples, `M` a multiple of `q`.
pub fn composite_integrate(samples: &[f64], a: f64, b: f64, q: usize) -> Result<f64> {
    if q == 0 {
        return Err(Error::ZeroOrder);
    }
    if !(b > a) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidInterval { a, b });
    }
    if samples.len() < 2 {
        return Err(Error::LengthMismatch {
            expected: q + 1,
            got: samples.len(),
        });
    }
    let m = samples.len() - 1;
    if !m.is_multiple_of(q) {
        return Err(Error::NotDivisible { m, q });
    }
    let weights = flatten_composite_weights(q, m / q)?;
    let sum = neumaier_sum(
        weights
            .values()
            .iter()
            .zip(samples)
            .map(|(w, f)| w * f),
    );
    Ok((b - a) / m as f64 * sum)
}

fn neumaier_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

/// Lagrange coefficients from a floating-point Vandermonde solve.
///
/// Only meant as a cross-check of [`lagrange_poly_coeffs`] for small orders;
/// the system is badly conditioned beyond `Q` of about ten.
#[allow(clippy::needless_range_loop)]
pub fn vandermonde_poly_coeffs(q: usize, j: usize) -> Result<Vec<f64>> {
    if j > q {
        return Err(Error::InvalidParameter(format!(
            "node index {j} exceeds order {q}"
        )));
    }
    if q > 6 {
        return Err(Error::InvalidParameter(format!(
            "Vandermonde cross-check is limited to Q <= 6, got {q}"
        )));
    }
    let n = q + 1;
    // Row k: powers of node k; right-hand side: the product at node k.
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|k| (0..n).map(|i| (k as f64).powi(i as i32)).collect())
        .collect();
    let mut rhs: Vec<f64> = (0..n)
        .map(|k| {
            (0..=q)
                .filter(|&i| i != j)
                .map(|i| k as f64 - i as f64)
                .product()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))
            .unwrap_or(col);
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for c in col..n {
                a[row][c] -= factor * a[col][c];
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|c| a[row][c] * x[c]).sum();
        x[row] = (rhs[row] - tail) / a[row][row];
    }
    Ok(x)
}
