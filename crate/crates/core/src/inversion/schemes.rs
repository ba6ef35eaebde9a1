use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{DensitySamples, FourierSource, InversionGrid, Scheme};
use crate::error::Result;
use crate::frft::FrftPlan;
use crate::phase::{cis_pi, cis_pi_mul, mul_mod2};
use crate::quadrature::{flatten_composite_weights, newton_cotes_weights};

fn sample<S: FourierSource + ?Sized>(source: &S, grid: &InversionGrid) -> Vec<Complex64> {
    (0..=grid.m())
        .into_par_iter()
        .map(|j| source.fourier(grid.input_node(j)))
        .collect()
}

fn prefactor(grid: &InversionGrid) -> f64 {
    grid.beta() / (2.0 * PI)
}

// e^{-i pi delta M (k + s - M/2)}
fn centering(grid: &InversionGrid, k: usize) -> Complex64 {
    let m = grid.m();
    let d = grid.delta();
    let t = mul_mod2(d, (m * k) as f64) + mul_mod2(d * grid.shift(), m as f64)
        - mul_mod2(0.5 * d, (m * m) as f64);
    cis_pi(-t)
}

// e^{-i pi delta M j}
fn modulation(grid: &InversionGrid, j: usize) -> Complex64 {
    cis_pi(-mul_mod2(grid.delta(), (grid.m() * j) as f64))
}

// e^{2 pi i delta (Q l - M/2) j}
fn block_twist(grid: &InversionGrid, l: usize, j: usize) -> Complex64 {
    let c = 2 * (grid.q() * l) as i64 - grid.m() as i64;
    cis_pi_mul(grid.delta(), (c * j as i64) as f64)
}

fn finish(grid: &InversionGrid, scheme: Scheme, raw: Vec<Complex64>) -> DensitySamples {
    let c = prefactor(grid);
    let values = raw
        .into_iter()
        .enumerate()
        .map(|(k, g)| centering(grid, k) * g * c)
        .collect();
    DensitySamples::new(scheme, *grid, values)
}

/// Direct `O(M^2)` evaluation of the composite Newton-Cotes inversion sum
/// `(beta / 2 pi) sum_j w_j F(y_j) e^{i y_j x_k}`.
pub fn invert_integral<S: FourierSource + ?Sized>(source: &S, grid: &InversionGrid) -> Result<DensitySamples> {
    let w = flatten_composite_weights(grid.q(), grid.n())?.into_values();
    let f = sample(source, grid);
    let weighted: Vec<Complex64> = f.iter().zip(&w).map(|(v, &w)| v * w).collect();
    let m = grid.m() as i64;
    let half_delta = 0.5 * grid.delta();
    let shifted = grid.delta() * grid.shift();
    let c = prefactor(grid);
    let values = (0..grid.m())
        .into_par_iter()
        .map(|k| {
            // 2 delta (j - M/2)(k + s - M/2) with u = 2j - M, v = 2k - M
            let v = 2 * k as i64 - m;
            let sum: Complex64 = weighted
                .iter()
                .enumerate()
                .map(|(j, &x)| {
                    let u = 2 * j as i64 - m;
                    x * cis_pi(mul_mod2(half_delta, (u * v) as f64) + mul_mod2(shifted, u as f64))
                })
                .sum();
            sum * c
        })
        .collect();
    Ok(DensitySamples::new(Scheme::Integral, *grid, values))
}

/// Unweighted Riemann sum over the first `M` nodes, one `M`-long FRFT.
pub fn invert_nonweighted<S: FourierSource + ?Sized>(
    source: &S,
    grid: &InversionGrid,
) -> Result<DensitySamples> {
    let m = grid.m();
    let f = sample(source, grid);
    let x: Vec<Complex64> = (0..m).map(|j| f[j] * modulation(grid, j)).collect();
    let plan = FrftPlan::new(m, Complex64::new(-grid.delta(), 0.0), grid.shift())?;
    Ok(finish(grid, Scheme::Nonweighted, plan.execute(&x)?))
}

/// Weighted Newton-Cotes sum via a single `(M + 1)`-long FRFT of `w_j F(y_j)`.
pub fn invert_weighted_qn<S: FourierSource + ?Sized>(
    source: &S,
    grid: &InversionGrid,
) -> Result<DensitySamples> {
    let m = grid.m();
    let w = flatten_composite_weights(grid.q(), grid.n())?.into_values();
    let f = sample(source, grid);
    let x: Vec<Complex64> = (0..=m).map(|j| f[j] * w[j] * modulation(grid, j)).collect();
    let plan = FrftPlan::new(m + 1, Complex64::new(-grid.delta(), 0.0), grid.shift())?;
    let mut g = plan.execute(&x)?;
    g.truncate(m);
    Ok(finish(grid, Scheme::WeightedQn, g))
}

// N-long plans over the panel index p, one per residue f = k mod Q.
fn panel_plans(grid: &InversionGrid) -> Result<Vec<FrftPlan>> {
    let q = grid.q();
    let alpha = Complex64::new(-grid.delta() * (q * q) as f64, 0.0);
    (0..q)
        .map(|f| FrftPlan::new(grid.n(), alpha, (f as f64 + grid.shift()) / q as f64))
        .collect()
}

// e^{-i pi delta M Q p}
fn panel_twist(grid: &InversionGrid, p: usize) -> Complex64 {
    cis_pi(-mul_mod2(grid.delta(), (grid.m() * grid.q() * p) as f64))
}

/// Composite rule split as `Q + 1` interleaved sub-grids: inner `N`-long
/// FRFTs over panels, then a `(Q + 1)`-long FRFT over the rule nodes.
pub fn invert_composite_qn<S: FourierSource + ?Sized>(
    source: &S,
    grid: &InversionGrid,
) -> Result<DensitySamples> {
    let (q, n) = (grid.q(), grid.n());
    let rule = newton_cotes_weights(q)?;
    let w = rule.weights_f64();
    let f = sample(source, grid);
    let inner_plans = panel_plans(grid)?;
    let twists: Vec<Complex64> = (0..n).map(|p| panel_twist(grid, p)).collect();

    // inner[j][f][l]
    let inner: Vec<Vec<Vec<Complex64>>> = (0..=q)
        .into_par_iter()
        .map(|j| {
            let xi: Vec<Complex64> = (0..n).map(|p| twists[p] * f[j + q * p]).collect();
            inner_plans.iter().map(|plan| plan.execute(&xi)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let outer = FrftPlan::new(q + 1, Complex64::new(-grid.delta(), 0.0), grid.shift())?;
    let blocks: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|l| {
            let twist: Vec<Complex64> = (0..=q).map(|j| block_twist(grid, l, j) * w[j]).collect();
            (0..q)
                .map(|res| {
                    let z: Vec<Complex64> = (0..=q).map(|j| twist[j] * inner[j][res][l]).collect();
                    Ok(outer.execute(&z)?[res])
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(finish(grid, Scheme::CompositeQn, blocks.concat()))
}

/// The same composite sum with the loop order swapped: `(Q + 1)`-long FRFTs
/// over each panel first, then `N`-long FRFTs across panels.
pub fn invert_composite_nq<S: FourierSource + ?Sized>(
    source: &S,
    grid: &InversionGrid,
) -> Result<DensitySamples> {
    let (q, n) = (grid.q(), grid.n());
    let rule = newton_cotes_weights(q)?;
    let w = rule.weights_f64();
    let f = sample(source, grid);
    let inner = FrftPlan::new(q + 1, Complex64::new(-grid.delta(), 0.0), grid.shift())?;
    let outer_plans = panel_plans(grid)?;
    let twists: Vec<Complex64> = (0..n).map(|p| panel_twist(grid, p)).collect();

    let blocks: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|l| {
            let twist: Vec<Complex64> = (0..=q).map(|j| block_twist(grid, l, j) * w[j]).collect();
            // xi[f][p]
            let mut xi = vec![vec![Complex64::new(0.0, 0.0); n]; q];
            for p in 0..n {
                let z: Vec<Complex64> = (0..=q).map(|j| twist[j] * f[j + q * p]).collect();
                let g = inner.execute(&z)?;
                for (res, row) in xi.iter_mut().enumerate() {
                    row[p] = g[res] * twists[p];
                }
            }
            xi.iter()
                .zip(&outer_plans)
                .map(|(row, plan)| Ok(plan.execute(row)?[l]))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(finish(grid, Scheme::CompositeNq, blocks.concat()))
}
