//! Density recovery from a Fourier transform on a uniform frequency grid.
//!
//! Every scheme approximates
//! `f(x_k) = (1 / 2 pi) integral_{-a/2}^{a/2} e^{i y x_k} F[f](y) dy`
//! on the nodes of an [`InversionGrid`] and returns `M` complex samples whose
//! real parts are the density estimates.

mod grid;
mod report;
mod schemes;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

pub use grid::InversionGrid;
pub use report::{
    compare_schemes, evaluate_schemes, format_float, CsvLayout, ErrorReport, PairDifference, ReferencePolicy, SchemeError,
};
pub use schemes::{
    invert_composite_nq, invert_composite_qn, invert_integral, invert_nonweighted, invert_weighted_qn,
};

use crate::error::{Error, Result};
use crate::models::CharacteristicModel;

/// Anything that evaluates `F[f](y)`.
pub trait FourierSource: Sync {
    fn fourier(&self, y: f64) -> Complex64;
}

impl FourierSource for CharacteristicModel {
    fn fourier(&self, y: f64) -> Complex64 {
        CharacteristicModel::fourier(self, y)
    }
}

impl<F> FourierSource for F
where
    F: Fn(f64) -> Complex64 + Sync,
{
    fn fourier(&self, y: f64) -> Complex64 {
        self(y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Direct quadrature sum.
    Integral,
    /// Plain Riemann sum through one FRFT.
    Nonweighted,
    /// Newton-Cotes weights folded into one FRFT.
    WeightedQn,
    /// Composite rule, panel FRFTs first.
    CompositeQn,
    /// Composite rule, rule-node FRFTs first.
    CompositeNq,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [
        Scheme::Integral,
        Scheme::Nonweighted,
        Scheme::WeightedQn,
        Scheme::CompositeQn,
        Scheme::CompositeNq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Integral => "integral",
            Scheme::Nonweighted => "nonweighted",
            Scheme::WeightedQn => "weighted_qn",
            Scheme::CompositeQn => "composite_qn",
            Scheme::CompositeNq => "composite_nq",
        }
    }

    pub fn run<S: FourierSource + ?Sized>(self, source: &S, grid: &InversionGrid) -> Result<DensitySamples> {
        match self {
            Scheme::Integral => invert_integral(source, grid),
            Scheme::Nonweighted => invert_nonweighted(source, grid),
            Scheme::WeightedQn => invert_weighted_qn(source, grid),
            Scheme::CompositeQn => invert_composite_qn(source, grid),
            Scheme::CompositeNq => invert_composite_nq(source, grid),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Scheme::ALL
            .into_iter()
            .find(|sc| sc.name() == key)
            .ok_or_else(|| {
                let names: Vec<_> = Scheme::ALL.iter().map(|s| s.name()).collect();
                Error::InvalidParameter(format!("unknown scheme '{s}' (expected one of {})", names.join(", ")))
            })
    }
}

/// Complex density samples on the output nodes of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySamples {
    scheme: Scheme,
    grid: InversionGrid,
    values: Vec<Complex64>,
}

impl DensitySamples {
    pub(crate) fn new(scheme: Scheme, grid: InversionGrid, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), grid.m());
        DensitySamples { scheme, grid, values }
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn grid(&self) -> &InversionGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Real parts, the density estimates.
    pub fn density(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn nodes(&self) -> Vec<f64> {
        self.grid.output_nodes()
    }

    /// Largest `|Im|` relative to the largest `|Re|`.
    pub fn imag_ratio(&self) -> f64 {
        let re = self.values.iter().fold(0.0f64, |m, v| m.max(v.re.abs()));
        let im = self.values.iter().fold(0.0f64, |m, v| m.max(v.im.abs()));
        if re == 0.0 {
            if im == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            im / re
        }
    }

    /// Riemann mass `gamma sum Re f(x_k)`.
    pub fn mass(&self) -> f64 {
        self.grid.gamma() * self.values.iter().map(|v| v.re).sum::<f64>()
    }
}
