use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;

use super::{DensitySamples, InversionGrid, Scheme};
use crate::error::{Error, Result};
use crate::models::CharacteristicModel;

/// Which reference density to compute alongside the schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReferencePolicy {
    None,
    /// Only when the model has a closed form (VG).
    #[default]
    ClosedForm,
    /// Closed form where available, quadrature oracle otherwise.
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairDifference {
    pub first: Scheme,
    pub second: Scheme,
    pub max_abs: f64,
    pub mean_abs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchemeError {
    pub scheme: Scheme,
    pub max_abs: f64,
    pub mean_abs: f64,
    pub max_imag_ratio: f64,
    pub mass: f64,
}

/// Side-by-side results of several schemes on one grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub grid: InversionGrid,
    #[serde(skip)]
    pub samples: Vec<DensitySamples>,
    #[serde(skip)]
    pub reference: Option<Vec<f64>>,
    pub pairwise: Vec<PairDifference>,
    /// Errors against the reference; empty without one.
    pub errors: Vec<SchemeError>,
}

fn abs_stats(a: &[f64], b: &[f64]) -> (f64, f64) {
    let mut max = 0.0f64;
    let mut sum = 0.0;
    for (x, y) in a.iter().zip(b) {
        let d = (x - y).abs();
        max = max.max(d);
        sum += d;
    }
    (max, sum / a.len().max(1) as f64)
}

/// Run `schemes` on `grid` and tabulate pairwise and reference differences of
/// the real parts. Needs at least two schemes; see [`evaluate_schemes`] for
/// a single one.
pub fn compare_schemes(
    model: &CharacteristicModel,
    grid: &InversionGrid,
    schemes: &[Scheme],
    policy: ReferencePolicy,
) -> Result<ErrorReport> {
    if schemes.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "comparison needs at least two schemes, got {}",
            schemes.len()
        )));
    }
    evaluate_schemes(model, grid, schemes, policy)
}

/// [`compare_schemes`] without the two-scheme minimum.
pub fn evaluate_schemes(
    model: &CharacteristicModel,
    grid: &InversionGrid,
    schemes: &[Scheme],
    policy: ReferencePolicy,
) -> Result<ErrorReport> {
    if schemes.is_empty() {
        return Err(Error::InvalidParameter("no schemes selected".into()));
    }
    let samples = schemes
        .iter()
        .map(|s| s.run(model, grid))
        .collect::<Result<Vec<_>>>()?;
    let want_reference = match policy {
        ReferencePolicy::None => false,
        ReferencePolicy::ClosedForm => model.has_closed_form(),
        ReferencePolicy::Oracle => true,
    };
    let reference = if want_reference {
        Some(
            grid.output_nodes()
                .into_par_iter()
                .map(|x| model.reference_density(x))
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        None
    };
    Ok(ErrorReport::from_samples(*grid, samples, reference))
}

impl ErrorReport {
    pub fn from_samples(grid: InversionGrid, samples: Vec<DensitySamples>, reference: Option<Vec<f64>>) -> Self {
        let dens: Vec<Vec<f64>> = samples.iter().map(|s| s.density()).collect();
        let mut pairwise = Vec::new();
        for i in 0..samples.len() {
            for j in i + 1..samples.len() {
                let (max_abs, mean_abs) = abs_stats(&dens[i], &dens[j]);
                pairwise.push(PairDifference {
                    first: samples[i].scheme(),
                    second: samples[j].scheme(),
                    max_abs,
                    mean_abs,
                });
            }
        }
        let errors = match &reference {
            Some(r) => samples
                .iter()
                .zip(&dens)
                .map(|(s, d)| {
                    let (max_abs, mean_abs) = abs_stats(d, r);
                    SchemeError {
                        scheme: s.scheme(),
                        max_abs,
                        mean_abs,
                        max_imag_ratio: s.imag_ratio(),
                        mass: s.mass(),
                    }
                })
                .collect(),
            None => Vec::new(),
        };
        ErrorReport {
            grid,
            samples,
            reference,
            pairwise,
            errors,
        }
    }

    pub fn samples_for(&self, scheme: Scheme) -> Option<&DensitySamples> {
        self.samples.iter().find(|s| s.scheme() == scheme)
    }

    pub fn pair(&self, a: Scheme, b: Scheme) -> Option<&PairDifference> {
        self.pairwise
            .iter()
            .find(|p| (p.first == a && p.second == b) || (p.first == b && p.second == a))
    }

    pub fn error(&self, scheme: Scheme) -> Option<&SchemeError> {
        self.errors.iter().find(|e| e.scheme == scheme)
    }

    /// Largest `|Re f|` over all schemes.
    pub fn peak(&self) -> f64 {
        self.samples
            .iter()
            .flat_map(|s| s.values().iter().map(|v| v.re.abs()))
            .fold(0.0, f64::max)
    }

    /// Largest pairwise max difference relative to [`ErrorReport::peak`].
    pub fn max_relative_pair_difference(&self) -> f64 {
        let worst = self.pairwise.iter().map(|p| p.max_abs).fold(0.0, f64::max);
        if worst == 0.0 {
            0.0
        } else {
            worst / self.peak()
        }
    }

    /// Column names of [`ErrorReport::write_csv`].
    pub fn csv_header(&self, layout: CsvLayout) -> Vec<String> {
        let names: Vec<&str> = self.samples.iter().map(|s| s.scheme().name()).collect();
        let mut header = Vec::new();
        if layout.q_column {
            header.push("q".to_string());
        }
        header.push("k".into());
        header.push("x".into());
        header.extend(names.iter().map(|n| n.to_string()));
        header.push("reference".into());
        header.extend(names.iter().map(|n| format!("abs_error_{n}")));
        if layout.differences {
            for i in 0..names.len() {
                for j in i + 1..names.len() {
                    header.push(format!("diff_{}_{}", names[i], names[j]));
                }
            }
        }
        header
    }

    /// One row per output node: densities, reference, absolute errors and,
    /// when requested, signed pairwise differences `first - second`. Cells
    /// without a reference are left empty.
    pub fn write_csv<W: Write>(&self, mut out: W, layout: CsvLayout) -> io::Result<()> {
        if layout.header {
            writeln!(out, "{}", self.csv_header(layout).join(","))?;
        }
        let dens: Vec<Vec<f64>> = self.samples.iter().map(|s| s.density()).collect();
        for k in 0..self.grid.m() {
            let mut row = Vec::new();
            if layout.q_column {
                row.push(self.grid.q().to_string());
            }
            row.push(k.to_string());
            row.push(format_float(self.grid.output_node(k)));
            row.extend(dens.iter().map(|d| format_float(d[k])));
            match &self.reference {
                Some(r) => {
                    row.push(format_float(r[k]));
                    row.extend(dens.iter().map(|d| format_float((d[k] - r[k]).abs())));
                }
                None => row.extend(std::iter::repeat_n(String::new(), dens.len() + 1)),
            }
            if layout.differences {
                for i in 0..dens.len() {
                    for j in i + 1..dens.len() {
                        row.push(format_float(dens[i][k] - dens[j][k]));
                    }
                }
            }
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Column options for [`ErrorReport::write_csv`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CsvLayout {
    pub header: bool,
    /// Leading `q` column, for stacking reports of several orders.
    pub q_column: bool,
    pub differences: bool,
}

/// Round-trippable scientific notation with 17 significant digits.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}
