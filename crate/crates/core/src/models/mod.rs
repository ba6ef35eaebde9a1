//! Characteristic-function models and their density oracles.
//!
//! A [`CharacteristicModel`] evaluates the Fourier transform of a density,
//! `F[f](y) = integral e^{-i y x} f(x) dx`, which is the characteristic
//! function evaluated at `-y`.

pub mod gts;
pub mod integrate;
pub mod special;
pub mod vg;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub use gts::{gts_density_oracle, gts_fourier, gts_psi, GtsParams};
pub use special::{bessel_k, log_gamma};
pub use vg::{vg_cf, vg_density_closed, vg_density_oracle, vg_peak_density, VgParams};

use crate::error::{Error, Result};

/// Parameter sets of the fitted VG and GTS models.
pub mod presets {
    use super::{GtsParams, VgParams};

    pub const VG: VgParams = VgParams {
        mu: 0.08476896,
        delta: -0.0577418,
        sigma: 1.02948292,
        alpha: 0.88450029,
        theta: 0.93779517,
    };

    /// Risk-neutral VG parameters.
    pub const VG_STAR: VgParams = VgParams {
        mu: 0.11998901,
        delta: -0.0343164,
        sigma: 0.10294829,
        alpha: 2.54736083,
        theta: 0.98780338,
    };

    pub const GTS: GtsParams = GtsParams {
        mu: -0.693477,
        beta_plus: 0.682290,
        beta_minus: 0.242579,
        alpha_plus: 0.458582,
        alpha_minus: 0.414443,
        lambda_plus: 0.822222,
        lambda_minus: 0.727607,
    };

    /// Risk-neutral GTS parameters.
    pub const GTS_STAR: GtsParams = GtsParams {
        mu: -0.208043,
        beta_plus: 0.682290,
        beta_minus: 0.242579,
        alpha_plus: 0.594234,
        alpha_minus: 4.068436,
        lambda_plus: 84.667097,
        lambda_minus: 70.31591,
    };

    pub const NAMES: [&str; 4] = ["vg", "vg-star", "gts", "gts-star"];
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum CharacteristicModel {
    Vg(VgParams),
    Gts(GtsParams),
}

impl CharacteristicModel {
    pub fn preset(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "vg" => Ok(CharacteristicModel::Vg(presets::VG)),
            "vg-star" | "vg*" => Ok(CharacteristicModel::Vg(presets::VG_STAR)),
            "gts" => Ok(CharacteristicModel::Gts(presets::GTS)),
            "gts-star" | "gts*" => Ok(CharacteristicModel::Gts(presets::GTS_STAR)),
            other => Err(Error::InvalidParameter(format!(
                "unknown model preset '{other}' (expected one of {})",
                presets::NAMES.join(", ")
            ))),
        }
    }

    /// Parse a JSON parameter object.
    ///
    /// Either `"model"` plus every field of that model, or `"preset"` plus any
    /// subset of fields overriding the preset:
    ///
    /// ```text
    /// {"model":"vg","mu":0.1,"delta":-0.03,"sigma":0.1,"alpha":2.5,"theta":1.0}
    /// {"preset":"gts-star","mu":0.0}
    /// ```
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameter(format!("model JSON: {e}")))?;
        let Value::Object(mut fields) = value else {
            return Err(Error::InvalidParameter("model JSON must be an object".into()));
        };
        let model: CharacteristicModel = match fields.remove("preset") {
            Some(Value::String(name)) => {
                let base = Self::preset(&name)?;
                let mut merged = match serde_json::to_value(base) {
                    Ok(Value::Object(m)) => m,
                    _ => Map::new(),
                };
                if let Some(kind) = fields.get("model") {
                    if Some(kind) != merged.get("model") {
                        return Err(Error::InvalidParameter(format!(
                            "preset '{name}' is not a {kind} model"
                        )));
                    }
                }
                merged.extend(fields);
                serde_json::from_value(Value::Object(merged))
            }
            Some(other) => {
                return Err(Error::InvalidParameter(format!(
                    "preset must be a string, got {other}"
                )))
            }
            None => serde_json::from_value(Value::Object(fields)),
        }
        .map_err(|e| Error::InvalidParameter(format!("model JSON: {e}")))?;
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CharacteristicModel::Vg(p) => p.validate(),
            CharacteristicModel::Gts(p) => p.validate(),
        }
    }

    /// `F[f](y)`.
    pub fn fourier(&self, y: f64) -> Complex64 {
        match self {
            CharacteristicModel::Vg(p) => vg_cf(p, y),
            CharacteristicModel::Gts(p) => gts_fourier(p, y),
        }
    }

    /// Location parameter `mu`.
    pub fn location(&self) -> f64 {
        match self {
            CharacteristicModel::Vg(p) => p.mu,
            CharacteristicModel::Gts(p) => p.mu,
        }
    }

    pub fn has_closed_form(&self) -> bool {
        matches!(self, CharacteristicModel::Vg(_))
    }

    /// Reference density: the Bessel closed form for VG (the peak formula at
    /// `y = mu`), the quadrature oracle for GTS.
    pub fn reference_density(&self, y: f64) -> Result<f64> {
        match self {
            CharacteristicModel::Vg(p) if y == p.mu => vg_peak_density(p),
            CharacteristicModel::Vg(p) => vg_density_closed(p, y),
            CharacteristicModel::Gts(p) => gts_density_oracle(p, y),
        }
    }
}
