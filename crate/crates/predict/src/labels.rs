//! Affinity label handling: assay targets, label types and the conversion
//! from nanomolar Ki/IC₅₀ readings to binding free energy in kcal/mol.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slope of the free-energy conversion: BA = 1.3633 · log₁₀(Ki in molar).
pub const BA_LOG10_SLOPE: f64 = 1.3633;

/// IC₅₀ readings approximate Ki at half their value.
pub const IC50_TO_KI: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Target {
    MOR,
    KOR,
    DOR,
    HERG,
}

impl Target {
    pub fn parse(name: &str) -> Result<Target> {
        match name.trim().to_ascii_lowercase().as_str() {
            "mor" => Ok(Target::MOR),
            "kor" => Ok(Target::KOR),
            "dor" => Ok(Target::DOR),
            "herg" => Ok(Target::HERG),
            _ => Err(Error::UnknownTarget {
                name: name.to_string(),
            }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Target::MOR => "MOR",
            Target::KOR => "KOR",
            Target::DOR => "DOR",
            Target::HERG => "hERG",
        }
    }
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LabelType {
    Ki,
    Ic50,
}

impl LabelType {
    pub fn parse(name: &str) -> Result<LabelType> {
        match name.trim().to_ascii_lowercase().as_str() {
            "ki" => Ok(LabelType::Ki),
            "ic50" => Ok(LabelType::Ic50),
            _ => Err(Error::UnknownLabelType {
                name: name.to_string(),
            }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LabelType::Ki => "Ki",
            LabelType::Ic50 => "IC50",
        }
    }
}

/// Convert a nanomolar reading to binding affinity in kcal/mol.
///
/// IC₅₀ values are halved into a Ki estimate first; the Ki (converted to
/// molar) then maps through BA = 1.3633 · log₁₀ Ki. More negative output
/// means stronger binding.
pub fn label_to_ba(label_type: LabelType, value_nm: f64) -> Result<f64> {
    if !(value_nm > 0.0) || !value_nm.is_finite() {
        return Err(Error::NonPositiveValue { value: value_nm });
    }
    let ki_nm = match label_type {
        LabelType::Ki => value_nm,
        LabelType::Ic50 => value_nm * IC50_TO_KI,
    };
    let ki_molar = ki_nm * 1e-9;
    Ok(BA_LOG10_SLOPE * ki_molar.log10())
}
