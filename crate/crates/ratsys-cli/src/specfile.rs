//! On-disk spec formats.
//!
//! Two JSON documents share one loader so pipelines compose
//! (`classify -> reduce -> simulate`):
//!
//! * an **original system**: keys `k`, `alpha`, `beta`, `A`, `B`, plus
//!   optional `x0` and `label`;
//! * a **reduced system**: keys `kind`, `pivot`, `components`, plus the same
//!   optional extras.
//!
//! The presence of `kind` decides which one a file is. Numbers round-trip
//! bit-exact: serialization uses the shortest decimal form that re-parses to
//! the same double.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use ratsys::{ReducedSystem, SystemSpec};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemSpecFile {
    pub k: usize,
    pub alpha: Vec<f64>,
    pub beta: Vec<Vec<f64>>,
    #[serde(rename = "A")]
    pub den_const: Vec<f64>,
    #[serde(rename = "B")]
    pub den_coeff: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl SystemSpecFile {
    /// Shape-checks the document against its own `k` and builds the system.
    pub fn to_spec(&self) -> Result<SystemSpec> {
        let k = self.k;
        if self.alpha.len() != k {
            bail!("alpha has wrong shape: expected {k} entries, got {}", self.alpha.len());
        }
        if self.den_const.len() != k {
            bail!("A has wrong shape: expected {k} entries, got {}", self.den_const.len());
        }
        for (name, m) in [("beta", &self.beta), ("B", &self.den_coeff)] {
            if m.len() != k {
                bail!("{name} has wrong shape: expected {k} rows, got {}", m.len());
            }
            for (r, row) in m.iter().enumerate() {
                if row.len() != k {
                    bail!(
                        "{name} has wrong shape: row {} has {} entries, expected {k}",
                        r + 1,
                        row.len()
                    );
                }
            }
        }
        Ok(SystemSpec::new(
            self.alpha.clone(),
            self.beta.clone(),
            self.den_const.clone(),
            self.den_coeff.clone(),
        )?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReducedSystemFile {
    #[serde(flatten)]
    pub system: ReducedSystem,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl ReducedSystemFile {
    /// Consistency checks for hand-written files.
    pub fn checked_system(&self) -> Result<ReducedSystem> {
        let red = &self.system;
        if red.components.is_empty() {
            bail!("components must not be empty");
        }
        if !red.shape_consistent() {
            bail!(
                "components have inconsistent shapes: every affine form needs {} coefficients",
                red.dim()
            );
        }
        if red.pivot < 1 || red.pivot > red.original_dim() {
            bail!("pivot {} out of range 1..={}", red.pivot, red.original_dim());
        }
        for (j, comp) in red.components.iter().enumerate() {
            for form in [&comp.num_a, &comp.num_b, &comp.den_a, &comp.den_b] {
                let all = std::iter::once(form.constant).chain(form.coeffs.iter().copied());
                for v in all {
                    if !v.is_finite() || v < 0.0 {
                        bail!("component {} has a negative or non-finite coefficient ({v})", j + 1);
                    }
                }
            }
        }
        Ok(red.clone())
    }
}

/// Either kind of document, distinguished by the `kind` key.
pub enum SpecDocument {
    Original(SystemSpecFile),
    Reduced(ReducedSystemFile),
}

pub fn load_document(path: &Path) -> Result<SpecDocument> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read spec file {}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .with_context(|| format!("cannot parse {} as JSON", path.display()))?;
    if value.get("kind").is_some() {
        let file: ReducedSystemFile = serde_json::from_value(value)
            .with_context(|| format!("{} is not a valid reduced-system file", path.display()))?;
        Ok(SpecDocument::Reduced(file))
    } else {
        let file: SystemSpecFile = serde_json::from_value(value)
            .with_context(|| format!("{} is not a valid system file", path.display()))?;
        Ok(SpecDocument::Original(file))
    }
}

/// Loads a document that must be an original system.
pub fn load_system(path: &Path) -> Result<SystemSpecFile> {
    match load_document(path)? {
        SpecDocument::Original(file) => Ok(file),
        SpecDocument::Reduced(_) => {
            bail!("{} holds a reduced system; an original system is required", path.display())
        }
    }
}

pub fn save_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

/// Parses a comma-separated list of reals, e.g. `--x0 1,1,2`.
pub fn parse_vector(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .with_context(|| format!("cannot parse `{}` as a number", part.trim()))
        })
        .collect()
}
