//! Error and validation-report types shared across the crate.

use std::fmt;
use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Coefficient block of a rational system, named as in spec files and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffField {
    /// Numerator constants (`alpha`).
    NumConst,
    /// Numerator coefficient matrix (`beta`).
    NumCoeff,
    /// Denominator constants (`A`).
    DenConst,
    /// Denominator coefficient matrix (`B`).
    DenCoeff,
}

impl CoeffField {
    /// Conventional field name used in spec files and diagnostics.
    pub fn name(self) -> &'static str {
        match self {
            CoeffField::NumConst => "alpha",
            CoeffField::NumCoeff => "beta",
            CoeffField::DenConst => "A",
            CoeffField::DenCoeff => "B",
        }
    }
}

impl fmt::Display for CoeffField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Why an iteration had to stop early.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BreakdownCause {
    /// A denominator fell below the representable-range guard (1e-300).
    DenominatorUnderflow,
    /// A state component left double-precision range (infinite or NaN).
    Overflow,
    /// A state component underflowed to zero and is no longer strictly positive.
    StateUnderflow,
}

impl fmt::Display for BreakdownCause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BreakdownCause::DenominatorUnderflow => "denominator underflow",
            BreakdownCause::Overflow => "overflow",
            BreakdownCause::StateUnderflow => "state underflow",
        };
        f.write_str(s)
    }
}

/// A single defect found while validating a system.
///
/// Equation and variable indices are 1-based, matching the `x_1 .. x_k`
/// numbering used everywhere in reports.
#[derive(Debug, Clone, PartialEq)]
pub enum ValidationIssue {
    /// The system has no equations (`k = 0`).
    ZeroDimension,
    /// An entry is negative.
    NegativeEntry {
        field: CoeffField,
        row: usize,
        col: Option<usize>,
        value: f64,
    },
    /// An entry is NaN or infinite.
    NonFiniteEntry {
        field: CoeffField,
        row: usize,
        col: Option<usize>,
        value: f64,
    },
    /// Numerator of one equation is identically zero (`alpha_l + sum beta_l = 0`).
    ZeroNumeratorRow { row: usize },
    /// Denominator of one equation is identically zero (`A_l + sum B_l = 0`).
    ZeroDenominatorRow { row: usize },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn entry(field: &CoeffField, row: usize, col: &Option<usize>) -> String {
            match col {
                Some(c) => format!("{field}[{row}][{c}]"),
                None => format!("{field}[{row}]"),
            }
        }
        match self {
            ValidationIssue::ZeroDimension => write!(f, "system dimension k must be at least 1"),
            ValidationIssue::NegativeEntry { field, row, col, value } => {
                write!(f, "{} is negative ({value})", entry(field, *row, col))
            }
            ValidationIssue::NonFiniteEntry { field, row, col, value } => {
                write!(f, "{} is not finite ({value})", entry(field, *row, col))
            }
            ValidationIssue::ZeroNumeratorRow { row } => {
                write!(f, "numerator of equation {row} is identically zero")
            }
            ValidationIssue::ZeroDenominatorRow { row } => {
                write!(f, "denominator of equation {row} is identically zero")
            }
        }
    }
}

/// Outcome of validating a [`crate::SystemSpec`]; empty issue list means pass.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return f.write_str("ok");
        }
        let mut first = true;
        for issue in &self.issues {
            if !first {
                f.write_str("; ")?;
            }
            write!(f, "{issue}")?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid system: {0}")]
    InvalidSpec(ValidationReport),
    #[error("{field} has wrong shape: {detail}")]
    ShapeMismatch { field: CoeffField, detail: String },
    #[error("system is not projective: none of the three coefficient patterns holds")]
    NotProjective,
    #[error("dimension too small for reduction (k > 1 required)")]
    DimensionTooSmall,
    #[error("pivot {pivot} out of range 1..={dim}")]
    PivotOutOfRange { pivot: usize, dim: usize },
    #[error("degenerate Riccati parameters: (A + B)(alpha + beta) must be nonzero")]
    DegenerateRiccati,
    #[error("orbit breakdown: {0}")]
    Breakdown(BreakdownCause),
    #[error("orbit too short: need at least {needed} states, have {have}")]
    InsufficientData { needed: usize, have: usize },
    #[error("degenerate boundary case: basins are not classifiable")]
    NotClassifiable,
    #[error("{0}")]
    InvalidInput(String),
}
