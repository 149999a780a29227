//! Case study `ex3`: a 3D homogeneous system governed by the sum ratio
//! `w = (x + y) / z`, with a bistable/extinction dichotomy and explicit
//! basins of attraction.
//!
//! ```text
//! x' = (x + y) / (A1 z + x + y)
//! y' = (x + y) / (A2 z + x + y)
//! z' = (alpha z + x + y) / (x + y)
//! ```
//!
//! with `alpha, A1, A2 > 0`. In ratio coordinates the sum `w = u + v` obeys
//! the scalar map
//!
//! ```text
//! f(w) = w^2 / (alpha + w) * (1/(A1 + w) + 1/(A2 + w)),
//! ```
//!
//! which is monotone increasing with `f(0) = 0`, so stair-step analysis
//! settles everything. Positive equilibria of `f` are the positive roots of
//!
//! ```text
//! P(w) = -w^3 + (2 - A1 - A2 - alpha) w^2
//!        + (A1 + A2 - alpha A1 - alpha A2 - A1 A2) w - alpha A1 A2,
//! ```
//!
//! of which there are either zero (**extinction**: `w -> 0`, so upstairs
//! `x, y -> 0` and `z -> inf`) or two, `0 < w1 < w2` (**bistable**: `[0, w1)`
//! falls to zero, `w1` is a repelling fixed point, `(w1, inf)` is attracted
//! to `w2`). The sign of `P` at its positive critical point `w_m` (the larger
//! root of `P'`) decides the side; an exact zero there is impossible by the
//! sign-count argument, so a small band around it is reported as a degenerate
//! boundary instead of forcing a side.

use crate::analysis::cubic;
use crate::error::{Error, Result};
use crate::system::SystemSpec;

/// Relative band on `P(w_m)` inside which the case is reported as
/// [`Example3Case::DegenerateBoundary`].
const PEAK_BAND: f64 = 1e-12;

/// Positive parameters `(alpha, A1, A2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Example3Params {
    pub alpha: f64,
    pub a1: f64,
    pub a2: f64,
}

impl Example3Params {
    pub fn new(alpha: f64, a1: f64, a2: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("A1", a1), ("A2", a2)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "parameter {name} must be strictly positive (got {v})"
                )));
            }
        }
        Ok(Example3Params { alpha, a1, a2 })
    }

    /// The system as coefficient data; classifies as homogeneous.
    pub fn system(&self) -> SystemSpec {
        SystemSpec::new(
            vec![0.0, 0.0, 0.0],
            vec![
                vec![1.0, 1.0, 0.0],
                vec![1.0, 1.0, 0.0],
                vec![1.0, 1.0, self.alpha],
            ],
            vec![0.0, 0.0, 0.0],
            vec![
                vec![1.0, 1.0, self.a1],
                vec![1.0, 1.0, self.a2],
                vec![1.0, 1.0, 0.0],
            ],
        )
        .expect("fixed 3x3 shape")
    }
}

/// Scalar reduced map `f(w)`; strictly increasing on `[0, inf)` with `f(0) = 0`.
pub fn example3_scalar_map(p: &Example3Params, w: f64) -> f64 {
    w * w / (p.alpha + w) * (1.0 / (p.a1 + w) + 1.0 / (p.a2 + w))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example3Case {
    /// `w = 0` is globally attracting: `x, y -> 0`, `z -> inf`.
    Extinction,
    /// Two positive equilibria `w1 < w2` with basins `[0, w1)`, `{w1}`, `(w1, inf)`.
    Bistable,
    /// `P(w_m)` sits inside the tolerance band; basins are not classifiable.
    DegenerateBoundary,
}

impl std::fmt::Display for Example3Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Example3Case::Extinction => "Extinction",
            Example3Case::Bistable => "Bistable",
            Example3Case::DegenerateBoundary => "DegenerateBoundary",
        };
        f.write_str(s)
    }
}

/// Which of the listed parameter conditions decided the case. The "linear
/// term" is the coefficient `c1 = A1 + A2 - alpha A1 - alpha A2 - A1 A2` of
/// `P`, whose sign controls whether `P` has a positive critical point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example3Condition {
    /// `c1 < 0` and `2(2 - A1 - A2 - alpha) <= sqrt(-12 c1)`: `P'` has no
    /// positive root, so `P < 0` on `(0, inf)`.
    ExtinctionNegativeLinearTerm,
    /// `c1 = 0` and `A1 + A2 + alpha >= 2`: `P` has no sign change.
    ExtinctionZeroLinearTerm,
    /// `P(w_m) < 0`: the positive peak of `P` stays below the axis.
    ExtinctionNegativePeak,
    /// `c1 < 0`, `2(2 - A1 - A2 - alpha) > sqrt(-12 c1)`, and `P(w_m) > 0`.
    BistableNegativeLinearTerm,
    /// `c1 = 0`, `A1 + A2 + alpha < 2`, and `P(w_m) > 0`.
    BistableZeroLinearTerm,
    /// `c1 > 0` and `P(w_m) > 0`.
    BistablePositiveLinearTerm,
    /// `|P(w_m)|` within the degenerate tolerance band.
    DegeneratePeak,
}

impl std::fmt::Display for Example3Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Example3Condition::ExtinctionNegativeLinearTerm => {
                "linear coefficient of P negative with no positive critical point"
            }
            Example3Condition::ExtinctionZeroLinearTerm => {
                "linear coefficient of P zero with A1 + A2 + alpha >= 2"
            }
            Example3Condition::ExtinctionNegativePeak => "P(w_m) < 0",
            Example3Condition::BistableNegativeLinearTerm => {
                "linear coefficient of P negative, positive critical point, P(w_m) > 0"
            }
            Example3Condition::BistableZeroLinearTerm => {
                "linear coefficient of P zero with A1 + A2 + alpha < 2 and P(w_m) > 0"
            }
            Example3Condition::BistablePositiveLinearTerm => {
                "linear coefficient of P positive and P(w_m) > 0"
            }
            Example3Condition::DegeneratePeak => "P(w_m) within the degenerate tolerance band",
        };
        f.write_str(s)
    }
}

/// Full classification of one parameter triple.
#[derive(Debug, Clone, PartialEq)]
pub struct Example3Analysis {
    /// Coefficients of `P` in descending powers: `[-1, c2, c1, c0]`.
    pub poly: [f64; 4],
    /// Positive critical point of `P`, when one exists.
    pub w_m: Option<f64>,
    /// `P(w_m)`.
    pub p_at_wm: Option<f64>,
    pub case: Example3Case,
    pub condition: Example3Condition,
    /// `(w1, w2)` with `0 < w1 < w2`; present exactly in the bistable case.
    pub roots: Option<(f64, f64)>,
}

impl Example3Analysis {
    /// Boundary of the extinction basin in the bistable case.
    pub fn basin_boundary(&self) -> Option<f64> {
        self.roots.map(|r| r.0)
    }
}

fn resolve_peak(
    poly: [f64; 4],
    scale: f64,
    w_m: f64,
    bistable_condition: Example3Condition,
) -> Example3Analysis {
    let p_at_wm = cubic::eval(&poly, w_m);
    let (case, condition, roots) = if p_at_wm.abs() < PEAK_BAND * scale {
        (
            Example3Case::DegenerateBoundary,
            Example3Condition::DegeneratePeak,
            None,
        )
    } else if p_at_wm < 0.0 {
        (
            Example3Case::Extinction,
            Example3Condition::ExtinctionNegativePeak,
            None,
        )
    } else {
        let roots = cubic::positive_roots(&poly, &[w_m]);
        assert_eq!(
            roots.len(),
            2,
            "sign scan must isolate exactly two positive equilibria when P(w_m) > 0"
        );
        (
            Example3Case::Bistable,
            bistable_condition,
            Some((roots[0], roots[1])),
        )
    };
    Example3Analysis {
        poly,
        w_m: Some(w_m),
        p_at_wm: Some(p_at_wm),
        case,
        condition,
        roots,
    }
}

/// Classifies the parameter triple, locating the positive equilibria in the
/// bistable case by bracketed bisection.
pub fn example3_analyze(p: &Example3Params) -> Example3Analysis {
    let (alpha, a1, a2) = (p.alpha, p.a1, p.a2);
    let c2 = 2.0 - a1 - a2 - alpha;
    let c1 = a1 + a2 - alpha * a1 - alpha * a2 - a1 * a2;
    let c0 = -(alpha * a1 * a2);
    let poly = [-1.0, c2, c1, c0];
    let scale = poly.iter().map(|v| v.abs()).fold(0.0, f64::max);

    // Larger root of P'(w) = -3 w^2 + 2 c2 w + c1, defined when the radicand
    // 4 c2^2 + 12 c1 is nonnegative.
    let critical = |radicand: f64| (2.0 * c2 + radicand.sqrt()) / 6.0;

    if c1 < 0.0 {
        if 2.0 * c2 <= (-12.0 * c1).sqrt() {
            // P' < 0 on (0, inf) apart from a possible tangency, and
            // P(0) < 0, so P has no positive roots.
            return Example3Analysis {
                poly,
                w_m: None,
                p_at_wm: None,
                case: Example3Case::Extinction,
                condition: Example3Condition::ExtinctionNegativeLinearTerm,
                roots: None,
            };
        }
        let w_m = critical(4.0 * c2 * c2 + 12.0 * c1);
        resolve_peak(poly, scale, w_m, Example3Condition::BistableNegativeLinearTerm)
    } else if c1 == 0.0 {
        if a1 + a2 + alpha >= 2.0 {
            return Example3Analysis {
                poly,
                w_m: None,
                p_at_wm: None,
                case: Example3Case::Extinction,
                condition: Example3Condition::ExtinctionZeroLinearTerm,
                roots: None,
            };
        }
        let w_m = critical(4.0 * c2 * c2);
        resolve_peak(poly, scale, w_m, Example3Condition::BistableZeroLinearTerm)
    } else {
        let w_m = critical(4.0 * c2 * c2 + 12.0 * c1);
        resolve_peak(poly, scale, w_m, Example3Condition::BistablePositiveLinearTerm)
    }
}

/// Which attractor the scalar orbit from `w0` reaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basin {
    ToZero,
    AtW1,
    ToW2,
}

impl std::fmt::Display for Basin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Basin::ToZero => "ToZero",
            Basin::AtW1 => "AtW1",
            Basin::ToW2 => "ToW2",
        };
        f.write_str(s)
    }
}

/// Basin membership of `w0 = (x0 + y0) / z0`.
///
/// Membership of the single-point basin `{w1}` uses exact equality: `w1` is
/// repelling, so any tolerance band would misclassify nearby points. Callers
/// wanting that case should set `w0` to the computed root itself.
pub fn example3_basin(analysis: &Example3Analysis, w0: f64) -> Result<Basin> {
    if !w0.is_finite() || w0 < 0.0 {
        return Err(Error::InvalidInput(format!(
            "w0 must be a nonnegative real (got {w0})"
        )));
    }
    match analysis.case {
        Example3Case::DegenerateBoundary => Err(Error::NotClassifiable),
        Example3Case::Extinction => Ok(Basin::ToZero),
        Example3Case::Bistable => {
            let (w1, _) = analysis.roots.expect("bistable analysis carries roots");
            Ok(if w0 < w1 {
                Basin::ToZero
            } else if w0 == w1 {
                Basin::AtW1
            } else {
                Basin::ToW2
            })
        }
    }
}

/// A limit that is either a finite value or unbounded growth; infinity is an
/// explicit marker, never a floating-point value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitValue {
    Finite(f64),
    Unbounded,
}

impl LimitValue {
    pub fn as_finite(&self) -> Option<f64> {
        match self {
            LimitValue::Finite(v) => Some(*v),
            LimitValue::Unbounded => None,
        }
    }
}

impl std::fmt::Display for LimitValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LimitValue::Finite(v) => write!(f, "{v}"),
            LimitValue::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// Limits of `(x_n, y_n, z_n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitTriple {
    pub x: LimitValue,
    pub y: LimitValue,
    pub z: LimitValue,
}

fn triple_at(p: &Example3Params, w: f64) -> LimitTriple {
    LimitTriple {
        x: LimitValue::Finite(w / (p.a1 + w)),
        y: LimitValue::Finite(w / (p.a2 + w)),
        z: LimitValue::Finite(1.0 + p.alpha / w),
    }
}

/// Limit triple of the original variables for the orbit with
/// `w0 = (x0 + y0) / z0`.
pub fn example3_limits(
    analysis: &Example3Analysis,
    p: &Example3Params,
    w0: f64,
) -> Result<LimitTriple> {
    let basin = example3_basin(analysis, w0)?;
    Ok(match basin {
        Basin::ToZero => LimitTriple {
            x: LimitValue::Finite(0.0),
            y: LimitValue::Finite(0.0),
            z: LimitValue::Unbounded,
        },
        Basin::AtW1 => triple_at(p, analysis.roots.expect("bistable").0),
        Basin::ToW2 => triple_at(p, analysis.roots.expect("bistable").1),
    })
}
