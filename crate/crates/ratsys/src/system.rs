//! First-order systems of linear-fractional difference equations and their
//! projective classification.
//!
//! A system of dimension `k` maps a strictly positive state
//! `x = (x_1, .., x_k)` to the state whose `l`-th component is
//!
//! ```text
//! (alpha_l + sum_i beta[l][i] * x_i) / (A_l + sum_i B[l][i] * x_i)
//! ```
//!
//! with nonnegative coefficients. Three coefficient patterns make the map
//! projective (it sends rays from the origin to rays from the origin), which
//! is what allows the dimension-reducing change of variables in [`crate::reduce`]:
//!
//! * **homogeneous**: all constants `alpha_l` and `A_l` are zero;
//! * **linear type**: all `alpha_l` are zero and every equation shares one
//!   denominator (equal `A_l`, identical rows of `B`);
//! * **hyperbolic type**: all `A_l` are zero and every equation shares one
//!   numerator (equal `alpha_l`, identical rows of `beta`).

use crate::error::{BreakdownCause, CoeffField, Error, Result, ValidationIssue, ValidationReport};

/// Denominators below this threshold abort a step with
/// [`BreakdownCause::DenominatorUnderflow`].
pub const DENOMINATOR_GUARD: f64 = 1e-300;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Strictly positive state vector of a system orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct State(Vec<f64>);

impl State {
    /// Builds a state, rejecting empty, non-finite, or non-positive components.
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidInput("state must have at least one component".into()));
        }
        for (i, &v) in components.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "state component {} is not finite ({v})",
                    i + 1
                )));
            }
            if v <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "state component {} must be strictly positive (got {v})",
                    i + 1
                )));
            }
        }
        Ok(State(components))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl std::ops::Deref for State {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Which projective coefficient pattern a system matches, if any.
///
/// When patterns overlap the precedence is
/// `Homogeneous > LinearType > HyperbolicType`. `NonProjective` means "none of
/// the three sufficient patterns holds"; other coefficient patterns may still
/// happen to map rays to rays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectivityClass {
    Homogeneous,
    LinearType,
    HyperbolicType,
    NonProjective,
}

impl ProjectivityClass {
    pub fn is_projective(self) -> bool {
        self != ProjectivityClass::NonProjective
    }

    /// Human-readable statement of the matched coefficient pattern.
    pub fn condition(self) -> &'static str {
        match self {
            ProjectivityClass::Homogeneous => "alpha_l = 0 and A_l = 0 for every equation",
            ProjectivityClass::LinearType => {
                "alpha = 0 and all equations share one denominator (equal A_l, identical B rows)"
            }
            ProjectivityClass::HyperbolicType => {
                "A = 0 and all equations share one numerator (equal alpha_l, identical beta rows)"
            }
            ProjectivityClass::NonProjective => "none of the three projective coefficient patterns holds",
        }
    }
}

impl std::fmt::Display for ProjectivityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ProjectivityClass::Homogeneous => "Homogeneous",
            ProjectivityClass::LinearType => "LinearType",
            ProjectivityClass::HyperbolicType => "HyperbolicType",
            ProjectivityClass::NonProjective => "NonProjective",
        };
        f.write_str(s)
    }
}

/// Coefficient data of a first-order linear-fractional system.
///
/// `num_const`/`num_coeff` hold the numerator constants and matrix
/// (`alpha`, `beta`), `den_const`/`den_coeff` the denominator ones (`A`, `B`).
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSpec {
    num_const: Vec<f64>,
    num_coeff: Vec<Vec<f64>>,
    den_const: Vec<f64>,
    den_coeff: Vec<Vec<f64>>,
}

impl SystemSpec {
    /// Builds a system from its coefficient blocks, checking shapes only.
    ///
    /// Value-level invariants (nonnegativity, nondegenerate rows) are reported
    /// by [`SystemSpec::validate`], so callers can still inspect a bad system.
    pub fn new(
        num_const: Vec<f64>,
        num_coeff: Vec<Vec<f64>>,
        den_const: Vec<f64>,
        den_coeff: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let k = num_const.len();
        let check_vec = |field: CoeffField, len: usize| -> Result<()> {
            if len != k {
                return Err(Error::ShapeMismatch {
                    field,
                    detail: format!("expected {k} entries, got {len}"),
                });
            }
            Ok(())
        };
        let check_matrix = |field: CoeffField, m: &[Vec<f64>]| -> Result<()> {
            if m.len() != k {
                return Err(Error::ShapeMismatch {
                    field,
                    detail: format!("expected {k} rows, got {}", m.len()),
                });
            }
            for (r, row) in m.iter().enumerate() {
                if row.len() != k {
                    return Err(Error::ShapeMismatch {
                        field,
                        detail: format!("row {} has {} entries, expected {k}", r + 1, row.len()),
                    });
                }
            }
            Ok(())
        };
        check_vec(CoeffField::DenConst, den_const.len())?;
        check_matrix(CoeffField::NumCoeff, &num_coeff)?;
        check_matrix(CoeffField::DenCoeff, &den_coeff)?;
        Ok(SystemSpec {
            num_const,
            num_coeff,
            den_const,
            den_coeff,
        })
    }

    pub fn dim(&self) -> usize {
        self.num_const.len()
    }

    pub fn num_const(&self) -> &[f64] {
        &self.num_const
    }

    pub fn num_coeff(&self) -> &[Vec<f64>] {
        &self.num_coeff
    }

    pub fn den_const(&self) -> &[f64] {
        &self.den_const
    }

    pub fn den_coeff(&self) -> &[Vec<f64>] {
        &self.den_coeff
    }

    /// Checks the value-level invariants and reports every violation found.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        let k = self.dim();
        if k == 0 {
            issues.push(ValidationIssue::ZeroDimension);
            return ValidationReport { issues };
        }

        let mut check_entry = |field: CoeffField, row: usize, col: Option<usize>, value: f64| {
            if !value.is_finite() {
                issues.push(ValidationIssue::NonFiniteEntry { field, row: row + 1, col: col.map(|c| c + 1), value });
            } else if value < 0.0 {
                issues.push(ValidationIssue::NegativeEntry { field, row: row + 1, col: col.map(|c| c + 1), value });
            }
        };
        for (l, &v) in self.num_const.iter().enumerate() {
            check_entry(CoeffField::NumConst, l, None, v);
        }
        for (l, &v) in self.den_const.iter().enumerate() {
            check_entry(CoeffField::DenConst, l, None, v);
        }
        for (l, row) in self.num_coeff.iter().enumerate() {
            for (i, &v) in row.iter().enumerate() {
                check_entry(CoeffField::NumCoeff, l, Some(i), v);
            }
        }
        for (l, row) in self.den_coeff.iter().enumerate() {
            for (i, &v) in row.iter().enumerate() {
                check_entry(CoeffField::DenCoeff, l, Some(i), v);
            }
        }

        for l in 0..k {
            if self.num_const[l] + self.num_coeff[l].iter().sum::<f64>() <= 0.0 {
                issues.push(ValidationIssue::ZeroNumeratorRow { row: l + 1 });
            }
            if self.den_const[l] + self.den_coeff[l].iter().sum::<f64>() <= 0.0 {
                issues.push(ValidationIssue::ZeroDenominatorRow { row: l + 1 });
            }
        }
        ValidationReport { issues }
    }

    /// Classifies the system into its projective pattern.
    ///
    /// Comparisons are exact: coefficients are user-supplied data, not
    /// computed values.
    pub fn classify(&self) -> Result<ProjectivityClass> {
        let report = self.validate();
        if !report.passed() {
            return Err(Error::InvalidSpec(report));
        }
        let all_zero = |v: &[f64]| v.iter().all(|&x| x == 0.0);
        let all_equal = |v: &[f64]| v.windows(2).all(|w| w[0] == w[1]);
        let rows_identical = |m: &[Vec<f64>]| m.windows(2).all(|w| w[0] == w[1]);

        let class = if all_zero(&self.num_const) && all_zero(&self.den_const) {
            ProjectivityClass::Homogeneous
        } else if all_zero(&self.num_const)
            && all_equal(&self.den_const)
            && rows_identical(&self.den_coeff)
        {
            ProjectivityClass::LinearType
        } else if all_zero(&self.den_const)
            && all_equal(&self.num_const)
            && rows_identical(&self.num_coeff)
        {
            ProjectivityClass::HyperbolicType
        } else {
            ProjectivityClass::NonProjective
        };
        Ok(class)
    }

    /// One application of the map without constructing a `State`.
    ///
    /// Used by orbit iteration; enforces the denominator guard and checks that
    /// the output stays finite and strictly positive.
    pub(crate) fn step_raw(&self, x: &[f64]) -> std::result::Result<Vec<f64>, BreakdownCause> {
        let k = self.dim();
        let mut out = Vec::with_capacity(k);
        for l in 0..k {
            let den = self.den_const[l] + dot(&self.den_coeff[l], x);
            if den < DENOMINATOR_GUARD {
                return Err(BreakdownCause::DenominatorUnderflow);
            }
            let num = self.num_const[l] + dot(&self.num_coeff[l], x);
            out.push(num / den);
        }
        for &v in &out {
            if !v.is_finite() {
                return Err(BreakdownCause::Overflow);
            }
            if v <= 0.0 {
                return Err(BreakdownCause::StateUnderflow);
            }
        }
        Ok(out)
    }

    /// Applies the map once to a strictly positive state.
    pub fn step(&self, x: &State) -> Result<State> {
        if x.dim() != self.dim() {
            return Err(Error::InvalidInput(format!(
                "state has dimension {}, system has dimension {}",
                x.dim(),
                self.dim()
            )));
        }
        let next = self.step_raw(x.as_slice()).map_err(Error::Breakdown)?;
        Ok(State(next))
    }

    /// Tests whether the images of `x` and `lambda * x` lie on one ray.
    ///
    /// True iff all pairwise component ratios of `step(lambda * x)` agree with
    /// those of `step(x)` within relative tolerance `tol`. For the three
    /// projective patterns this holds for every positive `x` and `lambda`.
    pub fn line_image_parallel(&self, x: &State, lambda: f64, tol: f64) -> Result<bool> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidInput(format!(
                "lambda must be a positive real (got {lambda})"
            )));
        }
        if x.dim() != self.dim() {
            return Err(Error::InvalidInput(format!(
                "state has dimension {}, system has dimension {}",
                x.dim(),
                self.dim()
            )));
        }
        let base = self.step_raw(x.as_slice()).map_err(Error::Breakdown)?;
        let scaled: Vec<f64> = x.iter().map(|&v| lambda * v).collect();
        let image = self.step_raw(&scaled).map_err(Error::Breakdown)?;

        // Cross-multiplied ratio test: b_i/b_j vs a_i/a_j within tol.
        for i in 0..base.len() {
            for j in (i + 1)..base.len() {
                let lhs = image[i] * base[j];
                let rhs = base[i] * image[j];
                if (lhs - rhs).abs() > tol * lhs.abs().max(rhs.abs()) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
