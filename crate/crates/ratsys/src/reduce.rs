//! Dimension-reducing changes of variables for projective systems.
//!
//! For a projective system of dimension `k > 1`, dividing every equation by
//! the update of one chosen *pivot* variable turns the ratios
//! `u_i = x_i / x_pivot` into an autonomous system of dimension `k - 1`. Each
//! reduced component is a ratio of products of affine forms in the ratios:
//!
//! * homogeneous: `u_j' = (beta_j-form)(B_pivot-form) / ((beta_pivot-form)(B_j-form))`
//! * linear type: `v_j' = (beta_j-form) / (beta_pivot-form)`
//! * hyperbolic type: `w_j' = (B_pivot-form) / (B_j-form)`
//!
//! where the form built from row `r` has the pivot-column entry as its
//! constant and the remaining columns, in ascending order, as coefficients.
//!
//! The module also provides the planar linear lift of the scalar Riccati
//! equation `x' = (alpha + beta x)/(A + B x)`: iterating
//! `(y, z) -> (beta y + alpha z, B y + A z)` from `(x0, 1)` keeps
//! `y_n / z_n = x_n` for all `n`.

use serde::{Deserialize, Serialize};

use crate::error::{BreakdownCause, Error, Result};
use crate::system::{ProjectivityClass, State, SystemSpec, DENOMINATOR_GUARD};

/// Affine expression `constant + sum_i coeffs[i] * u_i` over the reduced
/// variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineForm {
    pub constant: f64,
    pub coeffs: Vec<f64>,
}

impl AffineForm {
    /// The constant form `1`, used for the unused product slots of the linear
    /// and hyperbolic reductions so all three kinds share one evaluator.
    pub fn one(arity: usize) -> Self {
        AffineForm {
            constant: 1.0,
            coeffs: vec![0.0; arity],
        }
    }

    /// Builds the form for matrix row `row`: pivot column becomes the
    /// constant, the other columns (ascending) become the coefficients.
    fn from_row(row: &[f64], pivot: usize, others: &[usize]) -> Self {
        AffineForm {
            constant: row[pivot],
            coeffs: others.iter().map(|&i| row[i]).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_one(&self) -> bool {
        self.constant == 1.0 && self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn eval(&self, u: &[f64]) -> f64 {
        debug_assert_eq!(u.len(), self.coeffs.len());
        self.constant + self.coeffs.iter().zip(u).map(|(c, x)| c * x).sum::<f64>()
    }
}

/// Which change of variables produced a reduced system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReducedKind {
    HomogeneousReduced,
    LinearReduced,
    HyperbolicReduced,
}

impl std::fmt::Display for ReducedKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ReducedKind::HomogeneousReduced => "HomogeneousReduced",
            ReducedKind::LinearReduced => "LinearReduced",
            ReducedKind::HyperbolicReduced => "HyperbolicReduced",
        };
        f.write_str(s)
    }
}

/// One reduced update `u_j' = (num_a * num_b) / (den_a * den_b)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedComponent {
    pub num_a: AffineForm,
    pub num_b: AffineForm,
    pub den_a: AffineForm,
    pub den_b: AffineForm,
}

/// The `(k-1)`-dimensional map satisfied by the pivot ratios
/// `u_i = x_i / x_pivot` along orbits of a projective system.
///
/// Stored as explicit coefficient data so it can be serialized, printed, and
/// compared structurally. `pivot` is the 1-based number of the divisor
/// variable in the original system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedSystem {
    pub kind: ReducedKind,
    pub pivot: usize,
    pub components: Vec<ReducedComponent>,
}

impl ReducedSystem {
    /// Dimension of the reduced state (`k - 1`).
    pub fn dim(&self) -> usize {
        self.components.len()
    }

    /// Dimension of the original system this was reduced from.
    pub fn original_dim(&self) -> usize {
        self.components.len() + 1
    }

    pub(crate) fn eval_raw(&self, u: &[f64]) -> std::result::Result<Vec<f64>, BreakdownCause> {
        let mut out = Vec::with_capacity(self.components.len());
        for comp in &self.components {
            let den = comp.den_a.eval(u) * comp.den_b.eval(u);
            if den < DENOMINATOR_GUARD {
                return Err(BreakdownCause::DenominatorUnderflow);
            }
            let num = comp.num_a.eval(u) * comp.num_b.eval(u);
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

    /// Applies the reduced map once to a strictly positive ratio vector.
    pub fn eval(&self, u: &[f64]) -> Result<Vec<f64>> {
        if u.len() != self.dim() {
            return Err(Error::InvalidInput(format!(
                "reduced state has dimension {}, expected {}",
                u.len(),
                self.dim()
            )));
        }
        if u.iter().any(|&v| !v.is_finite() || v <= 0.0) {
            return Err(Error::InvalidInput(
                "reduced state components must be strictly positive".into(),
            ));
        }
        self.eval_raw(u).map_err(Error::Breakdown)
    }

    /// Checks internal shape consistency (every form has arity `k - 1`).
    pub fn shape_consistent(&self) -> bool {
        let arity = self.dim();
        self.components.iter().all(|c| {
            c.num_a.arity() == arity
                && c.num_b.arity() == arity
                && c.den_a.arity() == arity
                && c.den_b.arity() == arity
        })
    }
}

/// Reduced-variable names used by the pretty-printer: `u` for one variable,
/// `u, v` / `u, v, w` for two or three, `u1..un` beyond that.
fn var_names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["u".into()],
        2 => vec!["u".into(), "v".into()],
        3 => vec!["u".into(), "v".into(), "w".into()],
        _ => (1..=n).map(|i| format!("u{i}")).collect(),
    }
}

fn form_string(form: &AffineForm, names: &[String]) -> String {
    let mut s = format!("{}", form.constant);
    for (c, name) in form.coeffs.iter().zip(names) {
        if *c != 0.0 {
            s.push_str(&format!(" + {c}*{name}"));
        }
    }
    s
}

fn product_string(a: &AffineForm, b: &AffineForm, names: &[String]) -> String {
    let mut factors = Vec::new();
    for form in [a, b] {
        if !form.is_one() {
            factors.push(format!("({})", form_string(form, names)));
        }
    }
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.concat()
    }
}

impl std::fmt::Display for ReducedSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names = var_names(self.dim());
        for (j, comp) in self.components.iter().enumerate() {
            let num = product_string(&comp.num_a, &comp.num_b, &names);
            let den = product_string(&comp.den_a, &comp.den_b, &names);
            if j > 0 {
                writeln!(f)?;
            }
            if den == "1" {
                write!(f, "{}' = {}", names[j], num)?;
            } else {
                write!(f, "{}' = {} / {}", names[j], num, den)?;
            }
        }
        Ok(())
    }
}

/// Performs the change of variables `u_i = x_i / x_pivot` on a projective
/// system, permuting indices so any pivot may play the divisor role.
pub fn reduce(spec: &SystemSpec, pivot: usize) -> Result<ReducedSystem> {
    let k = spec.dim();
    if k < 2 {
        return Err(Error::DimensionTooSmall);
    }
    if pivot < 1 || pivot > k {
        return Err(Error::PivotOutOfRange { pivot, dim: k });
    }
    let class = spec.classify()?;
    let p = pivot - 1;
    let others: Vec<usize> = (0..k).filter(|&i| i != p).collect();
    let arity = k - 1;

    let beta_form = |row: usize| AffineForm::from_row(&spec.num_coeff()[row], p, &others);
    let b_form = |row: usize| AffineForm::from_row(&spec.den_coeff()[row], p, &others);

    let (kind, components) = match class {
        ProjectivityClass::Homogeneous => {
            let comps = others
                .iter()
                .map(|&j| ReducedComponent {
                    num_a: beta_form(j),
                    num_b: b_form(p),
                    den_a: beta_form(p),
                    den_b: b_form(j),
                })
                .collect();
            (ReducedKind::HomogeneousReduced, comps)
        }
        ProjectivityClass::LinearType => {
            let comps = others
                .iter()
                .map(|&j| ReducedComponent {
                    num_a: beta_form(j),
                    num_b: AffineForm::one(arity),
                    den_a: beta_form(p),
                    den_b: AffineForm::one(arity),
                })
                .collect();
            (ReducedKind::LinearReduced, comps)
        }
        ProjectivityClass::HyperbolicType => {
            let comps = others
                .iter()
                .map(|&j| ReducedComponent {
                    num_a: b_form(p),
                    num_b: AffineForm::one(arity),
                    den_a: b_form(j),
                    den_b: AffineForm::one(arity),
                })
                .collect();
            (ReducedKind::HyperbolicReduced, comps)
        }
        ProjectivityClass::NonProjective => return Err(Error::NotProjective),
    };

    Ok(ReducedSystem {
        kind,
        pivot,
        components,
    })
}

/// Projects a state to its pivot ratios `(x_i / x_pivot)` for `i != pivot`,
/// in ascending index order.
pub fn project(x: &State, pivot: usize) -> Result<Vec<f64>> {
    let k = x.dim();
    if pivot < 1 || pivot > k {
        return Err(Error::PivotOutOfRange { pivot, dim: k });
    }
    let p = pivot - 1;
    let xp = x[p];
    Ok(x.iter()
        .enumerate()
        .filter(|&(i, _)| i != p)
        .map(|(_, &v)| v / xp)
        .collect())
}

/// Planar linear lift of the scalar Riccati equation.
///
/// The matrix `[[beta, alpha], [B, A]]` acts on `(y, z)`; starting from
/// `(x0, 1)` the ratio `y_n / z_n` reproduces the Riccati orbit exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct RiccatiLift {
    matrix: [[f64; 2]; 2],
    initial: (f64, f64),
}

impl RiccatiLift {
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        self.matrix
    }

    pub fn initial(&self) -> (f64, f64) {
        self.initial
    }

    /// One step of the linear system.
    pub fn advance(&self, (y, z): (f64, f64)) -> (f64, f64) {
        (
            self.matrix[0][0] * y + self.matrix[0][1] * z,
            self.matrix[1][0] * y + self.matrix[1][1] * z,
        )
    }

    /// The ratios `y_n / z_n` for `n = 0..=steps`.
    pub fn ratio_orbit(&self, steps: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(steps + 1);
        let mut yz = self.initial;
        out.push(yz.0 / yz.1);
        for _ in 0..steps {
            yz = self.advance(yz);
            out.push(yz.0 / yz.1);
        }
        out
    }
}

/// Builds the linear lift of `x' = (alpha + beta x)/(A + B x)` from `x0`.
///
/// Parameters must be nonnegative with `(A + B)(alpha + beta) != 0`, which
/// keeps every `y_n`, `z_n` positive.
pub fn lift_riccati(alpha: f64, beta: f64, a: f64, b: f64, x0: f64) -> Result<RiccatiLift> {
    for (name, v) in [("alpha", alpha), ("beta", beta), ("A", a), ("B", b)] {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::InvalidInput(format!(
                "{name} must be a nonnegative real (got {v})"
            )));
        }
    }
    if (a + b) * (alpha + beta) == 0.0 {
        return Err(Error::DegenerateRiccati);
    }
    if !x0.is_finite() || x0 <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "x0 must be strictly positive (got {x0})"
        )));
    }
    Ok(RiccatiLift {
        matrix: [[beta, alpha], [b, a]],
        initial: (x0, 1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn homogeneous_2d() -> SystemSpec {
        SystemSpec::new(
            vec![0.0, 0.0],
            vec![vec![1.0, 2.0], vec![3.0, 4.0]],
            vec![0.0, 0.0],
            vec![vec![1.0, 1.0], vec![2.0, 1.0]],
        )
        .unwrap()
    }

    fn reciprocal_3d(a: f64, b: f64, c: f64, d: f64) -> SystemSpec {
        // x' = 1/(A z + B y), y' = 1/(C z + D x), z' = 1/z.
        SystemSpec::new(
            vec![1.0, 1.0, 1.0],
            vec![vec![0.0; 3]; 3],
            vec![0.0, 0.0, 0.0],
            vec![
                vec![0.0, b, a],
                vec![d, 0.0, c],
                vec![0.0, 0.0, 1.0],
            ],
        )
        .unwrap()
    }

    #[test]
    fn homogeneous_reduction_builds_expected_forms() {
        let red = reduce(&homogeneous_2d(), 2).unwrap();
        assert_eq!(red.kind, ReducedKind::HomogeneousReduced);
        assert_eq!(red.dim(), 1);
        let comp = &red.components[0];
        // u' = ((2 + u)(1 + 2u)) / ((4 + 3u)(1 + u))
        assert_eq!(comp.num_a, AffineForm { constant: 2.0, coeffs: vec![1.0] });
        assert_eq!(comp.num_b, AffineForm { constant: 1.0, coeffs: vec![2.0] });
        assert_eq!(comp.den_a, AffineForm { constant: 4.0, coeffs: vec![3.0] });
        assert_eq!(comp.den_b, AffineForm { constant: 1.0, coeffs: vec![1.0] });
        let out = red.eval(&[1.0]).unwrap();
        assert!((out[0] - 9.0 / 14.0).abs() < 1e-15);
    }

    #[test]
    fn linear_reduction_with_identity_numerators() {
        let spec = SystemSpec::new(
            vec![0.0, 0.0],
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![1.0, 1.0],
            vec![vec![2.0, 3.0], vec![2.0, 3.0]],
        )
        .unwrap();
        let red = reduce(&spec, 2).unwrap();
        assert_eq!(red.kind, ReducedKind::LinearReduced);
        assert!(red.components[0].num_b.is_one());
        assert!(red.components[0].den_b.is_one());
        let out = red.eval(&[5.0]).unwrap();
        assert_eq!(out, vec![5.0]);
    }

    #[test]
    fn hyperbolic_reduction_of_reciprocal_system() {
        let red = reduce(&reciprocal_3d(1.0, 1.0, 1.0, 1.0), 3).unwrap();
        assert_eq!(red.kind, ReducedKind::HyperbolicReduced);
        // u' = 1/(A + B v), v' = 1/(C + D u)
        assert_eq!(red.components[0].num_a, AffineForm { constant: 1.0, coeffs: vec![0.0, 0.0] });
        assert_eq!(red.components[0].den_a, AffineForm { constant: 1.0, coeffs: vec![0.0, 1.0] });
        assert_eq!(red.components[1].den_a, AffineForm { constant: 1.0, coeffs: vec![1.0, 0.0] });
        let out = red.eval(&[1.0, 1.0]).unwrap();
        assert_eq!(out, vec![0.5, 0.5]);
    }

    #[test]
    fn reduce_rejects_small_and_nonprojective_systems() {
        let riccati = SystemSpec::new(
            vec![1.0],
            vec![vec![1.0]],
            vec![1.0],
            vec![vec![1.0]],
        )
        .unwrap();
        assert!(matches!(reduce(&riccati, 1), Err(Error::DimensionTooSmall)));

        let non = SystemSpec::new(
            vec![1.0, 0.0],
            vec![vec![1.0, 2.0], vec![3.0, 4.0]],
            vec![0.0, 0.0],
            vec![vec![1.0, 1.0], vec![2.0, 1.0]],
        )
        .unwrap();
        assert!(matches!(reduce(&non, 2), Err(Error::NotProjective)));
        assert!(matches!(
            reduce(&homogeneous_2d(), 3),
            Err(Error::PivotOutOfRange { pivot: 3, dim: 2 })
        ));
    }

    #[test]
    fn project_returns_ascending_ratios() {
        let x = State::new(vec![2.0, 4.0, 8.0]).unwrap();
        assert_eq!(project(&x, 3).unwrap(), vec![0.25, 0.5]);
        let x = State::new(vec![1.0, 1.0]).unwrap();
        assert_eq!(project(&x, 2).unwrap(), vec![1.0]);
        let x = State::new(vec![3.0, 6.0]).unwrap();
        assert_eq!(project(&x, 1).unwrap(), vec![2.0]);
    }

    #[test]
    fn riccati_lift_at_symmetric_fixed_point() {
        let lift = lift_riccati(1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        for r in lift.ratio_orbit(20) {
            assert_eq!(r, 1.0);
        }
    }

    #[test]
    fn riccati_lift_converges_to_golden_ratio() {
        let lift = lift_riccati(1.0, 1.0, 0.0, 1.0, 1.0).unwrap();
        let ratios = lift.ratio_orbit(100);
        let phi = 1.618_033_988_749_895_f64;
        assert!((ratios[100] - phi).abs() < 1e-10 * phi);
    }

    #[test]
    fn riccati_lift_on_decoupled_growth() {
        // alpha=0, beta=2, A=1, B=0: y_n = x0 * 2^n, z_n = 1.
        let lift = lift_riccati(0.0, 2.0, 1.0, 0.0, 3.0).unwrap();
        let ratios = lift.ratio_orbit(10);
        for (n, r) in ratios.iter().enumerate() {
            assert_eq!(*r, 3.0 * 2.0_f64.powi(n as i32));
        }
    }

    #[test]
    fn riccati_lift_rejects_degenerate_parameters() {
        assert!(matches!(
            lift_riccati(0.0, 0.0, 1.0, 1.0, 1.0),
            Err(Error::DegenerateRiccati)
        ));
        assert!(matches!(
            lift_riccati(1.0, 1.0, 0.0, 0.0, 1.0),
            Err(Error::DegenerateRiccati)
        ));
        assert!(lift_riccati(1.0, 1.0, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn printer_matches_reduced_equations() {
        let red = reduce(&reciprocal_3d(1.0, 1.0, 1.0, 1.0), 3).unwrap();
        let text = red.to_string();
        assert_eq!(text, "u' = 1 / (1 + 1*v)\nv' = 1 / (1 + 1*u)");

        let red = reduce(&homogeneous_2d(), 2).unwrap();
        assert_eq!(
            red.to_string(),
            "u' = (2 + 1*u)(1 + 2*u) / (4 + 3*u)(1 + 1*u)"
        );
    }

    #[test]
    fn eval_guards_denominator_underflow() {
        let red = ReducedSystem {
            kind: ReducedKind::HyperbolicReduced,
            pivot: 2,
            components: vec![ReducedComponent {
                num_a: AffineForm { constant: 1.0, coeffs: vec![0.0] },
                num_b: AffineForm::one(1),
                den_a: AffineForm { constant: 0.0, coeffs: vec![1e-305] },
                den_b: AffineForm::one(1),
            }],
        };
        assert!(matches!(
            red.eval(&[1.0]),
            Err(Error::Breakdown(BreakdownCause::DenominatorUnderflow))
        ));
    }

    #[test]
    fn pivot_one_permutes_indices() {
        // With pivot 1 the remaining variable is x2, so u = x2/x1 and the
        // component comes from row 2 with row 1 in the divisor role.
        let red = reduce(&homogeneous_2d(), 1).unwrap();
        let comp = &red.components[0];
        assert_eq!(comp.num_a, AffineForm { constant: 3.0, coeffs: vec![4.0] });
        assert_eq!(comp.num_b, AffineForm { constant: 1.0, coeffs: vec![1.0] });
        assert_eq!(comp.den_a, AffineForm { constant: 1.0, coeffs: vec![2.0] });
        assert_eq!(comp.den_b, AffineForm { constant: 2.0, coeffs: vec![1.0] });
        assert!(red.shape_consistent());
    }
}
