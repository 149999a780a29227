//! Orbit iteration, asymptotic-behavior detection, and conjugacy checks.
//!
//! Orbits are finite and stop early with a recorded [`Breakdown`] when a
//! denominator hits the underflow guard or a state component leaves the
//! strictly-positive double-precision range. No renormalization is applied
//! during iteration: for projective systems the reduction itself is the
//! normalization, and original orbits are allowed to run off to the range
//! limits (that is a finding, not an error).

use crate::error::{BreakdownCause, Error, Result};
use crate::reduce::{self, ReducedSystem};
use crate::system::{State, SystemSpec};

/// Default iteration length.
pub const DEFAULT_STEPS: usize = 10_000;
/// Default relative tolerance for convergence detection.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default number of consecutive small-change steps required to converge.
pub const DEFAULT_WINDOW: usize = 10;

/// Component magnitude beyond which a monotone trend counts as divergence to infinity.
pub const DIVERGENCE_SUP: f64 = 1e150;
/// Component magnitude below which a monotone trend counts as divergence to zero.
pub const DIVERGENCE_INF: f64 = 1e-150;

const REL_FLOOR: f64 = 1e-30;

/// Discrete map that can drive an orbit: an original system or a reduced one.
pub trait Map {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64]) -> std::result::Result<Vec<f64>, BreakdownCause>;
}

impl Map for SystemSpec {
    fn dim(&self) -> usize {
        self.dim()
    }

    fn apply(&self, x: &[f64]) -> std::result::Result<Vec<f64>, BreakdownCause> {
        self.step_raw(x)
    }
}

impl Map for ReducedSystem {
    fn dim(&self) -> usize {
        self.dim()
    }

    fn apply(&self, x: &[f64]) -> std::result::Result<Vec<f64>, BreakdownCause> {
        self.eval_raw(x)
    }
}

/// Step index and cause of an early iteration stop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Breakdown {
    /// Index of the state that could not be produced.
    pub step: usize,
    pub cause: BreakdownCause,
}

/// A finite trajectory. `states[0]` is the supplied initial condition; every
/// stored state is finite and strictly positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    pub states: Vec<Vec<f64>>,
    pub breakdown: Option<Breakdown>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn last(&self) -> &[f64] {
        self.states.last().expect("orbit holds at least the initial state")
    }
}

/// Iterates a map for up to `n_steps` steps from a positive initial vector.
pub fn iterate<M: Map + ?Sized>(map: &M, x0: &[f64], n_steps: usize) -> Result<Orbit> {
    if x0.len() != map.dim() {
        return Err(Error::InvalidInput(format!(
            "initial condition has dimension {}, system has dimension {}",
            x0.len(),
            map.dim()
        )));
    }
    if x0.iter().any(|&v| !v.is_finite() || v <= 0.0) {
        return Err(Error::InvalidInput(
            "initial condition components must be strictly positive".into(),
        ));
    }
    let mut states = Vec::with_capacity(n_steps + 1);
    states.push(x0.to_vec());
    let mut breakdown = None;
    for step in 1..=n_steps {
        match map.apply(states.last().expect("non-empty")) {
            Ok(next) => states.push(next),
            Err(cause) => {
                breakdown = Some(Breakdown { step, cause });
                break;
            }
        }
    }
    Ok(Orbit { states, breakdown })
}

/// Maximum componentwise relative difference, safe near zero.
fn rel_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y).abs() / x.abs().max(y.abs()).max(REL_FLOOR))
        .fold(0.0, f64::max)
}

/// Detected asymptotic behavior of an orbit.
///
/// Component indices in `DivergentComponent` are 1-based variable numbers.
#[derive(Debug, Clone, PartialEq)]
pub enum Behavior {
    ConvergedPoint {
        limit: Vec<f64>,
    },
    ConvergedPeriod2 {
        even: Vec<f64>,
        odd: Vec<f64>,
    },
    DivergentComponent {
        to_infinity: Vec<usize>,
        to_zero: Vec<usize>,
    },
    Undecided,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitReport {
    pub behavior: Behavior,
    pub steps_used: usize,
    pub tolerance: f64,
}

fn tail_converged(states: &[Vec<f64>], window: usize, tol: f64) -> bool {
    let n = states.len();
    (n - 1 - window..n - 1).all(|t| rel_diff(&states[t], &states[t + 1]) < tol)
}

/// Checks the even- and odd-indexed subsequences of the last `2 * window`
/// states; returns the two parity limits when both settle.
fn tail_period2(states: &[Vec<f64>], window: usize, tol: f64) -> Option<(Vec<f64>, Vec<f64>)> {
    let n = states.len();
    let start = n - 2 * window;
    let mut even: Vec<&Vec<f64>> = Vec::with_capacity(window);
    let mut odd: Vec<&Vec<f64>> = Vec::with_capacity(window);
    for (idx, state) in states.iter().enumerate().skip(start) {
        if idx % 2 == 0 {
            even.push(state);
        } else {
            odd.push(state);
        }
    }
    for seq in [&even, &odd] {
        for pair in seq.windows(2) {
            if rel_diff(pair[0], pair[1]) >= tol {
                return None;
            }
        }
    }
    Some((
        even.last().expect("window >= 1").to_vec(),
        odd.last().expect("window >= 1").to_vec(),
    ))
}

fn tail_divergent(states: &[Vec<f64>], window: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = states.len();
    let tail = &states[n - 1 - window..];
    let dim = states[0].len();
    let mut to_infinity = Vec::new();
    let mut to_zero = Vec::new();
    for c in 0..dim {
        let increasing = tail.windows(2).all(|w| w[0][c] <= w[1][c]);
        let decreasing = tail.windows(2).all(|w| w[0][c] >= w[1][c]);
        let last = tail[tail.len() - 1][c];
        if increasing && last > DIVERGENCE_SUP {
            to_infinity.push(c + 1);
        } else if decreasing && last < DIVERGENCE_INF {
            to_zero.push(c + 1);
        }
    }
    if to_infinity.is_empty() && to_zero.is_empty() {
        None
    } else {
        Some((to_infinity, to_zero))
    }
}

/// Classifies the tail of an orbit.
///
/// * `ConvergedPoint` when the last `window` steps each change by less than
///   `tol` (relative) in every component.
/// * `ConvergedPeriod2` when the even and odd subsequences of the last
///   `2 * window` states each satisfy that criterion and their limits differ
///   by more than `tol`; coincident limits collapse to `ConvergedPoint`
///   (period 2 is "not necessarily prime").
/// * `DivergentComponent` when a component is monotone over the window and
///   past `1e150` (to infinity) or below `1e-150` (to zero).
/// * `Undecided` otherwise; boundary orbits are reported honestly rather than
///   forced into a class.
///
/// Orbits shorter than `2 * window` are an error unless they were truncated
/// by a breakdown, in which case the divergence check runs on whatever tail
/// exists (a broken orbit cannot have converged).
pub fn detect_limit(orbit: &Orbit, tol: f64, window: usize) -> Result<LimitReport> {
    if window == 0 {
        return Err(Error::InvalidInput("window must be at least 1".into()));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive (got {tol})")));
    }
    let states = &orbit.states;
    let n = states.len();
    let steps_used = n.saturating_sub(1);
    let report = |behavior: Behavior| LimitReport {
        behavior,
        steps_used,
        tolerance: tol,
    };

    if n < 2 * window {
        if orbit.breakdown.is_some() && n >= 3 {
            let win = (n - 1).min(window);
            if let Some((to_infinity, to_zero)) = tail_divergent(states, win) {
                return Ok(report(Behavior::DivergentComponent { to_infinity, to_zero }));
            }
            return Ok(report(Behavior::Undecided));
        }
        return Err(Error::InsufficientData {
            needed: 2 * window,
            have: n,
        });
    }

    if tail_converged(states, window, tol) {
        return Ok(report(Behavior::ConvergedPoint {
            limit: states[n - 1].clone(),
        }));
    }

    if let Some((even, odd)) = tail_period2(states, window, tol) {
        if rel_diff(&even, &odd) > tol {
            return Ok(report(Behavior::ConvergedPeriod2 { even, odd }));
        }
        return Ok(report(Behavior::ConvergedPoint {
            limit: states[n - 1].clone(),
        }));
    }

    if let Some((to_infinity, to_zero)) = tail_divergent(states, window) {
        return Ok(report(Behavior::DivergentComponent { to_infinity, to_zero }));
    }

    Ok(report(Behavior::Undecided))
}

/// Outcome of running an original orbit and its reduction in lockstep.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugacyReport {
    /// Largest relative deviation of `project(x_n)` from the reduced orbit.
    pub max_rel_deviation: f64,
    /// Number of steps compared (before any breakdown on either side).
    pub steps_compared: usize,
    pub tolerance: f64,
    pub pass: bool,
    pub original_breakdown: Option<Breakdown>,
    pub reduced_breakdown: Option<Breakdown>,
}

/// Verifies the change-of-variables identity `u_n = project(x_n)` along an
/// orbit by reducing `spec` at `pivot` and comparing for `n_steps` steps.
pub fn check_conjugacy(
    spec: &SystemSpec,
    x0: &State,
    pivot: usize,
    n_steps: usize,
    tol: f64,
) -> Result<ConjugacyReport> {
    let red = reduce::reduce(spec, pivot)?;
    check_conjugacy_with(spec, &red, x0, pivot, n_steps, tol)
}

/// Same as [`check_conjugacy`] but against a caller-supplied reduced system,
/// which makes corrupted-reduction negative controls possible.
pub fn check_conjugacy_with(
    spec: &SystemSpec,
    red: &ReducedSystem,
    x0: &State,
    pivot: usize,
    n_steps: usize,
    tol: f64,
) -> Result<ConjugacyReport> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive (got {tol})")));
    }
    if red.original_dim() != spec.dim() {
        return Err(Error::InvalidInput(format!(
            "reduced system expects original dimension {}, system has {}",
            red.original_dim(),
            spec.dim()
        )));
    }
    let original = iterate(spec, x0.as_slice(), n_steps)?;
    let u0 = reduce::project(x0, pivot)?;
    let reduced = iterate(red, &u0, n_steps)?;

    let compared = original.len().min(reduced.len());
    let mut max_rel_deviation: f64 = 0.0;
    let p = pivot - 1;
    for t in 0..compared {
        let x = &original.states[t];
        let xp = x[p];
        let projected: Vec<f64> = x
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != p)
            .map(|(_, &v)| v / xp)
            .collect();
        max_rel_deviation = max_rel_deviation.max(rel_diff(&projected, &reduced.states[t]));
    }
    Ok(ConjugacyReport {
        max_rel_deviation,
        steps_compared: compared.saturating_sub(1),
        tolerance: tol,
        pass: max_rel_deviation < tol,
        original_breakdown: original.breakdown,
        reduced_breakdown: reduced.breakdown,
    })
}
