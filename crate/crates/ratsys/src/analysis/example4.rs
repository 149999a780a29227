//! Case study `ex4`: a 3D system with unit numerators that converges to a
//! (not necessarily prime) period-2 solution.
//!
//! ```text
//! x' = 1 / (A z + B y),   y' = 1 / (C z + D x),   z' = 1 / z
//! ```
//!
//! with `A, B, C, D > 0`. `z` alternates exactly between `z0` and `1/z0`. In
//! ratio coordinates `u = x/z`, `v = y/z` the map is `u' = 1/(A + B v)`,
//! `v' = 1/(C + D u)`, so `u` satisfies the second-order equation
//! `u' = (C + D u'') / (A C + A D u'' + B)` which decouples into two Riccati
//! equations; every orbit has `u -> u_bar`, `v -> v_bar`. Upstairs the even
//! and odd subsequences converge separately, e.g. `x_{2n} -> z0 * u_bar` and
//! `x_{2n+1} -> u_bar / z0`, and the limits coincide when `z0 = 1`.

use crate::error::{Error, Result};
use crate::system::SystemSpec;

/// Positive parameters `(A, B, C, D)` plus the initial `z0` the period-2
/// limit depends on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Example4Params {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub z0: f64,
}

impl Example4Params {
    pub fn new(a: f64, b: f64, c: f64, d: f64, z0: f64) -> Result<Self> {
        for (name, v) in [("A", a), ("B", b), ("C", c), ("D", d), ("z0", z0)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "parameter {name} must be strictly positive (got {v})"
                )));
            }
        }
        Ok(Example4Params { a, b, c, d, z0 })
    }

    /// The system as coefficient data; classifies as hyperbolic type.
    pub fn system(&self) -> SystemSpec {
        SystemSpec::new(
            vec![1.0, 1.0, 1.0],
            vec![vec![0.0; 3]; 3],
            vec![0.0, 0.0, 0.0],
            vec![
                vec![0.0, self.b, self.a],
                vec![self.d, 0.0, self.c],
                vec![0.0, 0.0, 1.0],
            ],
        )
        .expect("fixed 3x3 shape")
    }
}

/// The six period-2 limits, split by parity of the step index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodTwoLimits {
    pub x_even: f64,
    pub y_even: f64,
    pub z_even: f64,
    pub x_odd: f64,
    pub y_odd: f64,
    pub z_odd: f64,
}

/// The ratio equilibria `(u_bar, v_bar)` of the reduced planar map.
pub fn example4_ratio_equilibria(p: &Example4Params) -> (f64, f64) {
    let s = p.d - p.a * p.c - p.b;
    let r = (s * s + 4.0 * p.a * p.d * p.c).sqrt();
    let u = (s + r) / (2.0 * p.a * p.d);
    let v = 2.0 * p.a / (p.a * p.c + p.d - p.b + r);
    (u, v)
}

/// Closed-form period-2 limits.
pub fn example4_limits(p: &Example4Params) -> PeriodTwoLimits {
    let (u, v) = example4_ratio_equilibria(p);
    PeriodTwoLimits {
        x_even: p.z0 * u,
        y_even: p.z0 * v,
        z_even: p.z0,
        x_odd: u / p.z0,
        y_odd: v / p.z0,
        z_odd: 1.0 / p.z0,
    }
}
