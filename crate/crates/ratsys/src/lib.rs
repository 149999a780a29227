//! Classification, projective reduction, simulation, and asymptotic analysis
//! of first-order systems of rational difference equations.
//!
//! The crate is organized around one pipeline:
//!
//! 1. [`system`] represents a system of linear-fractional updates with
//!    nonnegative coefficients, validates it, classifies it into one of three
//!    projective coefficient patterns (homogeneous, linear type, hyperbolic
//!    type), and evaluates single steps.
//! 2. [`reduce`] performs the corresponding change of variables
//!    `u_i = x_i / x_pivot`, producing an explicit `(k-1)`-dimensional system
//!    of affine-form ratios, plus the planar linear lift of the scalar
//!    Riccati equation.
//! 3. [`dynamics`] iterates original or reduced systems, detects fixed-point,
//!    period-2, or divergent tails, and verifies the conjugacy identity
//!    between an orbit and its reduction.
//! 4. [`analysis`] reproduces three worked 3D case studies with closed-form
//!    or semi-closed-form limits, including a full basin-of-attraction
//!    classification controlled by the positive roots of a cubic.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything is safe to share across threads.

pub mod analysis;
pub mod dynamics;
pub mod error;
pub mod reduce;
pub mod system;

pub use error::{BreakdownCause, CoeffField, Error, Result, ValidationIssue, ValidationReport};
pub use reduce::{
    lift_riccati, project, reduce, AffineForm, ReducedComponent, ReducedKind, ReducedSystem,
    RiccatiLift,
};
pub use system::{ProjectivityClass, State, SystemSpec, DENOMINATOR_GUARD};

pub use dynamics::{
    check_conjugacy, check_conjugacy_with, detect_limit, iterate, Behavior, Breakdown,
    ConjugacyReport, LimitReport, Map, Orbit,
};
