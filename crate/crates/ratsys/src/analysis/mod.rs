//! Closed-form and semi-closed-form asymptotics for three bundled 3D case
//! studies, each driven by a projective change of variables:
//!
//! * [`example2`] — shared-numerator system with closed-form limits for all
//!   five quantities (three variables plus two ratio coordinates);
//! * [`example3`] — homogeneous system whose scalar sum ratio obeys a
//!   monotone map, giving an extinction/bistable dichotomy with explicit
//!   basins of attraction separated by a cubic's positive roots;
//! * [`example4`] — unit-numerator system converging to a period-2 solution
//!   whose six limit values are in closed form.

pub mod cubic;
pub mod example2;
pub mod example3;
pub mod example4;

pub use example2::{example2_limits, Example2Limits, Example2Params};
pub use example3::{
    example3_analyze, example3_basin, example3_limits, example3_scalar_map, Basin,
    Example3Analysis, Example3Case, Example3Condition, Example3Params, LimitTriple, LimitValue,
};
pub use example4::{example4_limits, example4_ratio_equilibria, Example4Params, PeriodTwoLimits};
