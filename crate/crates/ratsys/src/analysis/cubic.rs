//! Positive-root isolation for cubics by sign-scan plus bisection.
//!
//! Robustness over cleverness: the equilibrium cubic is known to have either
//! zero or two positive roots, so a log-spaced scan for sign changes followed
//! by bisection is enough, and the caller can insert known abscissas (such as
//! the critical point of the cubic) to make narrow brackets impossible to miss.

const SCAN_POINTS: usize = 10_000;
const BISECT_WIDTH: f64 = 1e-12;

/// Evaluates `c[0] w^3 + c[1] w^2 + c[2] w + c[3]` (descending powers).
pub fn eval(c: &[f64; 4], w: f64) -> f64 {
    ((c[0] * w + c[1]) * w + c[2]) * w + c[3]
}

/// Upper bound for positive roots: `1 +` the Cauchy bound `max |c_i| / |c_0|`.
pub fn positive_root_bound(c: &[f64; 4]) -> f64 {
    let lead = c[0].abs();
    1.0 + c[1..].iter().map(|v| v.abs()).fold(0.0, f64::max) / lead
}

fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (ln_lo, ln_hi) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (ln_lo + (ln_hi - ln_lo) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn bisect(c: &[f64; 4], mut a: f64, mut b: f64, value_at_a: f64) -> f64 {
    let negative_at_a = value_at_a < 0.0;
    while b - a > BISECT_WIDTH {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let vm = eval(c, mid);
        if vm == 0.0 {
            return mid;
        }
        if (vm < 0.0) == negative_at_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    polish(c, 0.5 * (a + b), a, b)
}

/// Newton refinement inside the final bracket. Bisection alone leaves an
/// absolute error near the bracket width, which for tiny roots is a poor
/// relative error; the roots here are simple, so a few Newton steps reach
/// full double precision.
fn polish(c: &[f64; 4], mut w: f64, lo: f64, hi: f64) -> f64 {
    for _ in 0..4 {
        let value = eval(c, w);
        let slope = (3.0 * c[0] * w + 2.0 * c[1]) * w + c[2];
        if slope == 0.0 {
            break;
        }
        let next = w - value / slope;
        if !next.is_finite() || next < lo - BISECT_WIDTH || next > hi + BISECT_WIDTH {
            break;
        }
        if next == w {
            break;
        }
        w = next;
    }
    w
}

/// Isolates the positive roots of a cubic, in ascending order.
///
/// Scans `SCAN_POINTS` log-spaced abscissas on `(0, W]` with `W` the Cauchy
/// bound (plus any finite `hints` inside that range) and bisects every sign
/// change to absolute width 1e-12.
pub fn positive_roots(c: &[f64; 4], hints: &[f64]) -> Vec<f64> {
    let hi = positive_root_bound(c);
    let lo = hi * 1e-16;
    let mut grid = log_spaced(lo, hi, SCAN_POINTS);
    for &h in hints {
        if h.is_finite() && h > lo && h < hi {
            grid.push(h);
        }
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    let mut roots = Vec::new();
    let mut prev_w = grid[0];
    let mut prev_v = eval(c, prev_w);
    for &w in &grid[1..] {
        let v = eval(c, w);
        if prev_v == 0.0 {
            roots.push(prev_w);
        } else if v != 0.0 && (prev_v < 0.0) != (v < 0.0) {
            roots.push(bisect(c, prev_w, w, prev_v));
        }
        prev_w = w;
        prev_v = v;
    }
    if prev_v == 0.0 {
        roots.push(prev_w);
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_both_positive_roots_of_factored_cubic() {
        // -(w - 1)(w - 2)(w + 3) = -w^3 + 7w - 6
        let c = [-1.0, 0.0, 7.0, -6.0];
        let roots = positive_roots(&c, &[]);
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - 1.0).abs() < 1e-11);
        assert!((roots[1] - 2.0).abs() < 1e-11);
    }

    #[test]
    fn reports_no_roots_for_negative_cubic() {
        let c = [-1.0, 0.0, -1.0, -1.0];
        assert!(positive_roots(&c, &[]).is_empty());
    }

    #[test]
    fn hint_rescues_a_narrow_bump() {
        // Roots at 1 +/- 1e-6 with the third at -4; without the midpoint hint
        // the bump between them is narrower than the grid spacing.
        let (r1, r2) = (1.0 - 1e-6, 1.0 + 1e-6);
        // -(w - r1)(w - r2)(w + 4)
        let c = [
            -1.0,
            r1 + r2 - 4.0,
            4.0 * (r1 + r2) - r1 * r2,
            -4.0 * r1 * r2,
        ];
        let roots = positive_roots(&c, &[1.0]);
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - r1).abs() < 1e-9);
        assert!((roots[1] - r2).abs() < 1e-9);
    }

    #[test]
    fn root_bound_dominates_roots() {
        let c = [-1.0, 5.0, 30.0, -2.0];
        let hi = positive_root_bound(&c);
        for r in positive_roots(&c, &[]) {
            assert!(r < hi);
        }
    }
}
