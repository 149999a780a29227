//! Orbit CSV layout: header `n,x1,..,xd`, one row per stored state, numbers
//! with 17 significant digits (lossless for doubles), and a trailing comment
//! line when the orbit stopped on a breakdown.

use ratsys::Orbit;

/// 17 significant digits: enough to reproduce any double bit-for-bit.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn orbit_to_csv(orbit: &Orbit) -> String {
    let dim = orbit.states.first().map_or(0, Vec::len);
    let mut out = String::from("n");
    for i in 1..=dim {
        out.push_str(&format!(",x{i}"));
    }
    out.push('\n');
    for (n, state) in orbit.states.iter().enumerate() {
        out.push_str(&n.to_string());
        for v in state {
            out.push(',');
            out.push_str(&format_float(*v));
        }
        out.push('\n');
    }
    if let Some(b) = &orbit.breakdown {
        out.push_str(&format!("# breakdown at n={}, cause={}\n", b.step, b.cause));
    }
    out
}
