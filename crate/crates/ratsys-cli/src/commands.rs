//! The five subcommands: classify, reduce, simulate, analyze, sweep.
//!
//! Exit codes are a stable contract: 0 for success, 1 for input or I/O
//! problems, 2 when `classify` finds a non-projective system, 3 when
//! `analyze ex3` lands on the degenerate boundary.

use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, Context, Result};
use clap::Args;
use rayon::prelude::*;
use serde_json::json;

use ratsys::analysis::{
    example2_limits, example3_analyze, example3_basin, example3_limits, example4_limits,
    example4_ratio_equilibria, Basin, Example2Params, Example3Case, Example3Params,
    Example4Params, LimitValue,
};
use ratsys::{
    check_conjugacy, detect_limit, iterate, Behavior, ConjugacyReport, Error, LimitReport, Orbit,
    State, SystemSpec, ValidationReport,
};

use crate::orbitcsv::{format_float, orbit_to_csv};
use crate::specfile::{self, parse_vector, ReducedSystemFile, SpecDocument};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-30)
}

fn report_invalid(report: &ValidationReport) -> u8 {
    for issue in &report.issues {
        eprintln!("invalid system: {issue}");
    }
    1
}

fn float_list(values: &[f64]) -> String {
    values.iter().map(|&v| format_float(v)).collect::<Vec<_>>().join(", ")
}

fn component_list(indices: &[usize]) -> String {
    indices.iter().map(|i| format!("x{i}")).collect::<Vec<_>>().join(", ")
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct ClassifyArgs {
    /// Path to a system spec file (JSON).
    pub spec: PathBuf,
    /// Emit the report as JSON.
    #[arg(long)]
    pub json: bool,
}

pub fn classify(args: ClassifyArgs) -> Result<u8> {
    let file = specfile::load_system(&args.spec)?;
    let spec = file.to_spec()?;
    let report = spec.validate();
    if !report.passed() {
        return Ok(report_invalid(&report));
    }
    let class = spec.classify().expect("validated");
    if args.json {
        println!(
            "{}",
            json!({
                "class": class.to_string(),
                "condition": class.condition(),
                "projective": class.is_projective(),
            })
        );
    } else {
        println!("class: {class}");
        println!("condition: {}", class.condition());
    }
    Ok(if class.is_projective() { 0 } else { 2 })
}

// ---------------------------------------------------------------------------
// reduce
// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct ReduceArgs {
    /// Path to a system spec file (JSON).
    pub spec: PathBuf,
    /// Divisor variable (1-based); defaults to the last one.
    #[arg(long)]
    pub pivot: Option<usize>,
    /// Also write the reduced system as a file loadable by `simulate`.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn reduce(args: ReduceArgs) -> Result<u8> {
    let file = specfile::load_system(&args.spec)?;
    let spec = file.to_spec()?;
    let report = spec.validate();
    if !report.passed() {
        return Ok(report_invalid(&report));
    }
    let pivot = args.pivot.unwrap_or_else(|| spec.dim());
    let red = match ratsys::reduce(&spec, pivot) {
        Ok(red) => red,
        Err(
            err @ (Error::DimensionTooSmall | Error::NotProjective | Error::PivotOutOfRange { .. }),
        ) => {
            eprintln!("error: {err}");
            return Ok(1);
        }
        Err(err) => return Err(err.into()),
    };
    println!("{red}");
    if let Some(path) = &args.output {
        // Carry the projected initial condition along so `simulate` composes.
        let x0 = match &file.x0 {
            Some(x0) => {
                let state = State::new(x0.clone())?;
                Some(ratsys::project(&state, pivot)?)
            }
            None => None,
        };
        specfile::save_json(
            path,
            &ReducedSystemFile {
                system: red,
                x0,
                label: file.label.clone(),
            },
        )?;
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

#[derive(Args)]
pub struct SimulateArgs {
    /// Path to an original or reduced system file (JSON).
    pub spec: PathBuf,
    /// Iteration steps.
    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,
    /// Relative convergence tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Consecutive small-change steps required for convergence.
    #[arg(long, default_value_t = 10)]
    pub window: usize,
    /// Pivot for the conjugacy cross-check on projective systems (1-based).
    #[arg(long)]
    pub pivot: Option<usize>,
    /// Initial condition, comma-separated; overrides the file's x0.
    #[arg(long)]
    pub x0: Option<String>,
    /// Orbit CSV destination; stdout when omitted (report then goes to stderr).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Emit the limit report as JSON.
    #[arg(long)]
    pub json: bool,
}

pub fn simulate(args: SimulateArgs) -> Result<u8> {
    let doc = specfile::load_document(&args.spec)?;
    let flag_x0 = args.x0.as_deref().map(parse_vector).transpose()?;

    let (orbit, conjugacy) = match &doc {
        SpecDocument::Original(file) => {
            let spec = file.to_spec()?;
            let report = spec.validate();
            if !report.passed() {
                return Ok(report_invalid(&report));
            }
            let x0 = flag_x0.or_else(|| file.x0.clone()).ok_or_else(|| {
                anyhow!("no initial condition: provide x0 in the spec file or via --x0")
            })?;
            let state = State::new(x0)?;
            let orbit = iterate(&spec, state.as_slice(), args.steps)?;
            let conjugacy = if spec.dim() > 1 && spec.classify().expect("validated").is_projective()
            {
                let pivot = args.pivot.unwrap_or_else(|| spec.dim());
                Some(check_conjugacy(&spec, &state, pivot, args.steps, 1e-9)?)
            } else {
                None
            };
            (orbit, conjugacy)
        }
        SpecDocument::Reduced(file) => {
            let red = file.checked_system()?;
            let x0 = flag_x0.or_else(|| file.x0.clone()).ok_or_else(|| {
                anyhow!("no initial condition: provide x0 in the spec file or via --x0")
            })?;
            (iterate(&red, &x0, args.steps)?, None)
        }
    };

    let report = match detect_limit(&orbit, args.tol, args.window) {
        Ok(report) => report,
        Err(Error::InsufficientData { .. }) => LimitReport {
            behavior: Behavior::Undecided,
            steps_used: orbit.len() - 1,
            tolerance: args.tol,
        },
        Err(err) => return Err(err.into()),
    };

    let report_text = if args.json {
        limit_report_json(&report, &orbit, conjugacy.as_ref()).to_string()
    } else {
        limit_report_text(&report, &orbit, conjugacy.as_ref())
    };

    let csv = orbit_to_csv(&orbit);
    match &args.output {
        Some(path) => {
            std::fs::write(path, &csv)
                .with_context(|| format!("cannot write {}", path.display()))?;
            println!("{report_text}");
        }
        None => {
            print!("{csv}");
            eprintln!("{report_text}");
        }
    }
    Ok(0)
}

fn behavior_lines(behavior: &Behavior, lines: &mut Vec<String>) {
    match behavior {
        Behavior::ConvergedPoint { limit } => {
            lines.push("behavior: ConvergedPoint".into());
            lines.push(format!("limit: {}", float_list(limit)));
        }
        Behavior::ConvergedPeriod2 { even, odd } => {
            lines.push("behavior: ConvergedPeriod2".into());
            lines.push(format!("even limit: {}", float_list(even)));
            lines.push(format!("odd limit: {}", float_list(odd)));
        }
        Behavior::DivergentComponent { to_infinity, to_zero } => {
            lines.push("behavior: DivergentComponent".into());
            lines.push(format!("to infinity: {}", component_list(to_infinity)));
            lines.push(format!("to zero: {}", component_list(to_zero)));
        }
        Behavior::Undecided => lines.push("behavior: Undecided".into()),
    }
}

fn limit_report_text(
    report: &LimitReport,
    orbit: &Orbit,
    conjugacy: Option<&ConjugacyReport>,
) -> String {
    let mut lines = Vec::new();
    behavior_lines(&report.behavior, &mut lines);
    lines.push(format!("steps used: {}", report.steps_used));
    lines.push(format!("tolerance: {:e}", report.tolerance));
    match &orbit.breakdown {
        Some(b) => lines.push(format!("breakdown: at n={} ({})", b.step, b.cause)),
        None => lines.push("breakdown: none".into()),
    }
    if let Some(c) = conjugacy {
        lines.push(format!(
            "conjugacy: max relative deviation {:e} over {} steps (tol {:e}): {}",
            c.max_rel_deviation,
            c.steps_compared,
            c.tolerance,
            if c.pass { "pass" } else { "FAIL" }
        ));
    }
    lines.join("\n")
}

fn behavior_json(behavior: &Behavior) -> serde_json::Value {
    match behavior {
        Behavior::ConvergedPoint { limit } => json!({"kind": "ConvergedPoint", "limit": limit}),
        Behavior::ConvergedPeriod2 { even, odd } => {
            json!({"kind": "ConvergedPeriod2", "even": even, "odd": odd})
        }
        Behavior::DivergentComponent { to_infinity, to_zero } => {
            json!({"kind": "DivergentComponent", "to_infinity": to_infinity, "to_zero": to_zero})
        }
        Behavior::Undecided => json!({"kind": "Undecided"}),
    }
}

fn limit_report_json(
    report: &LimitReport,
    orbit: &Orbit,
    conjugacy: Option<&ConjugacyReport>,
) -> serde_json::Value {
    json!({
        "behavior": behavior_json(&report.behavior),
        "steps_used": report.steps_used,
        "tolerance": report.tolerance,
        "breakdown": orbit.breakdown.as_ref().map(|b| json!({
            "step": b.step,
            "cause": b.cause.to_string(),
        })),
        "conjugacy": conjugacy.map(|c| json!({
            "max_rel_deviation": c.max_rel_deviation,
            "steps_compared": c.steps_compared,
            "tolerance": c.tolerance,
            "pass": c.pass,
        })),
    })
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

#[derive(clap::Subcommand)]
pub enum AnalyzeCommand {
    /// Closed-form limits of the shared-numerator case study
    /// x' = x/(C y + A z), y' = x/(D z), z' = x/(beta x + alpha z).
    Ex2(Ex2Args),
    /// Basin classification for the sum-ratio case study
    /// x' = (x+y)/(A1 z + x + y), y' = (x+y)/(A2 z + x + y), z' = (alpha z + x + y)/(x + y).
    Ex3(Ex3Args),
    /// Period-2 limits of the reciprocal case study
    /// x' = 1/(A z + B y), y' = 1/(C z + D x), z' = 1/z.
    Ex4(Ex4Args),
}

pub fn analyze(command: AnalyzeCommand) -> Result<u8> {
    match command {
        AnalyzeCommand::Ex2(args) => analyze_ex2(args),
        AnalyzeCommand::Ex3(args) => analyze_ex3(args),
        AnalyzeCommand::Ex4(args) => analyze_ex4(args),
    }
}

#[derive(Args)]
pub struct Ex2Args {
    #[arg(long = "C")]
    pub c: f64,
    #[arg(long = "A")]
    pub a: f64,
    #[arg(long = "D")]
    pub d: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long)]
    pub alpha: f64,
    /// Initial condition `x,y,z` for a simulation cross-check.
    #[arg(long)]
    pub x0: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,
    #[arg(long)]
    pub json: bool,
}

fn analyze_ex2(args: Ex2Args) -> Result<u8> {
    let p = Example2Params::new(args.c, args.a, args.d, args.beta, args.alpha)?;
    let lim = example2_limits(&p);
    let fixed_point_image = (p.beta * lim.u + p.alpha)
        / ((p.beta * p.c / p.d) * lim.u + p.a + p.alpha * p.c / p.d);
    let residual = rel(fixed_point_image, lim.u);

    let simulation = match &args.x0 {
        Some(text) => {
            let x0 = parse_vector(text)?;
            let state = State::new(x0)?;
            Some(simulation_agreement(
                &p.system(),
                state.as_slice(),
                &[lim.x, lim.y, lim.z],
                args.steps,
            )?)
        }
        None => None,
    };

    if args.json {
        println!(
            "{}",
            json!({
                "x_bar": lim.x, "y_bar": lim.y, "z_bar": lim.z,
                "u_bar": lim.u, "v_bar": lim.v,
                "u_fixed_point_residual": residual,
                "simulation_max_rel_deviation": simulation,
            })
        );
    } else {
        println!("x_bar: {}", format_float(lim.x));
        println!("y_bar: {}", format_float(lim.y));
        println!("z_bar: {}", format_float(lim.z));
        println!("u_bar: {}", format_float(lim.u));
        println!("v_bar: {}", format_float(lim.v));
        println!("u fixed-point residual: {residual:e}");
        if let Some(dev) = simulation {
            println!("simulation agreement: max relative deviation {dev:e}");
        }
    }
    Ok(0)
}

/// Iterates until convergence and reports the worst relative deviation of the
/// detected limit from the expected one.
fn simulation_agreement(
    spec: &SystemSpec,
    x0: &[f64],
    expected: &[f64],
    steps: usize,
) -> Result<f64> {
    let orbit = iterate(spec, x0, steps)?;
    let report = detect_limit(&orbit, 1e-10, 10).map_err(|err| anyhow!("{err}"))?;
    match report.behavior {
        Behavior::ConvergedPoint { limit } => Ok(limit
            .iter()
            .zip(expected)
            .map(|(a, b)| rel(*a, *b))
            .fold(0.0, f64::max)),
        other => Err(anyhow!("orbit did not converge to a point: {other:?}")),
    }
}

#[derive(Args)]
pub struct Ex3Args {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long = "A1")]
    pub a1: f64,
    #[arg(long = "A2")]
    pub a2: f64,
    /// Initial sum ratio (x0 + y0)/z0 for basin classification.
    #[arg(long)]
    pub w0: Option<f64>,
    /// Full initial condition `x,y,z`; sets w0 = (x + y)/z.
    #[arg(long)]
    pub x0: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,
    #[arg(long)]
    pub json: bool,
}

fn limit_value_json(v: &LimitValue) -> serde_json::Value {
    match v {
        LimitValue::Finite(x) => json!(x),
        LimitValue::Unbounded => json!("unbounded"),
    }
}

/// Outcome of the optional ex3 simulation cross-check.
enum Ex3Check {
    /// One exact step from the boundary ratio against the stationary triple.
    Substitution { max_rel_deviation: f64 },
    /// Extinction thresholds observed along the orbit.
    Thresholds { xy_below_1e6: bool, z_above_1e6: bool },
    /// Converged orbit against the limit triple.
    Convergence { max_rel_deviation: f64 },
}

fn analyze_ex3(args: Ex3Args) -> Result<u8> {
    let p = Example3Params::new(args.alpha, args.a1, args.a2)?;
    let analysis = example3_analyze(&p);

    let x0 = args.x0.as_deref().map(parse_vector).transpose()?;
    let w0 = match (&args.w0, &x0) {
        (Some(w0), _) => Some(*w0),
        (None, Some(x0)) => {
            let state = State::new(x0.clone())?;
            Some((state[0] + state[1]) / state[2])
        }
        (None, None) => None,
    };

    let basin_and_limits = match (analysis.case, w0) {
        (Example3Case::DegenerateBoundary, _) | (_, None) => None,
        (_, Some(w0)) => {
            let basin = example3_basin(&analysis, w0)?;
            let limits = example3_limits(&analysis, &p, w0)?;
            Some((w0, basin, limits))
        }
    };

    let check = match &basin_and_limits {
        Some((w0, basin, limits)) => {
            let initial = match &x0 {
                Some(x0) => Some(x0.clone()),
                None if *w0 > 0.0 => Some(vec![w0 / 2.0, w0 / 2.0, 1.0]),
                None => None,
            };
            match initial {
                Some(initial) => Some(cross_check_ex3(&p, &initial, *basin, limits, args.steps)?),
                None => None,
            }
        }
        None => None,
    };

    if args.json {
        let mut doc = json!({
            "case": analysis.case.to_string(),
            "condition": analysis.condition.to_string(),
            "P_coeffs": analysis.poly,
            "w_m": analysis.w_m,
            "P_at_wm": analysis.p_at_wm,
            "roots": analysis.roots.map(|(w1, w2)| json!([w1, w2])),
        });
        if let Some((w0, basin, limits)) = &basin_and_limits {
            doc["w0"] = json!(w0);
            doc["basin"] = json!(basin.to_string());
            doc["limits"] = json!({
                "x": limit_value_json(&limits.x),
                "y": limit_value_json(&limits.y),
                "z": limit_value_json(&limits.z),
            });
        }
        match &check {
            Some(Ex3Check::Substitution { max_rel_deviation }) => {
                doc["substitution_max_rel_deviation"] = json!(max_rel_deviation);
            }
            Some(Ex3Check::Thresholds { xy_below_1e6, z_above_1e6 }) => {
                doc["xy_below_1e6"] = json!(xy_below_1e6);
                doc["z_above_1e6"] = json!(z_above_1e6);
            }
            Some(Ex3Check::Convergence { max_rel_deviation }) => {
                doc["simulation_max_rel_deviation"] = json!(max_rel_deviation);
            }
            None => {}
        }
        println!("{doc}");
    } else {
        println!("case: {}", analysis.case);
        println!("condition: {}", analysis.condition);
        println!("P coefficients (w^3..1): {}", float_list(&analysis.poly));
        match analysis.w_m {
            Some(w_m) => println!("w_m: {}", format_float(w_m)),
            None => println!("w_m: undefined (no positive critical point)"),
        }
        if let Some(v) = analysis.p_at_wm {
            println!("P(w_m): {}", format_float(v));
        }
        if let Some((w1, w2)) = analysis.roots {
            println!("w1: {}", format_float(w1));
            println!("w2: {}", format_float(w2));
        }
        if let Some((w0, basin, limits)) = &basin_and_limits {
            println!("w0: {}", format_float(*w0));
            println!("basin: {basin}");
            println!("limit x: {}", limits.x);
            println!("limit y: {}", limits.y);
            println!("limit z: {}", limits.z);
        }
        match &check {
            Some(Ex3Check::Substitution { max_rel_deviation }) => {
                println!("one-step substitution check: max relative deviation {max_rel_deviation:e}");
            }
            Some(Ex3Check::Thresholds { xy_below_1e6, z_above_1e6 }) => {
                println!(
                    "simulation: x,y fell below 1e-6: {xy_below_1e6}; z exceeded 1e6: {z_above_1e6}"
                );
            }
            Some(Ex3Check::Convergence { max_rel_deviation }) => {
                println!("simulation agreement: max relative deviation {max_rel_deviation:e}");
            }
            None => {}
        }
    }

    if analysis.case == Example3Case::DegenerateBoundary {
        eprintln!(
            "degenerate boundary: P(w_m) = {:e} lies inside the tolerance band; \
             basins are not classifiable",
            analysis.p_at_wm.unwrap_or(f64::NAN)
        );
        return Ok(3);
    }
    Ok(0)
}

fn cross_check_ex3(
    p: &Example3Params,
    x0: &[f64],
    basin: Basin,
    limits: &ratsys::analysis::LimitTriple,
    steps: usize,
) -> Result<Ex3Check> {
    let spec = p.system();
    match basin {
        Basin::AtW1 => {
            // The boundary equilibrium is repelling; one exact step is the
            // meaningful check.
            let state = State::new(x0.to_vec())?;
            let next = spec.step(&state)?;
            let expected = [
                limits.x.as_finite().unwrap(),
                limits.y.as_finite().unwrap(),
                limits.z.as_finite().unwrap(),
            ];
            let max_rel_deviation = next
                .iter()
                .zip(expected)
                .map(|(a, b)| rel(*a, b))
                .fold(0.0, f64::max);
            Ok(Ex3Check::Substitution { max_rel_deviation })
        }
        Basin::ToZero => {
            let orbit = iterate(&spec, x0, steps)?;
            Ok(Ex3Check::Thresholds {
                xy_below_1e6: orbit.states.iter().any(|s| s[0] < 1e-6 && s[1] < 1e-6),
                z_above_1e6: orbit.states.iter().any(|s| s[2] > 1e6),
            })
        }
        Basin::ToW2 => {
            let expected = [
                limits.x.as_finite().unwrap(),
                limits.y.as_finite().unwrap(),
                limits.z.as_finite().unwrap(),
            ];
            let max_rel_deviation = simulation_agreement(&spec, x0, &expected, steps)?;
            Ok(Ex3Check::Convergence { max_rel_deviation })
        }
    }
}

#[derive(Args)]
pub struct Ex4Args {
    #[arg(long = "A")]
    pub a: f64,
    #[arg(long = "B")]
    pub b: f64,
    #[arg(long = "C")]
    pub c: f64,
    #[arg(long = "D")]
    pub d: f64,
    #[arg(long)]
    pub z0: f64,
    /// Initial `x,y` (z starts at z0) for a simulation cross-check.
    #[arg(long)]
    pub x0: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,
    #[arg(long)]
    pub json: bool,
}

fn analyze_ex4(args: Ex4Args) -> Result<u8> {
    let p = Example4Params::new(args.a, args.b, args.c, args.d, args.z0)?;
    let lim = example4_limits(&p);
    let (u, _) = example4_ratio_equilibria(&p);
    let residual = rel((p.c + p.d * u) / (p.a * p.c + p.a * p.d * u + p.b), u);

    let simulation = match &args.x0 {
        Some(text) => {
            let xy = parse_vector(text)?;
            if xy.len() != 2 {
                return Err(anyhow!("--x0 for ex4 takes two components `x,y` (z starts at z0)"));
            }
            let x0 = vec![xy[0], xy[1], p.z0];
            let state = State::new(x0)?;
            let orbit = iterate(&p.system(), state.as_slice(), args.steps)?;
            let report = detect_limit(&orbit, 1e-12, 10).map_err(|err| anyhow!("{err}"))?;
            let dev = match report.behavior {
                Behavior::ConvergedPeriod2 { even, odd } => [
                    rel(even[0], lim.x_even),
                    rel(even[1], lim.y_even),
                    rel(even[2], lim.z_even),
                    rel(odd[0], lim.x_odd),
                    rel(odd[1], lim.y_odd),
                    rel(odd[2], lim.z_odd),
                ]
                .into_iter()
                .fold(0.0, f64::max),
                // z0 = 1 collapses the parities.
                Behavior::ConvergedPoint { limit } => [
                    rel(limit[0], lim.x_even),
                    rel(limit[1], lim.y_even),
                    rel(limit[2], lim.z_even),
                ]
                .into_iter()
                .fold(0.0, f64::max),
                other => return Err(anyhow!("orbit did not settle: {other:?}")),
            };
            Some(dev)
        }
        None => None,
    };

    if args.json {
        println!(
            "{}",
            json!({
                "x_even": lim.x_even, "y_even": lim.y_even, "z_even": lim.z_even,
                "x_odd": lim.x_odd, "y_odd": lim.y_odd, "z_odd": lim.z_odd,
                "u_fixed_point_residual": residual,
                "simulation_max_rel_deviation": simulation,
            })
        );
    } else {
        println!("x_even: {}", format_float(lim.x_even));
        println!("y_even: {}", format_float(lim.y_even));
        println!("z_even: {}", format_float(lim.z_even));
        println!("x_odd: {}", format_float(lim.x_odd));
        println!("y_odd: {}", format_float(lim.y_odd));
        println!("z_odd: {}", format_float(lim.z_odd));
        println!("u fixed-point residual: {residual:e}");
        if lim.x_even == lim.x_odd && lim.z_even == lim.z_odd {
            println!("note: even and odd limits coincide (period not prime)");
        }
        if let Some(dev) = simulation {
            println!("simulation agreement: max relative deviation {dev:e}");
        }
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

/// Inclusive grid axis `lo:hi:n`.
#[derive(Debug, Clone)]
pub struct GridAxis {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl FromStr for GridAxis {
    type Err = String;

    fn from_str(text: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected `lo:hi:n`, got `{text}`"));
        }
        let lo: f64 = parts[0].parse().map_err(|_| format!("bad lower bound `{}`", parts[0]))?;
        let hi: f64 = parts[1].parse().map_err(|_| format!("bad upper bound `{}`", parts[1]))?;
        let n: usize = parts[2].parse().map_err(|_| format!("bad point count `{}`", parts[2]))?;
        if !(lo.is_finite() && lo > 0.0) {
            return Err(format!("lower bound must be positive, got {lo}"));
        }
        if !(hi.is_finite() && hi >= lo) {
            return Err(format!("upper bound must be >= lower bound, got {hi}"));
        }
        if n == 0 {
            return Err("point count must be at least 1".into());
        }
        Ok(GridAxis { lo, hi, n })
    }
}

impl GridAxis {
    pub fn values(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        (0..self.n)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (self.n - 1) as f64)
            .collect()
    }
}

#[derive(Args)]
pub struct SweepArgs {
    /// Grid axis for alpha as `lo:hi:n`.
    #[arg(long)]
    pub alpha: GridAxis,
    /// Grid axis for A1 as `lo:hi:n`.
    #[arg(long = "A1")]
    pub a1: GridAxis,
    /// Grid axis for A2 as `lo:hi:n`.
    #[arg(long = "A2")]
    pub a2: GridAxis,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Worker threads for independent cells; the row order is the
    /// lexicographic grid order regardless.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

fn sweep_row(alpha: f64, a1: f64, a2: f64) -> String {
    let p = Example3Params::new(alpha, a1, a2).expect("grid values are positive");
    let analysis = example3_analyze(&p);
    let (w1, w2) = match analysis.roots {
        Some((w1, w2)) => (format_float(w1), format_float(w2)),
        None => (String::new(), String::new()),
    };
    format!(
        "{},{},{},{},{},{}",
        format_float(alpha),
        format_float(a1),
        format_float(a2),
        analysis.case,
        w1,
        w2
    )
}

pub fn sweep(args: SweepArgs) -> Result<u8> {
    if args.workers == 0 {
        return Err(anyhow!("--workers must be at least 1"));
    }
    let mut cells = Vec::new();
    for &alpha in &args.alpha.values() {
        for &a1 in &args.a1.values() {
            for &a2 in &args.a2.values() {
                cells.push((alpha, a1, a2));
            }
        }
    }

    let rows: Vec<String> = if args.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.workers)
            .build()
            .context("cannot build worker pool")?;
        pool.install(|| {
            cells
                .par_iter()
                .map(|&(alpha, a1, a2)| sweep_row(alpha, a1, a2))
                .collect()
        })
    } else {
        cells
            .iter()
            .map(|&(alpha, a1, a2)| sweep_row(alpha, a1, a2))
            .collect()
    };

    let mut out = String::from("alpha,A1,A2,case,w1,w2\n");
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    match &args.output {
        Some(path) => std::fs::write(path, out)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{out}"),
    }
    Ok(0)
}
