//! Command line front end: classify triangle shapes, inscribe them on
//! curves, compute bidegrees, and reproduce the cornered-curve
//! counterexample sweep.
//!
//! Every subcommand prints one JSON document to stdout. Exit codes are
//! scriptable: 0 on success (including an expected miss on a cornered
//! curve), 2 for validation failures, 3 when a smooth curve unexpectedly
//! yields no solution for a non-flat target, 4 for unparseable curve or
//! triangle specifiers.

mod svg;

use clap::{Args, Parser, Subcommand};
use inscribed_core::curve::from_spec;
use inscribed_core::{
    bidegree, scan_min_residual, solve, Curve, CurveError, Shape, Smoothness, SolveReport,
    SolveStatus, SolverConfig, Triangle,
};
use num_complex::Complex64;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "inscribed",
    version,
    about = "Inscribe triangles of prescribed shape on closed planar curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a triangle: shape coordinates, chart point, loci, orientation
    Shape(ShapeArgs),
    /// Find all inscriptions of a triangle's shape on a curve
    Solve(SolveArgs),
    /// Count solutions over both orientation sides and report the bidegree
    Degree(DegreeArgs),
    /// Sweep obtuse isosceles shapes on the cornered half-lemniscate
    Counterexample(CounterexampleArgs),
}

#[derive(Args)]
struct ShapeArgs {
    /// Triangle: "x0,y0 x1,y1 x2,y2" or a preset (equilateral,
    /// right-isosceles, obtuse-isosceles:DEG)
    triangle: String,
    /// Classification tolerance in the chart
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Also write the JSON report to this file
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Curve: circle | ellipse:a,b | star:eps,k | spline:PATH | lemniscate
    #[arg(long)]
    curve: String,
    /// Triangle: "x0,y0 x1,y1 x2,y2" or a preset name
    #[arg(long)]
    triangle: String,
    /// Scan resolution per torus axis
    #[arg(long)]
    grid: Option<usize>,
    /// Residual below which a refined root counts as a solution
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Solve for all six vertex labelings of the triangle
    #[arg(long)]
    all_labelings: bool,
    /// Write a figure of the curve, solutions, and target to this file
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Also write the JSON report to this file
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct DegreeArgs {
    /// Curve: circle | ellipse:a,b | star:eps,k | spline:PATH | lemniscate
    #[arg(long)]
    curve: String,
    /// Scan resolution per torus axis
    #[arg(long)]
    grid: Option<usize>,
    /// Also write the JSON report to this file
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct CounterexampleArgs {
    /// Apex angles in degrees, comma separated (default: 95 through 175 in
    /// steps of 10)
    #[arg(long)]
    angles: Option<String>,
    /// Scan resolution per torus axis
    #[arg(long, default_value_t = 96)]
    grid: usize,
    /// Also write the JSON report to this file
    #[arg(long)]
    json: Option<PathBuf>,
}

enum CmdError {
    Parse(String),
    Validation(String),
    /// A smooth embedded curve with a non-flat target should always have a
    /// solution; a miss means the resolution failed, and scripts get their
    /// own exit code for it.
    NotFoundOnSmooth(String),
}

impl CmdError {
    fn exit_code(&self) -> u8 {
        match self {
            CmdError::Parse(_) => 4,
            CmdError::Validation(_) => 2,
            CmdError::NotFoundOnSmooth(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CmdError::Parse(m) | CmdError::Validation(m) | CmdError::NotFoundOnSmooth(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Shape(args) => cmd_shape(&args),
        Command::Solve(args) => cmd_solve(&args),
        Command::Degree(args) => cmd_degree(&args),
        Command::Counterexample(args) => cmd_counterexample(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn parse_triangle(spec: &str) -> Result<Triangle, CmdError> {
    match spec {
        "equilateral" => {
            return Ok(Triangle::new(
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3),
            ))
        }
        "right-isosceles" => {
            return Ok(Triangle::new(
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 1.0),
            ))
        }
        _ => {}
    }
    if let Some(raw) = spec.strip_prefix("obtuse-isosceles:") {
        let degrees: f64 = raw
            .parse()
            .map_err(|_| CmdError::Parse(format!("cannot parse apex angle {raw:?}")))?;
        if !(90.0 < degrees && degrees < 180.0) {
            return Err(CmdError::Validation(format!(
                "obtuse apex angle must be strictly between 90 and 180 degrees, got {degrees}"
            )));
        }
        return Ok(apex_isosceles(degrees));
    }
    spec.parse()
        .map_err(|e| CmdError::Parse(format!("triangle {spec:?}: {e}")))
}

/// Isosceles triangle with the apex at the origin and unit legs opening by
/// the given angle, base vertices listed after the apex.
fn apex_isosceles(apex_degrees: f64) -> Triangle {
    let half = apex_degrees.to_radians() / 2.0;
    Triangle::new(
        Complex64::new(0.0, 0.0),
        Complex64::from_polar(1.0, half),
        Complex64::from_polar(1.0, -half),
    )
}

fn parse_curve(spec: &str) -> Result<Curve, CmdError> {
    from_spec(spec).map_err(|e| match e {
        CurveError::Parse(_) => CmdError::Parse(e.to_string()),
        other => CmdError::Validation(other.to_string()),
    })
}

fn triangle_json(t: &Triangle) -> Value {
    Value::from(
        t.vertices()
            .iter()
            .map(|z| json!([z.re, z.im]))
            .collect::<Vec<_>>(),
    )
}

fn shape_json(s: &Shape) -> Value {
    json!({
        "coords": s.coords(),
        "hopf": serde_json::to_value(s.hopf()).expect("hopf serializes"),
    })
}

/// Prints the document to stdout and optionally writes it to a file.
fn emit(doc: &Value, path: Option<&PathBuf>) -> Result<(), CmdError> {
    let text = serde_json::to_string_pretty(doc).expect("reports serialize");
    println!("{text}");
    if let Some(p) = path {
        std::fs::write(p, text + "\n")
            .map_err(|e| CmdError::Validation(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn cmd_shape(args: &ShapeArgs) -> Result<(), CmdError> {
    let t = parse_triangle(&args.triangle)?;
    let shape =
        Shape::of_triangle(&t).map_err(|e| CmdError::Validation(format!("triangle: {e}")))?;
    let class = shape
        .classify(args.tol)
        .map_err(|e| CmdError::Validation(e.to_string()))?;
    let doc = json!({
        "triangle": triangle_json(&t),
        "shape": shape.coords(),
        "hopf": serde_json::to_value(shape.hopf()).expect("hopf serializes"),
        "classes": class.tags.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "orientation": class.orientation,
    });
    emit(&doc, args.json.as_ref())
}

fn solution_json(report: &SolveReport) -> Vec<Value> {
    report
        .solutions
        .iter()
        .map(|s| {
            json!({
                "t": s.params.as_array(),
                "residual": s.residual,
                "vertices": s.vertices.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>(),
                "regular": s.regular,
                "newton_iters": s.newton_iters,
            })
        })
        .collect()
}

fn status_str(status: SolveStatus) -> &'static str {
    match status {
        SolveStatus::Found => "found",
        SolveStatus::NotFound => "not_found",
        SolveStatus::DegenerateTarget => "degenerate_target",
    }
}

fn cmd_solve(args: &SolveArgs) -> Result<(), CmdError> {
    let curve = parse_curve(&args.curve)?;
    let triangle = parse_triangle(&args.triangle)?;
    let cfg = SolverConfig {
        grid_n: args.grid.unwrap_or_else(|| SolverConfig::default().grid_n),
        residual_accept: args.tol,
        ..SolverConfig::default()
    };

    let labelings: Vec<(Triangle, [usize; 3])> = if args.all_labelings {
        triangle.labelings().to_vec()
    } else {
        vec![(triangle, [0, 1, 2])]
    };

    let mut entries = Vec::new();
    let mut reports: Vec<(usize, SolveReport)> = Vec::new();
    let mut missed_shapes = Vec::new();
    for (idx, (t, perm)) in labelings.iter().enumerate() {
        let target =
            Shape::of_triangle(t).map_err(|e| CmdError::Validation(format!("triangle: {e}")))?;
        let report =
            solve(&curve, &target, &cfg).map_err(|e| CmdError::Validation(e.to_string()))?;
        if report.status != SolveStatus::Found {
            missed_shapes.push((idx, target));
        }
        entries.push(json!({
            "labeling": perm,
            "status": status_str(report.status),
            "scan_minima_examined": report.scan_minima_examined,
            "solutions": solution_json(&report),
        }));
        reports.push((idx, report));
    }

    // For misses, report how close the scan got: a large floor is the
    // evidence that nothing with that shape is inscribed.
    if !missed_shapes.is_empty() {
        let shapes: Vec<Shape> = missed_shapes.iter().map(|(_, s)| *s).collect();
        let minima = scan_min_residual(&curve, &shapes, cfg.grid_n, cfg.diag_exclusion);
        for ((idx, _), min) in missed_shapes.iter().zip(minima) {
            entries[*idx]["min_scan_residual"] = json!(min);
        }
    }

    let found = reports
        .iter()
        .any(|(_, r)| r.status == SolveStatus::Found);
    let target_shape = Shape::of_triangle(&labelings[0].0)
        .map_err(|e| CmdError::Validation(format!("triangle: {e}")))?;
    let overall = if found {
        SolveStatus::Found
    } else if reports
        .iter()
        .any(|(_, r)| r.status == SolveStatus::DegenerateTarget)
    {
        SolveStatus::DegenerateTarget
    } else {
        SolveStatus::NotFound
    };

    let doc = json!({
        "curve": curve.name(),
        "grid": cfg.grid_n,
        "residual_accept": cfg.residual_accept,
        "target": {
            "triangle": triangle_json(&labelings[0].0),
            "shape": shape_json(&target_shape),
        },
        "status": status_str(overall),
        "labelings": entries,
    });
    emit(&doc, args.json.as_ref())?;

    if let Some(path) = &args.svg {
        let found_vertices: Vec<[Complex64; 3]> = reports
            .iter()
            .flat_map(|(_, r)| r.solutions.iter().map(|s| s.vertices))
            .collect();
        let figure = svg::render(&curve, &found_vertices, &labelings[0].0);
        std::fs::write(path, figure)
            .map_err(|e| CmdError::Validation(format!("cannot write {}: {e}", path.display())))?;
    }

    if overall == SolveStatus::NotFound && curve.smoothness() == Smoothness::C1 {
        return Err(CmdError::NotFoundOnSmooth(format!(
            "no inscription of a non-flat shape found on the smooth curve {}; \
             raise --grid above {}",
            curve.name(),
            cfg.grid_n
        )));
    }
    Ok(())
}

fn cmd_degree(args: &DegreeArgs) -> Result<(), CmdError> {
    let curve = parse_curve(&args.curve)?;
    let cfg = SolverConfig {
        grid_n: args.grid.unwrap_or_else(|| SolverConfig::default().grid_n),
        ..SolverConfig::default()
    };
    let report = bidegree(&curve, &cfg).map_err(|e| CmdError::Validation(e.to_string()))?;
    let doc = json!({
        "curve": curve.name(),
        "minus": report.d_minus,
        "plus": report.d_plus,
        "counts": report.preimage_counts,
        "probes": [shape_json(&report.probes[0]), shape_json(&report.probes[1])],
        "all_regular": report.all_regular,
        "grid": report.grid_n,
    });
    emit(&doc, args.json.as_ref())
}

fn cmd_counterexample(args: &CounterexampleArgs) -> Result<(), CmdError> {
    let angles: Vec<f64> = match &args.angles {
        None => (0..9).map(|i| 95.0 + 10.0 * f64::from(i)).collect(),
        Some(raw) => raw
            .split(',')
            .map(|s| {
                let a: f64 = s
                    .trim()
                    .parse()
                    .map_err(|_| CmdError::Parse(format!("cannot parse apex angle {s:?}")))?;
                if !(0.0 < a && a < 180.0) {
                    return Err(CmdError::Validation(format!(
                        "apex angle must be strictly between 0 and 180 degrees, got {a}"
                    )));
                }
                Ok(a)
            })
            .collect::<Result<_, _>>()?,
    };
    if args.grid < 8 {
        return Err(CmdError::Validation(format!(
            "grid must be at least 8, got {}",
            args.grid
        )));
    }

    let lemniscate = Curve::half_lemniscate();
    let circle = Curve::circle();
    let cfg = SolverConfig::default();
    let mut sweep = Vec::new();
    for angle in angles {
        let t = apex_isosceles(angle);
        let shapes: Vec<Shape> = t
            .labelings()
            .iter()
            .map(|(t, _)| Shape::of_triangle(t).expect("legs are unit length"))
            .collect();
        let minima = scan_min_residual(&lemniscate, &shapes, args.grid, cfg.diag_exclusion);
        let floor = minima.iter().fold(f64::INFINITY, |a, b| a.min(*b));

        let on_circle =
            solve(&circle, &shapes[0], &cfg).map_err(|e| CmdError::Validation(e.to_string()))?;
        let circle_residual = on_circle
            .solutions
            .first()
            .map(|s| s.residual)
            .unwrap_or(f64::NAN);

        sweep.push(json!({
            "apex_deg": angle,
            "min_scan_residual": floor,
            "per_labeling": minima,
            "circle_residual": circle_residual,
        }));
    }

    let doc = json!({
        "curve": lemniscate.name(),
        "grid": args.grid,
        "sweep": sweep,
    });
    emit(&doc, args.json.as_ref())
}
