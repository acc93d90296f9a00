//! Closed parametrized plane curves of period 1.
//!
//! A [`Curve`] packages a point evaluator and a velocity evaluator; both wrap
//! their argument modulo 1, so any real parameter is valid. The built-in
//! constructors cover the circle, axis-aligned ellipses, polar star curves
//! `r(θ) = 1 + ε cos(kθ)`, periodic cubic splines through control points,
//! and a half-lemniscate whose closing corner makes it a Jordan curve that
//! fails to be C¹ at exactly one point. That last curve exists on purpose:
//! it is the classical specimen on which obtuse-apex isosceles shapes cannot
//! be inscribed, and the solver tests lean on it.

use num_complex::Complex64;
use serde::Serialize;
use std::fmt;
use std::path::Path;
use std::sync::Arc;
use thiserror::Error;

mod spline;

use spline::Spline;

/// Whether the curve is continuously differentiable everywhere. Curves
/// flagged [`Smoothness::NonC1`] still provide a velocity evaluator, but it
/// may jump at isolated parameters (one-sided derivatives).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Smoothness {
    C1,
    NonC1,
}

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("invalid curve parameter: {0}")]
    InvalidParameter(String),
    #[error("spline needs at least 4 control points, got {0}")]
    TooFewPoints(usize),
    #[error("spline control points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),
    #[error("curve failed the numerical embedding check: {0}")]
    NotEmbedded(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot parse curve specifier: {0}")]
    Parse(String),
}

type EvalFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A closed plane curve `c: ℝ/ℤ → ℂ` with a velocity evaluator `c'`.
#[derive(Clone)]
pub struct Curve {
    name: String,
    smoothness: Smoothness,
    point: EvalFn,
    velocity: EvalFn,
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Curve")
            .field("name", &self.name)
            .field("smoothness", &self.smoothness)
            .finish()
    }
}

impl Curve {
    /// The unit circle `t ↦ (cos 2πt, sin 2πt)`.
    pub fn circle() -> Curve {
        let tau = std::f64::consts::TAU;
        Curve {
            name: "circle".into(),
            smoothness: Smoothness::C1,
            point: Arc::new(move |t| Complex64::from_polar(1.0, tau * t)),
            velocity: Arc::new(move |t| {
                Complex64::new(0.0, tau) * Complex64::from_polar(1.0, tau * t)
            }),
        }
    }

    /// The axis-aligned ellipse `t ↦ (a cos 2πt, b sin 2πt)`.
    pub fn ellipse(a: f64, b: f64) -> Result<Curve, CurveError> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(CurveError::InvalidParameter(format!(
                "ellipse semi-axes must be positive and finite, got ({a}, {b})"
            )));
        }
        let tau = std::f64::consts::TAU;
        Ok(Curve {
            name: format!("ellipse({a},{b})"),
            smoothness: Smoothness::C1,
            point: Arc::new(move |t| {
                Complex64::new(a * (tau * t).cos(), b * (tau * t).sin())
            }),
            velocity: Arc::new(move |t| {
                Complex64::new(-a * tau * (tau * t).sin(), b * tau * (tau * t).cos())
            }),
        })
    }

    /// The polar star `r(θ) = 1 + ε cos(kθ)` with `θ = 2πt`. Requires
    /// `|ε| < 1` (so the radius stays positive) and `k ≥ 2`; the result is
    /// additionally run through the numerical embedding check.
    pub fn star(eps: f64, k: u32) -> Result<Curve, CurveError> {
        if !(eps.abs() < 1.0 && eps.is_finite()) {
            return Err(CurveError::InvalidParameter(format!(
                "star amplitude must satisfy |eps| < 1, got {eps}"
            )));
        }
        if k < 2 {
            return Err(CurveError::InvalidParameter(format!(
                "star frequency must be at least 2, got {k}"
            )));
        }
        let tau = std::f64::consts::TAU;
        let kf = f64::from(k);
        let curve = Curve {
            name: format!("star({eps},{k})"),
            smoothness: Smoothness::C1,
            point: Arc::new(move |t| {
                let th = tau * t;
                let r = 1.0 + eps * (kf * th).cos();
                Complex64::from_polar(r, th)
            }),
            velocity: Arc::new(move |t| {
                let th = tau * t;
                let r = 1.0 + eps * (kf * th).cos();
                let dr = -eps * kf * (kf * th).sin();
                // d/dt of r(θ) e^{iθ} with dθ/dt = 2π.
                tau * Complex64::from_polar(1.0, th) * Complex64::new(dr, r)
            }),
        };
        curve.check_embedded()?;
        Ok(curve)
    }

    /// A closed C² cubic spline through the given control points, in order,
    /// parametrized by scaled chord length. The curve closes itself; do not
    /// repeat the first point. Needs at least 4 pairwise distinct points and
    /// must pass the numerical embedding check.
    pub fn spline(points: &[Complex64]) -> Result<Curve, CurveError> {
        let spline = Arc::new(Spline::new(points)?);
        let s = Arc::clone(&spline);
        let d = Arc::clone(&spline);
        let curve = Curve {
            name: format!("spline({} points)", points.len()),
            smoothness: Smoothness::C1,
            point: Arc::new(move |t| s.point(t)),
            velocity: Arc::new(move |t| d.velocity(t)),
        };
        curve.check_embedded()?;
        Ok(curve)
    }

    /// One petal of the lemniscate `r = cos 2θ`, traced for `θ` from `-π/4`
    /// to `π/4`. Both ends sit at the origin, where the two tangent rays
    /// meet at a right angle, so the closed curve is embedded but not C¹:
    /// the velocity jumps at `t = 0`.
    pub fn half_lemniscate() -> Curve {
        let point = |t: f64| {
            let th = std::f64::consts::FRAC_PI_4 * (2.0 * t - 1.0);
            let r = (2.0 * th).cos();
            Complex64::from_polar(r, th)
        };
        let velocity = |t: f64| {
            let th = std::f64::consts::FRAC_PI_4 * (2.0 * t - 1.0);
            let r = (2.0 * th).cos();
            let dr = -2.0 * (2.0 * th).sin();
            std::f64::consts::FRAC_PI_2
                * Complex64::from_polar(1.0, th)
                * Complex64::new(dr, r)
        };
        Curve {
            name: "half-lemniscate".into(),
            smoothness: Smoothness::NonC1,
            point: Arc::new(point),
            velocity: Arc::new(velocity),
        }
    }

    /// A curve from raw evaluators. `point` and `velocity` receive a
    /// parameter already reduced to `[0, 1)`.
    pub fn from_fns(
        name: impl Into<String>,
        smoothness: Smoothness,
        point: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
        velocity: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
    ) -> Curve {
        Curve {
            name: name.into(),
            smoothness,
            point: Arc::new(point),
            velocity: Arc::new(velocity),
        }
    }

    /// The pointwise linear blend `(1-s)·self + s·other`. Useful as a
    /// homotopy between two curves; the blend of two embedded curves is not
    /// automatically embedded, so validate before trusting it.
    pub fn blend(&self, other: &Curve, s: f64) -> Curve {
        let (pa, pb) = (Arc::clone(&self.point), Arc::clone(&other.point));
        let (va, vb) = (Arc::clone(&self.velocity), Arc::clone(&other.velocity));
        let smoothness = if self.smoothness == Smoothness::C1 && other.smoothness == Smoothness::C1
        {
            Smoothness::C1
        } else {
            Smoothness::NonC1
        };
        Curve {
            name: format!("blend({},{},{s})", self.name, other.name),
            smoothness,
            point: Arc::new(move |t| (1.0 - s) * pa(t) + s * pb(t)),
            velocity: Arc::new(move |t| (1.0 - s) * va(t) + s * vb(t)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn is_c1(&self) -> bool {
        self.smoothness == Smoothness::C1
    }

    /// The point `c(t)`, for any real `t` (reduced mod 1).
    pub fn point(&self, t: f64) -> Complex64 {
        (self.point)(t.rem_euclid(1.0))
    }

    /// The velocity `c'(t)`, for any real `t` (reduced mod 1). For
    /// non-C¹ curves this is the one-sided derivative from the right at the
    /// corner parameters.
    pub fn velocity(&self, t: f64) -> Complex64 {
        (self.velocity)(t.rem_euclid(1.0))
    }

    /// Samples the curve on a uniform grid and reports the slowest speed and
    /// the worst chord-to-parameter-distance ratio over well separated
    /// sample pairs (torus distance at least `2 / n_samples`). The curve
    /// counts as numerically embedded when both quantities are positive;
    /// callers wanting a safety margin should inspect the ratio itself.
    ///
    /// `n_samples` must be at least 16.
    pub fn validate(&self, n_samples: usize) -> CurveValidationReport {
        assert!(n_samples >= 16, "validate needs at least 16 samples");
        let n = n_samples;
        let pts: Vec<Complex64> = (0..n).map(|i| self.point(i as f64 / n as f64)).collect();
        let min_speed = (0..n)
            .map(|i| self.velocity(i as f64 / n as f64).norm())
            .fold(f64::INFINITY, f64::min);
        let mut min_ratio = f64::INFINITY;
        for i in 0..n {
            for j in (i + 1)..n {
                let d = torus_distance((i as f64) / n as f64, (j as f64) / n as f64);
                if d < 2.0 / n as f64 {
                    continue;
                }
                min_ratio = min_ratio.min((pts[i] - pts[j]).norm() / d);
            }
        }
        CurveValidationReport {
            min_speed,
            min_separation_ratio: min_ratio,
            is_embedded_numerically: min_speed > 0.0 && min_ratio > 0.0,
            samples_used: n,
        }
    }

    /// Constructor-time gate: numerical embedding plus a proportional
    /// separation margin, so that a spline whose control polygon folds the
    /// curve through itself is rejected rather than accepted with a ratio
    /// that is positive only by grid luck.
    fn check_embedded(&self) -> Result<(), CurveError> {
        let n = 512;
        let report = self.validate(n);
        let (mut lo, mut hi) = (
            Complex64::new(f64::INFINITY, f64::INFINITY),
            Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        );
        for i in 0..n {
            let p = self.point(i as f64 / n as f64);
            lo = Complex64::new(lo.re.min(p.re), lo.im.min(p.im));
            hi = Complex64::new(hi.re.max(p.re), hi.im.max(p.im));
        }
        let diameter = (hi - lo).norm();
        if !report.is_embedded_numerically
            || report.min_separation_ratio <= 1e-3 * diameter
        {
            return Err(CurveError::NotEmbedded(format!(
                "min speed {:.3e}, min separation ratio {:.3e} over {} samples",
                report.min_speed, report.min_separation_ratio, n
            )));
        }
        Ok(())
    }
}

/// Distance between two parameters on the unit-period torus ℝ/ℤ.
pub fn torus_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Outcome of [`Curve::validate`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveValidationReport {
    pub min_speed: f64,
    pub min_separation_ratio: f64,
    pub is_embedded_numerically: bool,
    pub samples_used: usize,
}

/// Parses a curve specifier:
///
/// * `circle`
/// * `ellipse:A,B` (semi-axes)
/// * `star:EPS,K`
/// * `spline:PATH` (control point file, one `x y` or `x,y` pair per line, `#` starts
///   a comment)
/// * `lemniscate`
pub fn from_spec(spec: &str) -> Result<Curve, CurveError> {
    let (kind, args) = match spec.split_once(':') {
        Some((k, a)) => (k.trim(), Some(a.trim())),
        None => (spec.trim(), None),
    };
    let no_args = |kind: &str| {
        format!("curve {kind:?} takes no {}: separated arguments", '"')
    };
    match kind {
        "circle" => match args {
            None => Ok(Curve::circle()),
            Some(_) => Err(CurveError::Parse(no_args("circle"))),
        },
        "lemniscate" => match args {
            None => Ok(Curve::half_lemniscate()),
            Some(_) => Err(CurveError::Parse(no_args("lemniscate"))),
        },
        "ellipse" => {
            let [a, b] = parse_numbers(kind, args)?;
            Curve::ellipse(a, b)
        }
        "star" => {
            let [eps, k] = parse_numbers(kind, args)?;
            if k.fract() != 0.0 || !(0.0..=u32::MAX as f64).contains(&k) {
                return Err(CurveError::Parse(format!(
                    "star frequency must be a nonnegative integer, got {k}"
                )));
            }
            Curve::star(eps, k as u32)
        }
        "spline" => {
            let path = args.filter(|a| !a.is_empty()).ok_or_else(|| {
                CurveError::Parse("spline needs a control point file: spline:PATH".into())
            })?;
            let points = read_point_file(Path::new(path))?;
            Curve::spline(&points)
        }
        other => Err(CurveError::Parse(format!(
            "unknown curve {other:?}; expected circle, ellipse:A,B, star:EPS,K, spline:PATH or lemniscate"
        ))),
    }
}

fn parse_numbers<const N: usize>(kind: &str, args: Option<&str>) -> Result<[f64; N], CurveError> {
    let args = args.ok_or_else(|| {
        CurveError::Parse(format!("curve {kind:?} needs {N} comma separated numbers"))
    })?;
    let parts: Vec<&str> = args.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(CurveError::Parse(format!(
            "curve {kind:?} needs exactly {N} comma separated numbers, got {}",
            parts.len()
        )));
    }
    let mut out = [0.0; N];
    for (slot, raw) in out.iter_mut().zip(&parts) {
        *slot = raw.parse::<f64>().map_err(|_| {
            CurveError::Parse(format!("cannot parse number {raw:?} in {kind} arguments"))
        })?;
    }
    Ok(out)
}

/// Reads a spline control point file: one `x y` or `x,y` pair per line; blank lines
/// skipped, `#` starts a comment.
pub fn read_point_file(path: &Path) -> Result<Vec<Complex64>, CurveError> {
    let text = std::fs::read_to_string(path).map_err(|source| CurveError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_point_file(&text)
}

/// Parses the contents of a spline control point file.
pub fn parse_point_file(text: &str) -> Result<Vec<Complex64>, CurveError> {
    let mut points = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").replace(',', " ");
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 2 {
            return Err(CurveError::Parse(format!(
                "line {}: expected \"x y\" or \"x,y\", got {raw:?}",
                lineno + 1
            )));
        }
        let x = fields[0].parse::<f64>();
        let y = fields[1].parse::<f64>();
        match (x, y) {
            (Ok(x), Ok(y)) => points.push(Complex64::new(x, y)),
            _ => {
                return Err(CurveError::Parse(format!(
                    "line {}: cannot parse coordinates in {raw:?}",
                    lineno + 1
                )))
            }
        }
    }
    Ok(points)
}
