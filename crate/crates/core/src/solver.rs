//! Finding every parameter triple whose inscribed triangle has a target
//! shape.
//!
//! The strategy is deliberately plain: evaluate the residual (chordal
//! distance on S³ between the configuration's shape and the target) on a
//! full `n³` lattice of the parameter torus, keep the local minima, polish
//! each with a damped Gauss-Newton iteration on the squared residual, then
//! deduplicate. No randomness anywhere, so repeated runs agree bit for bit;
//! lattice cells too close to a parameter collision are skipped, which costs
//! nothing for non-flat targets because collided configurations are flat.

use crate::config_map::{
    criticality, edge_pair, shape_jacobian, ParamTriple, DEFAULT_DIAGNOSTIC_TOL,
};
use crate::curve::Curve;
use crate::shape::{Shape, Triangle, DEGENERATE_EPS};
use nalgebra::{Matrix2, Vector2, Vector4};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Singular-value threshold below which a refined solution is flagged as
/// sitting at (or numerically near) a critical configuration.
pub const CRITICALITY_SIGMA_TOL: f64 = 1e-8;

/// A shape counts as flat for status reporting when `|det|` is below this.
pub const FLAT_TARGET_EPS: f64 = 1e-12;

const MAX_CANDIDATES: usize = 200;
const VALIDATION_SAMPLES: usize = 256;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error(
        "curve {name} failed validation (min speed {min_speed:.3e}, \
         min separation ratio {min_separation_ratio:.3e})"
    )]
    CurveRejected {
        name: String,
        min_speed: f64,
        min_separation_ratio: f64,
    },
    #[error("target triangle is flat; it has no circumscribed circle")]
    FlatTarget,
}

/// Knobs for [`solve`]. The defaults resolve well-separated solutions on
/// curves of moderate wiggliness; crank `grid_n` for curves with fine
/// features.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverConfig {
    /// Lattice resolution per torus axis (the scan covers `grid_n³` cells).
    pub grid_n: usize,
    /// Minimum pairwise torus distance between the three parameters, both
    /// for scan cells and for accepted solutions. Configurations below it
    /// are nearly collided: their shapes crowd the flat torus and a root
    /// there is a collapsing triple, not an inscribed triangle.
    pub diag_exclusion: f64,
    /// Squared-residual scale at which Gauss-Newton declares convergence
    /// (the iteration polishes a couple of orders below it, so accepted
    /// residuals land at the numerical floor).
    pub newton_tol: f64,
    /// Cap on Gauss-Newton steps per candidate.
    pub max_iter: usize,
    /// Refined roots within this torus distance (max over coordinates)
    /// merge into the one with the smaller residual.
    pub dedup_tol: f64,
    /// A refined root is a solution when its residual is at most this.
    pub residual_accept: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            grid_n: 64,
            diag_exclusion: 1e-3,
            newton_tol: 1e-12,
            max_iter: 50,
            dedup_tol: 1e-4,
            residual_accept: 1e-8,
        }
    }
}

impl SolverConfig {
    fn validate(&self) -> Result<(), SolveError> {
        if self.grid_n < 8 {
            return Err(SolveError::InvalidConfig(format!(
                "grid_n must be at least 8, got {}",
                self.grid_n
            )));
        }
        for (name, v) in [
            ("diag_exclusion", self.diag_exclusion),
            ("newton_tol", self.newton_tol),
            ("dedup_tol", self.dedup_tol),
            ("residual_accept", self.residual_accept),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(SolveError::InvalidConfig(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if self.max_iter == 0 {
            return Err(SolveError::InvalidConfig("max_iter must be positive".into()));
        }
        Ok(())
    }
}

/// One inscribed triangle realizing the target shape.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Solution {
    pub params: ParamTriple,
    /// Chordal shape distance to the target at `params`.
    pub residual: f64,
    /// The triangle vertices `(c(t0), c(t1), c(t2))`.
    #[serde(serialize_with = "serialize_vertices")]
    pub vertices: [Complex64; 3],
    /// Whether the configuration is a regular point of the configuration
    /// map (singular value test at [`CRITICALITY_SIGMA_TOL`]).
    pub regular: bool,
    pub newton_iters: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    /// At least one solution met `residual_accept`.
    Found,
    /// Nothing met the acceptance threshold. For a C¹ embedded curve and a
    /// non-flat target this means the resolution failed, not that no
    /// solution exists.
    NotFound,
    /// Nothing was found and the target itself is flat, where no existence
    /// guarantee holds in the first place.
    DegenerateTarget,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub curve: String,
    pub target: Shape,
    pub status: SolveStatus,
    /// Accepted solutions, deduplicated, sorted by residual (ties broken by
    /// parameters).
    pub solutions: Vec<Solution>,
    /// Number of scan local minima handed to the Gauss-Newton polish.
    pub scan_minima_examined: usize,
}

fn serialize_vertices<S: Serializer>(v: &[Complex64; 3], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(3))?;
    for z in v {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

fn target_vec4(target: &Shape) -> Vector4<f64> {
    let c = target.coords();
    Vector4::new(c[0], c[1], c[2], c[3])
}

/// Residual and residual vector of the normalized configuration against the
/// target; `None` where the configuration is degenerate.
fn eval_residual(c: &Curve, p: ParamTriple, t4: &Vector4<f64>) -> Option<(Vector4<f64>, f64)> {
    let (w1, w2) = edge_pair(c, p);
    let v = Vector4::new(w1.re, w1.im, w2.re, w2.im);
    let n = v.norm();
    if n <= DEGENERATE_EPS {
        return None;
    }
    let e = v / n - t4;
    let sq = e.norm_squared();
    Some((e, sq))
}

/// The full scan lattice of residuals for several targets at once, reduced
/// to the minimum per target. Useful on its own for impossibility evidence:
/// a large scan minimum certifies that nothing close to the target shape is
/// inscribed anywhere near the lattice.
pub fn scan_min_residual(
    c: &Curve,
    targets: &[Shape],
    grid_n: usize,
    diag_exclusion: f64,
) -> Vec<f64> {
    let n = grid_n;
    let pts: Vec<Complex64> = (0..n).map(|i| c.point(i as f64 / n as f64)).collect();
    let t4s: Vec<[f64; 4]> = targets.iter().map(|t| t.coords()).collect();
    let excluded = pair_exclusion(n, diag_exclusion);
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut mins = vec![f64::INFINITY; t4s.len()];
            for j in 0..n {
                if excluded[i * n + j] {
                    continue;
                }
                let w1 = pts[j] - pts[i];
                for k in 0..n {
                    if excluded[i * n + k] || excluded[j * n + k] {
                        continue;
                    }
                    let w2 = pts[k] - pts[i];
                    let nsq = w1.norm_sqr() + w2.norm_sqr();
                    if nsq <= DEGENERATE_EPS * DEGENERATE_EPS {
                        continue;
                    }
                    let inv = nsq.sqrt().recip();
                    for (m, t4) in t4s.iter().enumerate() {
                        let dot = w1.re * t4[0] + w1.im * t4[1] + w2.re * t4[2] + w2.im * t4[3];
                        let r2 = (2.0 - 2.0 * dot * inv).max(0.0);
                        if r2 < mins[m] {
                            mins[m] = r2;
                        }
                    }
                }
            }
            mins
        })
        .reduce(
            || vec![f64::INFINITY; targets.len()],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x = x.min(y);
                }
                a
            },
        )
        .into_iter()
        .map(f64::sqrt)
        .collect()
}

/// `excluded[i * n + j]` marks lattice parameter pairs within the exclusion
/// radius of each other (including `i == j`).
fn pair_exclusion(n: usize, delta: f64) -> Vec<bool> {
    let mut ex = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            let d = (i as f64 - j as f64).abs() / n as f64;
            ex[i * n + j] = d.min(1.0 - d) <= delta;
        }
    }
    ex
}

/// Residuals on the full lattice; excluded or degenerate cells get +∞.
fn residual_grid(c: &Curve, t4: &Vector4<f64>, n: usize, delta: f64) -> Vec<f64> {
    let pts: Vec<Complex64> = (0..n).map(|i| c.point(i as f64 / n as f64)).collect();
    let excluded = pair_exclusion(n, delta);
    let mut grid = vec![f64::INFINITY; n * n * n];
    grid.par_chunks_mut(n * n).enumerate().for_each(|(i, slab)| {
        for j in 0..n {
            if excluded[i * n + j] {
                continue;
            }
            let w1 = pts[j] - pts[i];
            for k in 0..n {
                if excluded[i * n + k] || excluded[j * n + k] {
                    continue;
                }
                let w2 = pts[k] - pts[i];
                let nsq = w1.norm_sqr() + w2.norm_sqr();
                if nsq <= DEGENERATE_EPS * DEGENERATE_EPS {
                    continue;
                }
                let dot = w1.re * t4[0] + w1.im * t4[1] + w2.re * t4[2] + w2.im * t4[3];
                slab[j * n + k] = (2.0 - 2.0 * dot / nsq.sqrt()).max(0.0);
            }
        }
    });
    grid
}

/// Lattice points that are local minima of the residual among their 26
/// torus neighbors, best first, capped at `MAX_CANDIDATES`.
fn local_minima(grid: &[f64], n: usize) -> Vec<(f64, [usize; 3])> {
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    let mut minima: Vec<(f64, [usize; 3])> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let grid = &grid;
            (0..n).flat_map(move |j| {
                (0..n).filter_map(move |k| {
                    let r = grid[idx(i, j, k)];
                    if !r.is_finite() {
                        return None;
                    }
                    for di in [n - 1, 0, 1] {
                        for dj in [n - 1, 0, 1] {
                            for dk in [n - 1, 0, 1] {
                                if di == 0 && dj == 0 && dk == 0 {
                                    continue;
                                }
                                let q =
                                    grid[idx((i + di) % n, (j + dj) % n, (k + dk) % n)];
                                if q < r {
                                    return None;
                                }
                            }
                        }
                    }
                    Some((r, [i, j, k]))
                })
            })
        })
        .collect();
    minima.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    minima.truncate(MAX_CANDIDATES);
    minima
}

/// Trace of one Gauss-Newton polish.
#[derive(Debug, Clone, PartialEq)]
pub struct Refined {
    pub params: ParamTriple,
    /// Chordal shape distance to the target at the final iterate.
    pub residual: f64,
    pub iterations: usize,
    /// Squared residuals, starting value first, one entry per accepted step.
    pub squared_history: Vec<f64>,
}

/// Damped Gauss-Newton on the squared chordal residual, starting at
/// `start`. Steps solve the projected 4×3 Jacobian in the least-squares
/// sense and are halved until they improve the residual; the iteration
/// stops on stall, on the iteration cap, or once the squared residual is
/// two orders below both `newton_tol` and `residual_accept²`.
pub fn gauss_newton(c: &Curve, target: &Shape, start: ParamTriple, cfg: &SolverConfig) -> Refined {
    let t4 = target_vec4(target);
    let floor = cfg.newton_tol.min(cfg.residual_accept * cfg.residual_accept) * 1e-4;
    let mut p = start;
    let Some((mut e, mut sq)) = eval_residual(c, p, &t4) else {
        return Refined {
            params: start,
            residual: f64::INFINITY,
            iterations: 0,
            squared_history: vec![f64::INFINITY],
        };
    };
    let mut history = vec![sq];
    let mut iterations = 0;
    while iterations < cfg.max_iter && sq > floor {
        let Ok(jac) = shape_jacobian(c, p) else { break };
        let svd = jac.svd(true, true);
        let Ok(delta) = svd.solve(&(-e), 1e-12) else {
            break;
        };
        let mut improved = false;
        let mut scale = 1.0;
        for _ in 0..25 {
            let q = p.offset([delta.x * scale, delta.y * scale, delta.z * scale]);
            if let Some((e2, sq2)) = eval_residual(c, q, &t4) {
                if sq2 < sq {
                    p = q;
                    e = e2;
                    sq = sq2;
                    improved = true;
                    break;
                }
            }
            scale *= 0.5;
        }
        if !improved {
            break;
        }
        iterations += 1;
        history.push(sq);
    }
    Refined {
        params: p,
        residual: sq.sqrt(),
        iterations,
        squared_history: history,
    }
}

/// A polished root counts as a solution when the residual meets the
/// threshold and the parameters stayed clear of a collision. Flat and
/// near-flat targets are exactly where the second clause bites: the
/// iteration happily drives the residual to zero by collapsing all three
/// parameters to one point, which is a limit shape, not a triangle.
fn accepts(r: &Refined, cfg: &SolverConfig) -> bool {
    r.residual <= cfg.residual_accept
        && r.params.min_pairwise_distance() > cfg.diag_exclusion
}

fn make_solution(c: &Curve, r: &Refined) -> Solution {
    let regular = criticality(c, r.params, CRITICALITY_SIGMA_TOL, DEFAULT_DIAGNOSTIC_TOL)
        .map(|cr| !cr.is_critical)
        .unwrap_or(false);
    Solution {
        params: r.params,
        residual: r.residual,
        vertices: [
            c.point(r.params.t0),
            c.point(r.params.t1),
            c.point(r.params.t2),
        ],
        regular,
        newton_iters: r.iterations,
    }
}

/// Finds all parameter triples on `c` whose inscribed triangle has shape
/// `target`. The curve must pass numerical validation; the target may be
/// flat, but then nothing is guaranteed to exist and a miss is reported as
/// [`SolveStatus::DegenerateTarget`].
pub fn solve(c: &Curve, target: &Shape, cfg: &SolverConfig) -> Result<SolveReport, SolveError> {
    cfg.validate()?;
    let validation = c.validate(VALIDATION_SAMPLES);
    if !validation.is_embedded_numerically {
        return Err(SolveError::CurveRejected {
            name: c.name().to_string(),
            min_speed: validation.min_speed,
            min_separation_ratio: validation.min_separation_ratio,
        });
    }

    let t4 = target_vec4(target);
    let n = cfg.grid_n;
    let grid = residual_grid(c, &t4, n, cfg.diag_exclusion);
    let candidates = local_minima(&grid, n);
    let scan_minima_examined = candidates.len();
    drop(grid);

    let mut refined: Vec<Refined> = candidates
        .par_iter()
        .map(|&(_, [i, j, k])| {
            let start = ParamTriple::new(
                i as f64 / n as f64,
                j as f64 / n as f64,
                k as f64 / n as f64,
            );
            gauss_newton(c, target, start, cfg)
        })
        .filter(|r| accepts(r, cfg))
        .collect();
    refined.sort_by(|a, b| {
        a.residual
            .total_cmp(&b.residual)
            .then(a.params.t0.total_cmp(&b.params.t0))
            .then(a.params.t1.total_cmp(&b.params.t1))
            .then(a.params.t2.total_cmp(&b.params.t2))
    });

    let mut solutions: Vec<Solution> = Vec::new();
    for r in &refined {
        if solutions
            .iter()
            .all(|s| s.params.distance(&r.params) > cfg.dedup_tol)
        {
            solutions.push(make_solution(c, r));
        }
    }

    let status = if !solutions.is_empty() {
        SolveStatus::Found
    } else if target.det().abs() <= FLAT_TARGET_EPS {
        SolveStatus::DegenerateTarget
    } else {
        SolveStatus::NotFound
    };
    Ok(SolveReport {
        curve: c.name().to_string(),
        target: *target,
        status,
        solutions,
        scan_minima_examined,
    })
}

/// Closed-form inscription on the unit circle: project the triangle's
/// vertices from its circumcenter. The result is the unique parameter
/// triple whose configuration on the circle has the triangle's shape.
pub fn circle_oracle(t: &Triangle) -> Result<ParamTriple, SolveError> {
    let [z0, z1, z2] = t.vertices();
    let d1 = z1 - z0;
    let d2 = z2 - z0;
    let cross = d1.re * d2.im - d1.im * d2.re;
    if cross.abs() <= 1e-12 * d1.norm() * d2.norm() || d1.norm() == 0.0 || d2.norm() == 0.0 {
        return Err(SolveError::FlatTarget);
    }
    // Circumcenter O from |z1 - O|² = |z0 - O|² and |z2 - O|² = |z0 - O|².
    let m = Matrix2::new(2.0 * d1.re, 2.0 * d1.im, 2.0 * d2.re, 2.0 * d2.im);
    let rhs = Vector2::new(
        z1.norm_sqr() - z0.norm_sqr(),
        z2.norm_sqr() - z0.norm_sqr(),
    );
    let o = m.lu().solve(&rhs).ok_or(SolveError::FlatTarget)?;
    let center = Complex64::new(o.x, o.y);
    let angle = |z: Complex64| ((z - center).arg() / std::f64::consts::TAU).rem_euclid(1.0);
    Ok(ParamTriple::new(angle(z0), angle(z1), angle(z2)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathDiagnostic {
    /// The tracked branch ran into a configuration where the map loses
    /// rank; the branch may genuinely end here.
    CriticalPoint,
    /// The corrector stopped improving without a detectable rank loss.
    IterationDivergence,
}

impl std::fmt::Display for PathDiagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PathDiagnostic::CriticalPoint => "critical point encountered",
            PathDiagnostic::IterationDivergence => "iteration divergence",
        })
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ContinueError {
    #[error("invalid continuation setup: {0}")]
    Invalid(String),
    #[error("continuation stalled at s = {s}: {diagnostic}")]
    Stalled { s: f64, diagnostic: PathDiagnostic },
}

/// Tracks a known solution along a family of curves `s ↦ family(s)` from
/// `s = 0` to `s = 1`: at each step the previous triple seeds a Gauss-Newton
/// correction on the next curve. Failed corrections halve the step, up to
/// ten times in a row, before giving up with the last good `s` and a
/// diagnosis of the stall.
pub fn continue_solution(
    family: impl Fn(f64) -> Curve,
    target: &Shape,
    start: &Solution,
    steps: usize,
    cfg: &SolverConfig,
) -> Result<Solution, ContinueError> {
    if steps == 0 {
        return Err(ContinueError::Invalid("steps must be positive".into()));
    }
    cfg.validate()
        .map_err(|e| ContinueError::Invalid(e.to_string()))?;

    let check = gauss_newton(&family(0.0), target, start.params, cfg);
    if !accepts(&check, cfg) {
        return Err(ContinueError::Invalid(format!(
            "start is not a solution at s = 0 (residual {:.3e})",
            check.residual
        )));
    }

    let h0 = 1.0 / steps as f64;
    let mut s = 0.0;
    let mut h = h0;
    let mut last = check;
    let mut halvings = 0;
    while s < 1.0 - 1e-12 {
        let s_next = (s + h).min(1.0);
        let curve = family(s_next);
        let corrected = gauss_newton(&curve, target, last.params, cfg);
        if accepts(&corrected, cfg) {
            s = s_next;
            last = corrected;
            h = (2.0 * h).min(h0);
            halvings = 0;
        } else {
            halvings += 1;
            if halvings > 10 {
                // Diagnose at the stalled iterate on the curve that refused
                // the correction: a tiny singular value points at a genuine
                // branch end.
                let diagnostic = match criticality(&curve, corrected.params, 1e-4, 1e-4) {
                    Ok(cr) if cr.is_critical => PathDiagnostic::CriticalPoint,
                    _ => PathDiagnostic::IterationDivergence,
                };
                return Err(ContinueError::Stalled { s, diagnostic });
            }
            h *= 0.5;
        }
    }
    // The loop only exits after an accepted correction at s = 1.
    Ok(make_solution(&family(1.0), &last))
}
