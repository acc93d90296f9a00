//! The configuration map: parameter triples to inscribed-triangle shapes.
//!
//! For a closed curve `c` the map sends `(t0, t1, t2)` to the shape of the
//! triangle `(c(t0), c(t1), c(t2))`. Inscribing a triangle of a prescribed
//! shape is exactly solving `F(p) = target`, so everything the solver needs
//! lives here: the map itself, its tangent map on the edge-pair
//! representative, the Jacobian of the induced map into the unit sphere S³,
//! a criticality test with a geometric diagnostic, and the flat limits the
//! map extends to when the three parameters collapse into one.

use crate::curve::{torus_distance, Curve};
use crate::shape::{Shape, ShapeError};
use nalgebra::{Matrix3, Matrix4, Matrix4x3, Vector3, Vector4};
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

/// Default tolerance for the geometric tangent-line diagnostic inside
/// [`is_critical`].
pub const DEFAULT_DIAGNOSTIC_TOL: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum MapError {
    #[error("the three curve points coincide; the configuration has no shape")]
    DegenerateConfiguration,
    #[error("tolerance must be positive, got {0}")]
    NonpositiveTolerance(f64),
    #[error("boundary limits require a C1 curve; {0} is not")]
    NotC1(String),
    #[error("boundary direction must satisfy u² + v² = 1/4, got u² + v² = {0}")]
    BadBoundaryDirection(f64),
}

impl From<ShapeError> for MapError {
    fn from(e: ShapeError) -> Self {
        match e {
            ShapeError::Degenerate => MapError::DegenerateConfiguration,
            ShapeError::NonpositiveTolerance(t) => MapError::NonpositiveTolerance(t),
        }
    }
}

/// A point of the parameter torus (ℝ/ℤ)³. Coordinates are stored reduced to
/// `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamTriple {
    pub t0: f64,
    pub t1: f64,
    pub t2: f64,
}

impl ParamTriple {
    pub fn new(t0: f64, t1: f64, t2: f64) -> Self {
        ParamTriple {
            t0: t0.rem_euclid(1.0),
            t1: t1.rem_euclid(1.0),
            t2: t2.rem_euclid(1.0),
        }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        ParamTriple::new(a[0], a[1], a[2])
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.t0, self.t1, self.t2]
    }

    /// The smallest torus distance between any two of the three parameters.
    /// Zero means at least two parameters coincide; the solver keeps scan
    /// points only when this exceeds its exclusion radius.
    pub fn min_pairwise_distance(&self) -> f64 {
        torus_distance(self.t0, self.t1)
            .min(torus_distance(self.t0, self.t2))
            .min(torus_distance(self.t1, self.t2))
    }

    /// Distance to another triple: the largest coordinate-wise torus
    /// distance. This is the metric solutions are deduplicated in.
    pub fn distance(&self, other: &ParamTriple) -> f64 {
        torus_distance(self.t0, other.t0)
            .max(torus_distance(self.t1, other.t1))
            .max(torus_distance(self.t2, other.t2))
    }

    /// The triple shifted by `step`, wrapped back onto the torus.
    pub fn offset(&self, step: [f64; 3]) -> ParamTriple {
        ParamTriple::new(self.t0 + step[0], self.t1 + step[1], self.t2 + step[2])
    }
}

/// The edge-pair representative `(c(t1) - c(t0), c(t2) - c(t0))` of the
/// configuration, before normalization.
pub fn edge_pair(c: &Curve, p: ParamTriple) -> (Complex64, Complex64) {
    let z0 = c.point(p.t0);
    (c.point(p.t1) - z0, c.point(p.t2) - z0)
}

/// The configuration map itself: the shape of the inscribed triangle
/// `(c(t0), c(t1), c(t2))`. Defined everywhere except where all three curve
/// points coincide.
pub fn inscribed_shape(c: &Curve, p: ParamTriple) -> Result<Shape, MapError> {
    let (w1, w2) = edge_pair(c, p);
    Ok(Shape::from_pair(w1, w2)?)
}

/// Directional derivative of the edge-pair representative along the torus
/// direction `lam`: `(λ1 c'(t1) - λ0 c'(t0), λ2 c'(t2) - λ0 c'(t0))`.
pub fn edge_pair_tangent(c: &Curve, p: ParamTriple, lam: [f64; 3]) -> (Complex64, Complex64) {
    let d0 = c.velocity(p.t0);
    (
        lam[1] * c.velocity(p.t1) - lam[0] * d0,
        lam[2] * c.velocity(p.t2) - lam[0] * d0,
    )
}

fn edge_pair_vec4(c: &Curve, p: ParamTriple) -> Vector4<f64> {
    let (w1, w2) = edge_pair(c, p);
    Vector4::new(w1.re, w1.im, w2.re, w2.im)
}

/// Jacobian of the normalized configuration map `p ↦ V(p) / |V(p)|` as a
/// real 4×3 matrix, where `V` is the edge-pair representative. The columns
/// are the [`edge_pair_tangent`] images of the coordinate directions,
/// projected orthogonally to the current representative (the ray direction
/// is exactly what normalization kills) and scaled by `1 / |V|`. Its range
/// lies in the tangent space of S³, so it has at most three nonzero singular
/// values and they are the singular values of the induced 3×3 map.
pub fn shape_jacobian(c: &Curve, p: ParamTriple) -> Result<Matrix4x3<f64>, MapError> {
    let v = edge_pair_vec4(c, p);
    let n = v.norm();
    if n <= crate::shape::DEGENERATE_EPS {
        return Err(MapError::DegenerateConfiguration);
    }
    let u = v / n;
    let mut dv = Matrix4x3::zeros();
    for (k, lam) in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
        .into_iter()
        .enumerate()
    {
        let (a, b) = edge_pair_tangent(c, p, lam);
        dv.set_column(k, &Vector4::new(a.re, a.im, b.re, b.im));
    }
    let proj = Matrix4::identity() - u * u.transpose();
    Ok(proj * dv / n)
}

/// Why a configuration is critical, when it is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TangentDiagnostic {
    /// All three tangent lines are parallel.
    Parallel,
    /// The three tangent lines pass through a common point.
    Concurrent,
    /// Neither degeneracy: the configuration is a regular point.
    Regular,
}

impl std::fmt::Display for TangentDiagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TangentDiagnostic::Parallel => "parallel",
            TangentDiagnostic::Concurrent => "concurrent",
            TangentDiagnostic::Regular => "regular",
        })
    }
}

/// Outcome of the criticality test at a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Criticality {
    /// Smallest singular value of the projected Jacobian; the configuration
    /// is critical exactly when the Jacobian loses rank, i.e. this vanishes.
    pub sigma_min: f64,
    /// `sigma_min ≤ tol`.
    pub is_critical: bool,
    /// Geometric reading of the same question: a configuration is critical
    /// precisely when the three tangent lines of the curve at the triangle
    /// vertices are all parallel or concurrent.
    pub diagnostic: TangentDiagnostic,
}

/// Criticality via the smallest singular value of [`shape_jacobian`]
/// (threshold `sigma_tol`), together with the independent tangent-line
/// diagnostic (threshold `diag_tol`).
pub fn criticality(
    c: &Curve,
    p: ParamTriple,
    sigma_tol: f64,
    diag_tol: f64,
) -> Result<Criticality, MapError> {
    if sigma_tol <= 0.0 {
        return Err(MapError::NonpositiveTolerance(sigma_tol));
    }
    if diag_tol <= 0.0 {
        return Err(MapError::NonpositiveTolerance(diag_tol));
    }
    let j = shape_jacobian(c, p)?;
    let sigma_min = j
        .svd(false, false)
        .singular_values
        .iter()
        .fold(f64::INFINITY, |m, &s| m.min(s));

    // Unit tangent directions and homogeneous tangent-line coordinates
    // (a, b, c) for the line a x + b y + c = 0 through each vertex. Rows are
    // normalized so the concurrency determinant is scale-free.
    let ts = [p.t0, p.t1, p.t2];
    let mut dirs = [Complex64::default(); 3];
    let mut lines = Matrix3::<f64>::zeros();
    for i in 0..3 {
        let pt = c.point(ts[i]);
        let d = c.velocity(ts[i]);
        dirs[i] = d / d.norm();
        let row = Vector3::new(d.im, -d.re, -(pt.re * d.im - pt.im * d.re));
        lines.set_row(i, &(row / row.norm()).transpose());
    }
    let all_parallel = (0..3).all(|i| {
        let j = (i + 1) % 3;
        (dirs[i].re * dirs[j].im - dirs[i].im * dirs[j].re).abs() <= diag_tol
    });
    // Three concurrent lines have linearly dependent homogeneous
    // coordinates. Parallel lines are concurrent at infinity and also zero
    // this determinant, hence the parallel test goes first.
    let diagnostic = if all_parallel {
        TangentDiagnostic::Parallel
    } else if lines.determinant().abs() <= diag_tol {
        TangentDiagnostic::Concurrent
    } else {
        TangentDiagnostic::Regular
    };

    Ok(Criticality {
        sigma_min,
        is_critical: sigma_min <= sigma_tol,
        diagnostic,
    })
}

/// [`criticality`] with the default diagnostic tolerance.
pub fn is_critical(c: &Curve, p: ParamTriple, tol: f64) -> Result<Criticality, MapError> {
    criticality(c, p, tol, DEFAULT_DIAGNOSTIC_TOL)
}

/// A boundary configuration: all three parameters collapsed to `t`, with
/// `(u, v)` on the circle of radius 1/2 recording the direction from which
/// the parameters `(t, t + λu, t + λv)` approached it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryDatum {
    t: f64,
    u: f64,
    v: f64,
}

impl BoundaryDatum {
    pub fn new(t: f64, u: f64, v: f64) -> Result<Self, MapError> {
        let r2 = u * u + v * v;
        if (r2 - 0.25).abs() > 1e-12 {
            return Err(MapError::BadBoundaryDirection(r2));
        }
        Ok(BoundaryDatum {
            t: t.rem_euclid(1.0),
            u,
            v,
        })
    }

    /// The datum at angle `alpha` on the direction circle:
    /// `(u, v) = (cos α, sin α) / 2`.
    pub fn from_angle(t: f64, alpha: f64) -> Self {
        BoundaryDatum {
            t: t.rem_euclid(1.0),
            u: alpha.cos() / 2.0,
            v: alpha.sin() / 2.0,
        }
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn direction(&self) -> (f64, f64) {
        (self.u, self.v)
    }
}

/// The limiting shape of `F(t, t + λu, t + λv)` as `λ → 0⁺`: the unit
/// representative of `(u c'(t), v c'(t))`. It only depends on the ratio
/// `u : v`, is always flat, and requires a C¹ curve (one-sided derivative
/// jumps would make the two-sided limit disagree).
pub fn boundary_shape(c: &Curve, datum: &BoundaryDatum) -> Result<Shape, MapError> {
    if !c.is_c1() {
        return Err(MapError::NotC1(c.name().to_string()));
    }
    let d = c.velocity(datum.t);
    Ok(Shape::from_pair(datum.u * d, datum.v * d)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::{HopfCoord, ShapeTag, Triangle};
    use approx::assert_relative_eq;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_3, TAU};

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quarter_points_of_the_circle_give_the_right_isosceles_shape() {
        // c(0.625), c(0.875), c(0.375) are the unit right isosceles triangle
        // (0, 1, i) rotated and translated on the circle.
        let circle = Curve::circle();
        let p = ParamTriple::new(0.625, 0.875, 0.375);
        let got = inscribed_shape(&circle, p).unwrap();
        let want =
            Shape::of_triangle(&Triangle::new(c64(0.0, 0.0), c64(1.0, 0.0), c64(0.0, 1.0)))
                .unwrap();
        assert!(got.distance(&want) < 1e-12);
    }

    #[test]
    fn thirds_of_the_circle_are_equilateral() {
        let circle = Curve::circle();
        let p = ParamTriple::new(0.0, 1.0 / 3.0, 2.0 / 3.0);
        let z = inscribed_shape(&circle, p)
            .unwrap()
            .hopf()
            .finite()
            .unwrap();
        let want = Complex64::from_polar(1.0, -FRAC_PI_3);
        assert_relative_eq!(z.re, want.re, epsilon = 1e-12);
        assert_relative_eq!(z.im, want.im, epsilon = 1e-12);
    }

    #[test]
    fn coincident_parameters_give_flat_shapes_not_errors() {
        let circle = Curve::circle();
        let s = inscribed_shape(&circle, ParamTriple::new(0.2, 0.7, 0.7)).unwrap();
        match s.hopf() {
            HopfCoord::Finite(z) => assert_relative_eq!((z - 1.0).norm(), 0.0, epsilon = 1e-12),
            HopfCoord::Infinity => panic!("expected hopf = 1"),
        }
        assert!(s.classify(1e-9).unwrap().is(ShapeTag::Flat));

        // All three coincident: no shape.
        assert_eq!(
            inscribed_shape(&circle, ParamTriple::new(0.4, 0.4, 0.4)).unwrap_err(),
            MapError::DegenerateConfiguration
        );
    }

    #[test]
    fn tangent_along_t0_moves_both_edges_backwards() {
        let circle = Curve::circle();
        let p = ParamTriple::new(0.0, 0.25, 0.5);
        let (a, b) = edge_pair_tangent(&circle, p, [1.0, 0.0, 0.0]);
        // c'(0) = (0, 2π), so both components are (0, -2π).
        assert_relative_eq!(a.re, 0.0, epsilon = 1e-12);
        assert_relative_eq!(a.im, -TAU, epsilon = 1e-12);
        assert_relative_eq!(b.re, 0.0, epsilon = 1e-12);
        assert_relative_eq!(b.im, -TAU, epsilon = 1e-12);
    }

    #[test]
    fn tangent_is_linear_in_the_direction() {
        let curve = Curve::ellipse(2.0, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let p = ParamTriple::new(rng.random(), rng.random(), rng.random());
            let lam = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
            let mu = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
            let (a1, b1) = edge_pair_tangent(&curve, p, lam);
            let (a2, b2) = edge_pair_tangent(&curve, p, mu);
            let sum = [lam[0] + mu[0], lam[1] + mu[1], lam[2] + mu[2]];
            let (a3, b3) = edge_pair_tangent(&curve, p, sum);
            assert!((a3 - a1 - a2).norm() < 1e-12);
            assert!((b3 - b1 - b2).norm() < 1e-12);
        }
    }

    #[test]
    fn tangent_matches_finite_differences() {
        let curve = Curve::star(0.2, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let h = 1e-6;
        for _ in 0..50 {
            let p = ParamTriple::new(rng.random(), rng.random(), rng.random());
            let lam = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
            let plus = p.offset([h * lam[0], h * lam[1], h * lam[2]]);
            let minus = p.offset([-h * lam[0], -h * lam[1], -h * lam[2]]);
            let (ap, bp) = edge_pair(&curve, plus);
            let (am, bm) = edge_pair(&curve, minus);
            let fd = ((ap - am) / (2.0 * h), (bp - bm) / (2.0 * h));
            let (a, b) = edge_pair_tangent(&curve, p, lam);
            let scale = (a.norm_sqr() + b.norm_sqr()).sqrt().max(1e-9);
            let err = ((fd.0 - a).norm_sqr() + (fd.1 - b).norm_sqr()).sqrt() / scale;
            assert!(err < 1e-5, "relative error {err}");
        }
    }

    #[test]
    fn projected_jacobian_kills_the_ray_direction() {
        let curve = Curve::ellipse(1.5, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..100 {
            let p = ParamTriple::new(rng.random(), rng.random(), rng.random());
            if p.min_pairwise_distance() < 1e-3 {
                continue;
            }
            let v = edge_pair_vec4(&curve, p);
            let j = shape_jacobian(&curve, p).unwrap();
            for k in 0..3 {
                let col = j.column(k);
                assert!(
                    col.dot(&v).abs() <= 1e-12 * v.norm() * col.norm().max(1.0),
                    "column {k} keeps a ray component"
                );
            }
        }
    }

    #[test]
    fn circle_configurations_with_distinct_points_are_regular() {
        // Three distinct tangent lines of a circle are never all parallel
        // (at most two tangents share a direction) and never concurrent (no
        // external point sees three tangents), so every configuration with
        // distinct parameters is regular. The two quarter-spaced triples
        // make good frozen checks of the singular value computation.
        let circle = Curve::circle();

        let r = is_critical(&circle, ParamTriple::new(0.0, 0.25, 0.5), 1e-8).unwrap();
        assert!(!r.is_critical);
        assert_eq!(r.diagnostic, TangentDiagnostic::Regular);
        assert_relative_eq!(r.sigma_min, 1.4431029863184899, epsilon = 1e-9);

        let r = is_critical(&circle, ParamTriple::new(0.0, 1.0 / 3.0, 2.0 / 3.0), 1e-8).unwrap();
        assert!(!r.is_critical);
        assert_eq!(r.diagnostic, TangentDiagnostic::Regular);
        assert_relative_eq!(r.sigma_min, 2.042397033714381, epsilon = 1e-9);
    }

    fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        assert!(f(lo).signum() != f(hi).signum(), "no bracket");
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if f(mid).signum() == f(lo).signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn three_parallel_tangents_are_critical() {
        // star(0.2, 5) is mirror symmetric about the x axis and non-convex,
        // so besides t = 0 and t = 0.5 it has an extra vertical tangent at
        // some s* in (0, 0.5), mirrored at 1 - s*. The triple
        // (0, s*, 1 - s*) then has three vertical tangent lines.
        let star = Curve::star(0.2, 5).unwrap();
        let vertical = |t: f64| star.velocity(t).re;
        let mut bracket = None;
        let n = 1000;
        for i in 1..(n / 2 - 1) {
            let (a, b) = (i as f64 / n as f64, (i + 1) as f64 / n as f64);
            if vertical(a).signum() != vertical(b).signum() {
                bracket = Some((a, b));
                break;
            }
        }
        let (a, b) = bracket.expect("a vertical tangent away from the axis");
        let s = bisect(vertical, a, b);
        let p = ParamTriple::new(0.0, s, 1.0 - s);
        let r = is_critical(&star, p, 1e-8).unwrap();
        assert!(r.is_critical, "sigma_min = {}", r.sigma_min);
        assert_eq!(r.diagnostic, TangentDiagnostic::Parallel);
    }

    #[test]
    fn three_concurrent_tangents_are_critical() {
        // A point outside a non-convex curve can lie on more than two
        // tangent lines. Collect the tangency parameters seen from X by
        // solving cross(c(t) - X, c'(t)) = 0 and take three of them: the
        // three tangent lines meet at X by construction.
        let star = Curve::star(0.2, 5).unwrap();
        let x = Complex64::new(1.8, 0.9);
        let tangency = |t: f64| {
            let d = star.point(t) - x;
            let v = star.velocity(t);
            d.re * v.im - d.im * v.re
        };
        let n = 4000;
        let mut roots = Vec::new();
        for i in 0..n {
            let (a, b) = (i as f64 / n as f64, (i + 1) as f64 / n as f64);
            if tangency(a).signum() != tangency(b).signum() {
                roots.push(bisect(tangency, a, b));
            }
        }
        assert!(roots.len() >= 3, "found only {} tangents through X", roots.len());
        let p = ParamTriple::new(roots[0], roots[1], roots[2]);
        let r = is_critical(&star, p, 1e-8).unwrap();
        assert!(r.is_critical, "sigma_min = {}", r.sigma_min);
        assert_eq!(r.diagnostic, TangentDiagnostic::Concurrent);
    }

    #[test]
    fn criticality_rejects_bad_tolerances() {
        let circle = Curve::circle();
        let p = ParamTriple::new(0.0, 0.3, 0.6);
        assert_eq!(
            is_critical(&circle, p, 0.0).unwrap_err(),
            MapError::NonpositiveTolerance(0.0)
        );
        assert_eq!(
            criticality(&circle, p, 1e-8, -2.0).unwrap_err(),
            MapError::NonpositiveTolerance(-2.0)
        );
    }

    #[test]
    fn boundary_shape_is_the_flat_tangent_pair() {
        let circle = Curve::circle();
        // u = 1/2, v = 0 at t = 0: the unit representative of
        // ((0, π), (0, 0)), whose hopf coordinate is infinity.
        let datum = BoundaryDatum::new(0.0, 0.5, 0.0).unwrap();
        let s = boundary_shape(&circle, &datum).unwrap();
        let coords = s.coords();
        assert_relative_eq!(coords[0], 0.0, epsilon = 1e-15);
        assert_relative_eq!(coords[1], 1.0, epsilon = 1e-15);
        assert_relative_eq!(coords[2], 0.0, epsilon = 1e-15);
        assert_relative_eq!(coords[3], 0.0, epsilon = 1e-15);
        assert!(s.hopf().is_infinity());

        // Boundary shapes are always flat.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let datum = BoundaryDatum::from_angle(rng.random(), rng.random_range(0.0..TAU));
            let s = boundary_shape(&circle, &datum).unwrap();
            assert!(s.classify(1e-9).unwrap().is(ShapeTag::Flat));
        }
    }

    #[test]
    fn configurations_converge_to_the_boundary_shape() {
        let circle = Curve::circle();
        let datum = BoundaryDatum::from_angle(0.3, 1.1);
        let limit = boundary_shape(&circle, &datum).unwrap();
        let (u, v) = datum.direction();
        let dist = |lam: f64| {
            let p = ParamTriple::new(datum.t(), datum.t() + lam * u, datum.t() + lam * v);
            inscribed_shape(&circle, p).unwrap().distance(&limit)
        };
        assert!(dist(1e-6) < 1e-4);
        assert!(dist(1e-2) / dist(1e-4) >= 10.0);
    }

    #[test]
    fn boundary_data_are_validated() {
        assert!(matches!(
            BoundaryDatum::new(0.0, 0.5, 0.5),
            Err(MapError::BadBoundaryDirection(_))
        ));
        let d = BoundaryDatum::from_angle(0.0, 0.7);
        let (u, v) = d.direction();
        assert_relative_eq!(u * u + v * v, 0.25, epsilon = 1e-15);

        let lemniscate = Curve::half_lemniscate();
        let datum = BoundaryDatum::new(0.5, 0.5, 0.0).unwrap();
        assert!(matches!(
            boundary_shape(&lemniscate, &datum),
            Err(MapError::NotC1(_))
        ));
    }

    #[test]
    fn param_triple_metrics() {
        let p = ParamTriple::new(0.95, 0.05, 0.5);
        assert_relative_eq!(p.min_pairwise_distance(), 0.1, epsilon = 1e-12);
        let q = ParamTriple::new(-0.05, 0.05, 0.5);
        assert_relative_eq!(p.distance(&q), 0.0, epsilon = 1e-12);
        let r = ParamTriple::new(0.95, 0.05, 0.6);
        assert_relative_eq!(p.distance(&r), 0.1, epsilon = 1e-12);
        assert_relative_eq!(
            ParamTriple::new(0.9, 0.1, 0.5)
                .offset([0.2, -0.2, 0.0])
                .distance(&ParamTriple::new(0.1, 0.9, 0.5)),
            0.0,
            epsilon = 1e-12
        );
    }
}
