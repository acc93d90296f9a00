//! Numerically inscribe triangles of a prescribed shape, up to translation and
//! positive scaling, on closed planar curves.
//!
//! The pipeline:
//!
//! * [`shape`]: similarity classes of labeled triangles as unit pairs in ℂ²,
//!   with a Hopf chart on the Riemann sphere for classification.
//! * [`curve`]: closed parametrized curves of period 1 (circle, ellipse,
//!   polar stars, periodic cubic splines, and a cornered half-lemniscate as a
//!   deliberate non-smooth specimen).
//! * [`config_map`]: the map sending a parameter triple `(t0, t1, t2)` to the
//!   shape of the inscribed triangle `(c(t0), c(t1), c(t2))`, its tangent map,
//!   a criticality test, and the flat boundary limits.
//! * [`solver`]: grid scan plus damped Gauss-Newton refinement that finds all
//!   parameter triples realizing a target shape, and path continuation of a
//!   solution along a family of curves.
//! * [`degree`]: mod-2 counts of solutions on each orientation side; for an
//!   embedded smooth curve both counts are odd, which forces every non-flat
//!   shape to be inscribable.
//! * [`simplex`]: the n-dimensional analogue of the shape construction for
//!   simplices, with a sphere-based closed-form inscription.

pub mod config_map;
pub mod curve;
pub mod degree;
pub mod shape;
pub mod simplex;
pub mod solver;

pub use config_map::{
    boundary_shape, criticality, inscribed_shape, is_critical, BoundaryDatum, Criticality,
    MapError, ParamTriple, TangentDiagnostic,
};
pub use curve::{torus_distance, Curve, CurveError, CurveValidationReport, Smoothness};
pub use degree::{bidegree, equilateral_probes, local_degree, BidegreeReport, DegreeError, LocalDegree};
pub use shape::{HopfCoord, Shape, ShapeClass, ShapeError, ShapeTag, Triangle, TriangleParseError};
pub use simplex::{simplex_shape, sphere_oracle, SimplexError, SimplexShape};
pub use solver::{
    circle_oracle, continue_solution, gauss_newton, scan_min_residual, solve, ContinueError,
    PathDiagnostic, Refined, Solution, SolveError, SolveReport, SolveStatus, SolverConfig,
};
