//! Brute-force cross-checks for the acceptance suite. Everything here goes
//! through the public evaluation API only: residuals come from direct shape
//! distances, refinement is derivative-free coordinate descent, and root
//! counting is scan-plus-merge. No Jacobians, no Gauss-Newton, so a count
//! that agrees with the solver's was reached along two unrelated roads.

use inscribed_core::{inscribed_shape, Curve, ParamTriple, Shape, Triangle};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Parameter triples closer than this to a collision are ignored.
pub const SEPARATION: f64 = 1e-3;

pub fn residual(c: &Curve, p: ParamTriple, target: &Shape) -> f64 {
    match inscribed_shape(c, p) {
        Ok(s) => s.distance(target),
        Err(_) => f64::INFINITY,
    }
}

fn separated(p: &ParamTriple) -> bool {
    p.min_pairwise_distance() > SEPARATION
}

/// Lattice local minima of the residual with value below `cutoff`.
pub fn scan_minima(c: &Curve, target: &Shape, n: usize, cutoff: f64) -> Vec<ParamTriple> {
    let t = |i: usize| i as f64 / n as f64;
    let grid: Vec<f64> = (0..n * n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j, k) = (idx / (n * n), (idx / n) % n, idx % n);
            let p = ParamTriple::new(t(i), t(j), t(k));
            if separated(&p) {
                residual(c, p, target)
            } else {
                f64::INFINITY
            }
        })
        .collect();
    let at = |i: usize, j: usize, k: usize| grid[(i * n + j) * n + k];
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            'cell: for k in 0..n {
                let r = at(i, j, k);
                if r >= cutoff {
                    continue;
                }
                for di in [n - 1, 0, 1] {
                    for dj in [n - 1, 0, 1] {
                        for dk in [n - 1, 0, 1] {
                            if (di, dj, dk) == (0, 0, 0) {
                                continue;
                            }
                            if at((i + di) % n, (j + dj) % n, (k + dk) % n) < r {
                                continue 'cell;
                            }
                        }
                    }
                }
                out.push(ParamTriple::new(t(i), t(j), t(k)));
            }
        }
    }
    out
}

/// Coordinate descent with shrinking steps; no derivatives anywhere.
pub fn refine(c: &Curve, target: &Shape, start: ParamTriple, h0: f64) -> (ParamTriple, f64) {
    let mut p = start;
    let mut best = residual(c, p, target);
    let mut h = h0;
    while h > 1e-14 {
        let mut moved = false;
        for axis in 0..3 {
            for dir in [1.0, -1.0] {
                loop {
                    let mut d = [0.0; 3];
                    d[axis] = dir * h;
                    let q = p.offset(d);
                    let rq = residual(c, q, target);
                    if rq < best {
                        p = q;
                        best = rq;
                        moved = true;
                    } else {
                        break;
                    }
                }
            }
        }
        if !moved {
            h *= 0.5;
        }
    }
    (p, best)
}

/// Number of distinct well-separated roots of the target on the curve,
/// counted by refining every plausible scan minimum and merging duplicates.
pub fn count_roots(c: &Curve, target: &Shape, n: usize) -> usize {
    let mut roots: Vec<ParamTriple> = Vec::new();
    for start in scan_minima(c, target, n, 0.5) {
        let (p, r) = refine(c, target, start, 1.0 / n as f64);
        if r < 1e-6 && separated(&p) && roots.iter().all(|q| q.distance(&p) > 1e-3) {
            roots.push(p);
        }
    }
    roots.len()
}

pub fn random_point(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// A triangle whose shape stays comfortably away from the flat torus.
pub fn random_nonflat_triangle(rng: &mut ChaCha8Rng) -> Triangle {
    loop {
        let t = Triangle::new(
            random_point(rng),
            random_point(rng),
            random_point(rng),
        );
        if let Ok(s) = Shape::of_triangle(&t) {
            if s.det().abs() > 0.05 {
                return t;
            }
        }
    }
}

/// The fixed 12-point wobbly circle used wherever a concrete spline curve
/// is called for.
pub fn perturbed_circle_spline() -> Curve {
    const OFFSETS: [f64; 12] = [
        0.05, -0.03, 0.07, 0.01, -0.06, 0.04, -0.02, 0.08, -0.05, 0.02, 0.06, -0.04,
    ];
    let pts: Vec<Complex64> = OFFSETS
        .iter()
        .enumerate()
        .map(|(i, off)| {
            Complex64::from_polar(1.0 + off, std::f64::consts::TAU * i as f64 / 12.0)
        })
        .collect();
    Curve::spline(&pts).expect("fixture spline is embedded")
}
