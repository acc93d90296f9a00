//! Mod-2 degree counting for the configuration map.
//!
//! The local degree at a non-flat shape is the parity of its preimage
//! count. The flat shapes form a torus splitting the shape sphere into two
//! orientation components, so there are two independent degrees; the pair
//! is the bidegree. A bidegree of (1, 1) forces the configuration map onto
//! every non-flat shape, which is the practical content: whatever triangle
//! shape you ask for, an inscribed copy exists on the curve.

use crate::solver::{solve, SolveError, SolverConfig, FLAT_TARGET_EPS};
use crate::curve::{Curve, Smoothness};
use crate::shape::Shape;
use nalgebra::Vector4;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

const PERTURB_STEP: f64 = 1e-4;
const MAX_RETRIES: usize = 5;

#[derive(Debug, Error)]
pub enum DegreeError {
    #[error("degree counting requires a C1 curve, got {0}")]
    NotC1(String),
    #[error("probe shape is flat; the local degree is only defined off the flat torus")]
    FlatProbe,
    #[error(
        "no regular probe found after {retries} perturbation retries: \
         solutions kept landing on critical configurations"
    )]
    RegularityFailure { retries: usize },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Preimage count of one probe shape, with the parity that is the actual
/// degree. `probe` is the shape that ended up being counted; it differs
/// from the requested one only when critical preimages forced a
/// perturbation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalDegree {
    /// `count` mod 2.
    pub parity: u8,
    /// De-duplicated accepted preimages of `probe`.
    pub count: usize,
    pub probe: Shape,
    /// How many tangent perturbations were needed before every preimage
    /// tested regular.
    pub perturbations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BidegreeReport {
    /// Local degree on the negatively oriented side.
    pub d_minus: u8,
    /// Local degree on the positively oriented side.
    pub d_plus: u8,
    /// The probes actually counted, orientation −1 first.
    pub probes: [Shape; 2],
    pub preimage_counts: [usize; 2],
    /// Every counted preimage passed the regularity test (guaranteed on
    /// success; retries exhaust into an error otherwise).
    pub all_regular: bool,
    /// Scan resolution the counts were obtained at. Preimage completeness
    /// is only as good as the scan, so reports pin it.
    pub grid_n: usize,
}

/// The two equilateral shapes, orientation −1 then +1. These sit as far
/// from the flat torus as shapes get, which makes them the default probes.
pub fn equilateral_probes() -> [Shape; 2] {
    let third = std::f64::consts::FRAC_PI_3;
    let cw = Shape::from_pair(Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, -third))
        .expect("equilateral pair is non-degenerate");
    let ccw = Shape::from_pair(Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, third))
        .expect("equilateral pair is non-degenerate");
    [cw, ccw]
}

/// A deterministic tangent step of size [`PERTURB_STEP`] away from `probe`,
/// staying on its side of the flat torus. `None` when no direction keeps
/// the orientation, which only happens that close to flatness.
fn perturbed_probe(probe: &Shape, attempt: usize) -> Option<Shape> {
    const DIRS: [[f64; 4]; 5] = [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.5, -0.5, 0.5, -0.5],
    ];
    let c = probe.coords();
    let v = Vector4::new(c[0], c[1], c[2], c[3]);
    let side = probe.det().signum();
    for offset in 0..DIRS.len() {
        let d = DIRS[(attempt + offset) % DIRS.len()];
        let d = Vector4::new(d[0], d[1], d[2], d[3]);
        let tangent = d - v * v.dot(&d);
        if tangent.norm() < 1e-9 {
            continue;
        }
        let step = tangent.normalize() * PERTURB_STEP;
        for dir in [1.0, -1.0] {
            let w = v + step * dir;
            if let Ok(s) = Shape::from_coords([w.x, w.y, w.z, w.w]) {
                if s.det().signum() == side {
                    return Some(s);
                }
            }
        }
    }
    None
}

/// Counts the preimages of `probe` under the configuration map of `c` and
/// returns the count with its parity. Every counted preimage must test
/// regular; when one comes back critical the probe is nudged tangentially
/// by 1e−4 within its orientation component and the count is redone, up to
/// five times.
pub fn local_degree(
    c: &Curve,
    probe: &Shape,
    cfg: &SolverConfig,
) -> Result<LocalDegree, DegreeError> {
    if c.smoothness() != Smoothness::C1 {
        return Err(DegreeError::NotC1(c.name().to_string()));
    }
    if probe.det().abs() <= FLAT_TARGET_EPS {
        return Err(DegreeError::FlatProbe);
    }
    let mut current = *probe;
    for attempt in 0..=MAX_RETRIES {
        let report = solve(c, &current, cfg)?;
        if report.solutions.iter().all(|s| s.regular) {
            return Ok(LocalDegree {
                parity: (report.solutions.len() % 2) as u8,
                count: report.solutions.len(),
                probe: current,
                perturbations: attempt,
            });
        }
        if attempt < MAX_RETRIES {
            match perturbed_probe(probe, attempt) {
                Some(next) => current = next,
                None => break,
            }
        }
    }
    Err(DegreeError::RegularityFailure {
        retries: MAX_RETRIES,
    })
}

/// Local degrees over both orientation components, probed at the two
/// equilateral shapes. For an embedded C¹ curve the answer is (1, 1).
pub fn bidegree(c: &Curve, cfg: &SolverConfig) -> Result<BidegreeReport, DegreeError> {
    let [probe_minus, probe_plus] = equilateral_probes();
    let (minus, plus) = rayon::join(
        || local_degree(c, &probe_minus, cfg),
        || local_degree(c, &probe_plus, cfg),
    );
    let minus = minus?;
    let plus = plus?;
    Ok(BidegreeReport {
        d_minus: minus.parity,
        d_plus: plus.parity,
        probes: [minus.probe, plus.probe],
        preimage_counts: [minus.count, plus.count],
        all_regular: true,
        grid_n: cfg.grid_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::{HopfCoord, Triangle};
    use approx::assert_relative_eq;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_PI_3;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_probe(rng: &mut ChaCha8Rng, side: f64) -> Shape {
        loop {
            let mut t = Triangle::new(
                c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            );
            if let Ok(s) = Shape::of_triangle(&t) {
                if s.det().abs() > 0.1 {
                    if s.det().signum() != side {
                        let [z0, z1, z2] = t.vertices();
                        t = Triangle::new(z0.conj(), z1.conj(), z2.conj());
                    }
                    return Shape::of_triangle(&t).unwrap();
                }
            }
        }
    }

    #[test]
    fn equilateral_probes_sit_on_opposite_sides() {
        let [minus, plus] = equilateral_probes();
        assert!(minus.det() < 0.0);
        assert!(plus.det() > 0.0);
        match plus.hopf() {
            HopfCoord::Finite(z) => {
                assert_relative_eq!(z.re, (FRAC_PI_3).cos(), epsilon = 1e-12);
                assert_relative_eq!(z.im, -(FRAC_PI_3).sin(), epsilon = 1e-12);
            }
            HopfCoord::Infinity => panic!("equilateral hopf is finite"),
        }
    }

    #[test]
    fn circle_bidegree_is_one_one() {
        let cfg = SolverConfig::default();
        let report = bidegree(&Curve::circle(), &cfg).unwrap();
        assert_eq!((report.d_minus, report.d_plus), (1, 1));
        assert_eq!(report.preimage_counts, [1, 1]);
        assert!(report.all_regular);
        assert_eq!(report.grid_n, cfg.grid_n);
        assert!(report.probes[0].det() < 0.0);
        assert!(report.probes[1].det() > 0.0);
        assert_eq!(report.d_minus as usize, report.preimage_counts[0] % 2);
        assert_eq!(report.d_plus as usize, report.preimage_counts[1] % 2);
    }

    #[test]
    fn circle_parity_is_stable_over_random_probes() {
        let circle = Curve::circle();
        let cfg = SolverConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for side in [-1.0, 1.0] {
            for _ in 0..20 {
                let probe = random_probe(&mut rng, side);
                let deg = local_degree(&circle, &probe, &cfg).unwrap();
                assert_eq!(deg.count, 1, "probe {probe:?}");
                assert_eq!(deg.parity, 1);
                assert_eq!(deg.perturbations, 0);
            }
        }
    }

    #[test]
    fn conjugating_a_probe_moves_it_to_the_other_side_with_the_same_degree() {
        let circle = Curve::circle();
        let cfg = SolverConfig::default();
        let t = Triangle::new(c64(0.2, 0.1), c64(1.1, 0.4), c64(0.3, 1.2));
        let [z0, z1, z2] = t.vertices();
        let mirrored = Triangle::new(z0.conj(), z1.conj(), z2.conj());
        let a = local_degree(&circle, &Shape::of_triangle(&t).unwrap(), &cfg).unwrap();
        let b = local_degree(&circle, &Shape::of_triangle(&mirrored).unwrap(), &cfg).unwrap();
        assert_eq!(a.count, 1);
        assert_eq!(b.count, 1);
        assert!(a.probe.det() * b.probe.det() < 0.0);
    }

    #[test]
    fn ellipse_bidegree_is_one_one() {
        let report = bidegree(&Curve::ellipse(1.2, 1.0).unwrap(), &SolverConfig::default()).unwrap();
        assert_eq!((report.d_minus, report.d_plus), (1, 1));
    }

    #[test]
    fn bidegree_is_constant_along_a_blend() {
        let circle = Curve::circle();
        let ellipse = Curve::ellipse(1.2, 1.0).unwrap();
        let cfg = SolverConfig::default();
        for s in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let curve = circle.blend(&ellipse, s);
            assert!(curve.validate(256).is_embedded_numerically);
            let report = bidegree(&curve, &cfg).unwrap();
            assert_eq!((report.d_minus, report.d_plus), (1, 1), "at s = {s}");
        }
    }

    #[test]
    fn cornered_curves_are_rejected() {
        let err = bidegree(&Curve::half_lemniscate(), &SolverConfig::default()).unwrap_err();
        assert!(matches!(err, DegreeError::NotC1(_)));
    }

    #[test]
    fn flat_probes_are_rejected() {
        let flat = Shape::from_pair(c64(2.0, 0.0), c64(1.0, 0.0)).unwrap();
        let err = local_degree(&Curve::circle(), &flat, &SolverConfig::default()).unwrap_err();
        assert!(matches!(err, DegreeError::FlatProbe));
    }

    #[test]
    fn perturbation_keeps_the_orientation_component() {
        let [minus, plus] = equilateral_probes();
        for probe in [minus, plus] {
            for attempt in 0..5 {
                let p = perturbed_probe(&probe, attempt).unwrap();
                assert_eq!(p.det().signum(), probe.det().signum());
                assert!(p.distance(&probe) < 2.0 * PERTURB_STEP);
                assert!(p.distance(&probe) > 0.0);
            }
        }
    }

    #[test]
    fn critical_preimages_trigger_perturbation_exactly_when_solve_sees_them() {
        // The shape of a critical configuration on a star: three vertical
        // tangents at (0, s, 1 - s), found by bisecting the horizontal
        // velocity component. If solve resolves that critical preimage it
        // must come back flagged non-regular and local_degree must perturb;
        // if the polish misses it, no perturbation is warranted.
        let star = Curve::star(0.2, 5).unwrap();
        let mut lo = 0.3;
        let mut hi = 0.45;
        let f = |t: f64| star.velocity(t).re;
        assert!(f(lo) * f(hi) < 0.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if f(lo) * f(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let s = 0.5 * (lo + hi);
        let triple = crate::config_map::ParamTriple::new(0.0, s, 1.0 - s);
        let probe = crate::config_map::inscribed_shape(&star, triple).unwrap();

        let cfg = SolverConfig::default();
        let direct = solve(&star, &probe, &cfg).unwrap();
        let saw_critical = direct.solutions.iter().any(|sol| !sol.regular);
        let deg = local_degree(&star, &probe, &cfg).unwrap();
        if saw_critical {
            assert!(deg.perturbations >= 1);
        } else {
            assert_eq!(deg.perturbations, 0);
        }
        assert_eq!(deg.parity as usize, deg.count % 2);
    }
}
