//! Closed C² cubic spline interpolation with chord-length knots.

use super::CurveError;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Interpolation data: knots `u[0..=m]` (with `u[m]` the total length),
/// control points and per-knot second derivatives, both wrapped so index `m`
/// repeats index 0.
pub struct Spline {
    u: Vec<f64>,
    p: Vec<Complex64>,
    m2: Vec<Complex64>,
    total: f64,
}

impl Spline {
    pub fn new(points: &[Complex64]) -> Result<Spline, CurveError> {
        let m = points.len();
        if m < 4 {
            return Err(CurveError::TooFewPoints(m));
        }
        for i in 0..m {
            for j in (i + 1)..m {
                if (points[i] - points[j]).norm() == 0.0 {
                    return Err(CurveError::DuplicatePoints(i, j));
                }
            }
        }

        // Chord-length knots around the closed polygon.
        let mut u = Vec::with_capacity(m + 1);
        u.push(0.0);
        for i in 0..m {
            let h = (points[(i + 1) % m] - points[i]).norm();
            u.push(u[i] + h);
        }
        let total = u[m];
        let h = |i: usize| u[i + 1] - u[i];

        // Periodic C² conditions on the second derivatives M_i: for every
        // knot (indices mod m)
        //   h[i-1]/6 M[i-1] + (h[i-1]+h[i])/3 M[i] + h[i]/6 M[i+1]
        //     = (P[i+1]-P[i])/h[i] - (P[i]-P[i-1])/h[i-1].
        // The cyclic band never collides with itself because m >= 4.
        let mut a = DMatrix::<f64>::zeros(m, m);
        let mut rhs_x = DVector::<f64>::zeros(m);
        let mut rhs_y = DVector::<f64>::zeros(m);
        for i in 0..m {
            let prev = (i + m - 1) % m;
            let next = (i + 1) % m;
            let (hp, hi) = (h(prev), h(i));
            a[(i, prev)] += hp / 6.0;
            a[(i, i)] += (hp + hi) / 3.0;
            a[(i, next)] += hi / 6.0;
            let d = (points[next] - points[i]) / hi - (points[i] - points[prev]) / hp;
            rhs_x[i] = d.re;
            rhs_y[i] = d.im;
        }
        let lu = a.lu();
        let (mx, my) = match (lu.solve(&rhs_x), lu.solve(&rhs_y)) {
            (Some(x), Some(y)) => (x, y),
            _ => {
                return Err(CurveError::InvalidParameter(
                    "spline system is singular; control points are too degenerate".into(),
                ))
            }
        };

        let mut p: Vec<Complex64> = points.to_vec();
        p.push(points[0]);
        let mut m2: Vec<Complex64> = (0..m).map(|i| Complex64::new(mx[i], my[i])).collect();
        m2.push(m2[0]);

        Ok(Spline { u, p, m2, total })
    }

    /// Index of the knot interval containing arc parameter `x ∈ [0, total)`.
    fn segment(&self, x: f64) -> usize {
        // partition_point returns the first knot strictly above x.
        let k = self.u.partition_point(|&v| v <= x);
        k.clamp(1, self.u.len() - 1) - 1
    }

    /// Point at curve parameter `t ∈ [0, 1)`.
    pub fn point(&self, t: f64) -> Complex64 {
        let x = t * self.total;
        let i = self.segment(x);
        let h = self.u[i + 1] - self.u[i];
        let a = (self.u[i + 1] - x) / h;
        let b = (x - self.u[i]) / h;
        self.p[i] * a
            + self.p[i + 1] * b
            + self.m2[i] * ((a * a * a - a) * h * h / 6.0)
            + self.m2[i + 1] * ((b * b * b - b) * h * h / 6.0)
    }

    /// Velocity with respect to the curve parameter `t` (chain rule through
    /// the arc parametrization contributes the total length).
    pub fn velocity(&self, t: f64) -> Complex64 {
        let x = t * self.total;
        let i = self.segment(x);
        let h = self.u[i + 1] - self.u[i];
        let a = (self.u[i + 1] - x) / h;
        let b = (x - self.u[i]) / h;
        let d = (self.p[i + 1] - self.p[i]) / h
            + self.m2[i] * ((1.0 - 3.0 * a * a) * h / 6.0)
            + self.m2[i + 1] * ((3.0 * b * b - 1.0) * h / 6.0);
        d * self.total
    }
}
