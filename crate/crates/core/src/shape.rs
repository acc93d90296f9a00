//! Triangle shapes up to translation and positive scaling.
//!
//! A labeled triangle `(z0, z1, z2)` in the plane is reduced to the pair of
//! edge vectors `(z1 - z0, z2 - z0)` in ℂ², which kills translation, and then
//! scaled to unit norm, which kills positive homothety. The resulting shape
//! space is the unit sphere S³ ⊂ ℂ². The ratio `(z1 - z0) / (z2 - z0)` is a
//! further quotient onto the Riemann sphere; in that chart the classical
//! triangle families (flat, equilateral, isosceles, right) are exact circles
//! and lines, which makes classification a handful of distance checks.

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Norm below which an edge pair is considered degenerate (all three
/// vertices coincide and no shape can be assigned).
pub const DEGENERATE_EPS: f64 = 1e-14;

/// `|w2|` below which the Hopf ratio `w1 / w2` is reported as the point at
/// infinity instead of an overflowing finite value.
pub const HOPF_INFINITY_EPS: f64 = 1e-14;

#[derive(Debug, Error, PartialEq)]
pub enum ShapeError {
    #[error("degenerate triangle: all vertices coincide")]
    Degenerate,
    #[error("tolerance must be positive, got {0}")]
    NonpositiveTolerance(f64),
}

/// A labeled triangle given by its three vertices. Vertices may coincide
/// pairwise (such triangles are flat); only the fully collapsed triangle
/// carries no shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    pub z0: Complex64,
    pub z1: Complex64,
    pub z2: Complex64,
}

impl Triangle {
    pub fn new(z0: Complex64, z1: Complex64, z2: Complex64) -> Self {
        Triangle { z0, z1, z2 }
    }

    pub fn from_coords(coords: [[f64; 2]; 3]) -> Self {
        Triangle {
            z0: Complex64::new(coords[0][0], coords[0][1]),
            z1: Complex64::new(coords[1][0], coords[1][1]),
            z2: Complex64::new(coords[2][0], coords[2][1]),
        }
    }

    pub fn vertices(&self) -> [Complex64; 3] {
        [self.z0, self.z1, self.z2]
    }

    /// Relabels the vertices: vertex `i` of the result is vertex `perm[i]`
    /// of `self`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let v = self.vertices();
        Triangle {
            z0: v[perm[0]],
            z1: v[perm[1]],
            z2: v[perm[2]],
        }
    }

    /// All six vertex labelings, starting with the identity.
    pub fn labelings(&self) -> [(Triangle, [usize; 3]); 6] {
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [0, 2, 1],
            [2, 1, 0],
            [1, 0, 2],
        ];
        PERMS.map(|p| (self.permuted(p), p))
    }
}

#[derive(Debug, Error, PartialEq)]
#[error("invalid triangle at vertex {vertex}: {message}")]
pub struct TriangleParseError {
    pub vertex: usize,
    pub message: String,
}

impl FromStr for Triangle {
    type Err = TriangleParseError;

    /// Parses `"x0,y0 x1,y1 x2,y2"` (whitespace separated vertices, comma
    /// separated coordinates).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut coords = [[0.0; 2]; 3];
        let mut fields = s.split_whitespace();
        for (i, slot) in coords.iter_mut().enumerate() {
            let field = fields.next().ok_or_else(|| TriangleParseError {
                vertex: i,
                message: "expected three vertices \"x0,y0 x1,y1 x2,y2\"".into(),
            })?;
            let mut parts = field.split(',');
            for (j, name) in ["x", "y"].into_iter().enumerate() {
                let raw = parts.next().unwrap_or("");
                slot[j] = raw.trim().parse::<f64>().map_err(|_| TriangleParseError {
                    vertex: i,
                    message: format!("cannot parse {name} coordinate {raw:?}"),
                })?;
            }
            if parts.next().is_some() {
                return Err(TriangleParseError {
                    vertex: i,
                    message: "each vertex takes exactly two coordinates".into(),
                });
            }
        }
        if let Some(extra) = fields.next() {
            return Err(TriangleParseError {
                vertex: 3,
                message: format!("unexpected trailing field {extra:?}"),
            });
        }
        Ok(Triangle::from_coords(coords))
    }
}

/// The shape of a labeled triangle: the edge pair `(z1 - z0, z2 - z0)`
/// normalized to unit norm in ℂ². The unit-norm invariant is enforced by
/// construction, so values of this type always lie on S³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shape {
    w1: Complex64,
    w2: Complex64,
}

impl Shape {
    /// Normalizes an edge pair. Errors when the pair is too short to carry a
    /// direction (both entries below [`DEGENERATE_EPS`] in joint norm).
    pub fn from_pair(w1: Complex64, w2: Complex64) -> Result<Self, ShapeError> {
        let n = (w1.norm_sqr() + w2.norm_sqr()).sqrt();
        if n <= DEGENERATE_EPS {
            return Err(ShapeError::Degenerate);
        }
        Ok(Shape {
            w1: w1 / n,
            w2: w2 / n,
        })
    }

    /// The shape of a labeled triangle.
    pub fn of_triangle(t: &Triangle) -> Result<Self, ShapeError> {
        Shape::from_pair(t.z1 - t.z0, t.z2 - t.z0)
    }

    pub fn w1(&self) -> Complex64 {
        self.w1
    }

    pub fn w2(&self) -> Complex64 {
        self.w2
    }

    /// The shape as a point of S³ ⊂ ℝ⁴, ordered `[Re w1, Im w1, Re w2, Im w2]`.
    pub fn coords(&self) -> [f64; 4] {
        [self.w1.re, self.w1.im, self.w2.re, self.w2.im]
    }

    pub fn from_coords(v: [f64; 4]) -> Result<Self, ShapeError> {
        Shape::from_pair(Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3]))
    }

    /// The ratio `w1 / w2` on the Riemann sphere. `w2` shorter than
    /// [`HOPF_INFINITY_EPS`] maps to the point at infinity; for a unit pair
    /// that threshold makes the chart total.
    pub fn hopf(&self) -> HopfCoord {
        if self.w2.norm() <= HOPF_INFINITY_EPS {
            HopfCoord::Infinity
        } else {
            HopfCoord::Finite(self.w1 / self.w2)
        }
    }

    /// The determinant of `(w1, w2)` read as two real column vectors. Its
    /// sign tells the two orientation classes of non-flat triangles apart;
    /// it vanishes exactly on flat shapes.
    pub fn det(&self) -> f64 {
        self.w1.re * self.w2.im - self.w1.im * self.w2.re
    }

    /// Euclidean (chordal) distance between two shapes as points of S³ ⊂ ℝ⁴.
    pub fn distance(&self, other: &Shape) -> f64 {
        let a = self.coords();
        let b = other.coords();
        let mut s = 0.0;
        for i in 0..4 {
            let d = a[i] - b[i];
            s += d * d;
        }
        s.sqrt()
    }

    /// Classifies the shape against the classical loci in the Hopf chart. A
    /// shape can sit on several loci at once (a right isosceles triangle, a
    /// flat triangle with a repeated vertex, ...), so a set of tags is
    /// reported rather than a single winner; `Scalene` appears alone, and
    /// only when nothing else matched.
    ///
    /// In the chart `z = w1 / w2`:
    /// * flat: the real axis (and ∞),
    /// * equilateral: the two points `exp(±iπ/3)`,
    /// * isosceles: the circles `|z| = 1`, `|z - 1| = 1` and the line
    ///   `Re z = 1/2` (with ∞),
    /// * right: the circle `|z - 1/2| = 1/2` and the lines `Re z = 0`,
    ///   `Re z = 1` (each with ∞).
    ///
    /// Orientation is the sign of [`Shape::det`], forced to 0 exactly when
    /// the flat tag is present so the two flatness signals cannot disagree
    /// at the tolerance boundary.
    pub fn classify(&self, tol: f64) -> Result<ShapeClass, ShapeError> {
        if tol <= 0.0 {
            return Err(ShapeError::NonpositiveTolerance(tol));
        }
        let mut tags = Vec::new();
        match self.hopf() {
            HopfCoord::Infinity => {
                // The limit of every vertical line in the chart: flat, and on
                // the isosceles and right lines, but on none of the circles.
                tags.extend([ShapeTag::Flat, ShapeTag::Isosceles, ShapeTag::Right]);
            }
            HopfCoord::Finite(z) => {
                if z.im.abs() <= tol {
                    tags.push(ShapeTag::Flat);
                }
                let eq = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3);
                if (z - eq).norm() <= tol || (z - eq.conj()).norm() <= tol {
                    tags.push(ShapeTag::Equilateral);
                }
                if (z.norm() - 1.0).abs() <= tol
                    || ((z - 1.0).norm() - 1.0).abs() <= tol
                    || (z.re - 0.5).abs() <= tol
                {
                    tags.push(ShapeTag::Isosceles);
                }
                if ((z - 0.5).norm() - 0.5).abs() <= tol
                    || z.re.abs() <= tol
                    || (z.re - 1.0).abs() <= tol
                {
                    tags.push(ShapeTag::Right);
                }
            }
        }
        if tags.is_empty() {
            tags.push(ShapeTag::Scalene);
        }
        let orientation = if tags.contains(&ShapeTag::Flat) {
            0
        } else if self.det() > 0.0 {
            1
        } else {
            -1
        };
        Ok(ShapeClass { tags, orientation })
    }
}

impl Serialize for Shape {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let c = self.coords();
        let mut seq = serializer.serialize_seq(Some(4))?;
        for x in c {
            seq.serialize_element(&x)?;
        }
        seq.end()
    }
}

/// A point of the Riemann sphere Ĉ = ℂ ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HopfCoord {
    Finite(Complex64),
    Infinity,
}

impl HopfCoord {
    pub fn is_infinity(&self) -> bool {
        matches!(self, HopfCoord::Infinity)
    }

    pub fn finite(&self) -> Option<Complex64> {
        match self {
            HopfCoord::Finite(z) => Some(*z),
            HopfCoord::Infinity => None,
        }
    }
}

impl fmt::Display for HopfCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HopfCoord::Finite(z) => write!(f, "{} {:+}i", z.re, z.im),
            HopfCoord::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for HopfCoord {
    /// `[re, im]` for finite values, the string `"inf"` for infinity.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            HopfCoord::Finite(z) => [z.re, z.im].serialize(serializer),
            HopfCoord::Infinity => "inf".serialize(serializer),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeTag {
    Flat,
    Equilateral,
    Isosceles,
    Right,
    Scalene,
}

impl fmt::Display for ShapeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ShapeTag::Flat => "flat",
            ShapeTag::Equilateral => "equilateral",
            ShapeTag::Isosceles => "isosceles",
            ShapeTag::Right => "right",
            ShapeTag::Scalene => "scalene",
        };
        f.write_str(name)
    }
}

/// Result of [`Shape::classify`]: every locus the shape sits on, plus the
/// orientation sign (+1 counterclockwise, -1 clockwise, 0 flat).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeClass {
    pub tags: Vec<ShapeTag>,
    pub orientation: i8,
}

impl ShapeClass {
    pub fn is(&self, tag: ShapeTag) -> bool {
        self.tags.contains(&tag)
    }
}
