//! Shapes of n-simplexes and the circumsphere placement oracle.
//!
//! The planar machinery generalizes: an n-simplex in ℝⁿ, taken up to
//! translation and positive scaling, is the jointly normalized matrix of
//! its edge vectors from vertex 0, a point of the unit sphere in ℝ^{n²}.
//! Flat simplexes (contained in a hyperplane) are cut out by the vanishing
//! of the edge determinant, whose sign splits the rest into two
//! orientation components. On the round sphere the inscription problem has
//! a closed form via the circumcenter, exactly as on the circle; that base
//! case is what this module provides beyond the shape space itself.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

/// A shape is flat when `|flatness|` falls at or below this.
pub const FLAT_SIMPLEX_EPS: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum SimplexError {
    #[error("an n-simplex needs n+1 vertices of R^n with n >= 2, got {count} vertices of R^{dim}")]
    BadDimensions { count: usize, dim: usize },
    #[error("vertices coincide; the simplex has no shape")]
    Degenerate,
    #[error("target simplex is flat; it has no circumscribed sphere")]
    FlatTarget,
}

/// An n-simplex up to translation and positive homothety: the n×n matrix
/// of edge vectors from vertex 0, normalized to unit Frobenius norm.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexShape {
    edges: DMatrix<f64>,
}

impl SimplexShape {
    /// Ambient dimension n (the simplex has n+1 vertices).
    pub fn dim(&self) -> usize {
        self.edges.nrows()
    }

    /// The normalized edge matrix, edge `i` (vertex `i+1` minus vertex 0)
    /// in column `i`.
    pub fn edges(&self) -> &DMatrix<f64> {
        &self.edges
    }

    /// Determinant of the edge matrix: zero exactly on flat simplexes, and
    /// its sign distinguishes the two orientation components of the
    /// non-flat ones.
    pub fn flatness(&self) -> f64 {
        self.edges.determinant()
    }

    /// Chordal distance on the shape sphere. Panics if the dimensions
    /// differ.
    pub fn distance(&self, other: &SimplexShape) -> f64 {
        assert_eq!(self.dim(), other.dim(), "shapes of different dimension");
        (&self.edges - &other.edges).norm()
    }
}

/// The shape of the simplex with the given vertices: n+1 points of ℝⁿ,
/// vertex 0 first. Translating all vertices or scaling them by a positive
/// factor yields the identical shape.
pub fn simplex_shape(vertices: &[DVector<f64>]) -> Result<SimplexShape, SimplexError> {
    let count = vertices.len();
    let dim = vertices.first().map_or(0, |v| v.len());
    if count < 3 || dim + 1 != count || vertices.iter().any(|v| v.len() != dim) {
        return Err(SimplexError::BadDimensions { count, dim });
    }
    let n = dim;
    let mut edges = DMatrix::zeros(n, n);
    for i in 0..n {
        edges.set_column(i, &(&vertices[i + 1] - &vertices[0]));
    }
    let norm = edges.norm();
    if norm <= 1e-14 {
        return Err(SimplexError::Degenerate);
    }
    edges /= norm;
    Ok(SimplexShape { edges })
}

/// Places a non-flat simplex on the unit sphere S^{n−1}: the unique
/// inscription up to translation and positive homothety, obtained by
/// projecting the vertices from the circumcenter. The circumcenter solves
/// the linear system equating the squared distances to every vertex; a
/// singular system means the target was flat after all.
pub fn sphere_oracle(vertices: &[DVector<f64>]) -> Result<Vec<DVector<f64>>, SimplexError> {
    let shape = simplex_shape(vertices)?;
    if shape.flatness().abs() <= FLAT_SIMPLEX_EPS {
        return Err(SimplexError::FlatTarget);
    }
    let n = shape.dim();
    let z0 = &vertices[0];
    let mut m = DMatrix::zeros(n, n);
    let mut rhs = DVector::zeros(n);
    for i in 0..n {
        let d = &vertices[i + 1] - z0;
        for j in 0..n {
            m[(i, j)] = 2.0 * d[j];
        }
        rhs[i] = vertices[i + 1].norm_squared() - z0.norm_squared();
    }
    let center = m.lu().solve(&rhs).ok_or(SimplexError::FlatTarget)?;
    let radius = (z0 - &center).norm();
    Ok(vertices.iter().map(|z| (z - &center) / radius).collect())
}
