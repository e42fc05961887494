//! Spherical geometry primitives on S² (and S^{d-1} where noted).
//!
//! Everything here is a pure function of its inputs; values are immutable
//! after construction and safe to share across threads.

mod hull;
mod polygon;
mod project;
mod tessellation;
mod triangle;

pub(crate) mod vec3;

pub use polygon::spherical_polygon_area;
pub use project::project_to_tangent;
pub use tessellation::{tessellate, SphericalTessellation};
pub use triangle::{regular_triangle_area, regular_triangle_side};



use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("zero or non-finite vector cannot be normalized to the sphere")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),
    #[error("point set spans fewer than 3 dimensions")]
    DegenerateRank,
    #[error("all points lie in a closed hemisphere; spherical cells are unbounded")]
    Hemispherical,
}

/// A point of S^{d-1}: a direction in d-dimensional space, normalized on
/// construction. The zero vector is rejected.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct UnitVector {
    coords: Vec<f64>,
}

impl UnitVector {
    pub fn new(coords: impl Into<Vec<f64>>) -> Result<Self, GeomError> {
        let mut c = coords.into();
        if c.len() < 2 {
            return Err(GeomError::Domain(format!(
                "unit vectors need dimension >= 2, got {}",
                c.len()
            )));
        }
        let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() || norm < 1e-12 {
            return Err(GeomError::ZeroVector);
        }
        for x in &mut c {
            *x /= norm;
        }
        Ok(UnitVector { coords: c })
    }

    pub fn from3(v: [f64; 3]) -> Result<Self, GeomError> {
        Self::new(v.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dot(&self, other: &UnitVector) -> f64 {
        self.coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn antipode(&self) -> UnitVector {
        UnitVector {
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }

    /// The coordinates as a fixed 3-array. Panics if the dimension is not 3;
    /// callers on the d=3 paths check dimensions at the boundary.
    pub(crate) fn as3(&self) -> [f64; 3] {
        debug_assert_eq!(self.coords.len(), 3);
        [self.coords[0], self.coords[1], self.coords[2]]
    }
}

impl<'de> Deserialize<'de> for UnitVector {
    fn deserialize<D>(deserializer: D) -> Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let raw = Vec::<f64>::deserialize(deserializer)?;
        UnitVector::new(raw).map_err(serde::de::Error::custom)
    }
}

/// Angular (great-circle) distance between two unit vectors, in [0, π].
///
/// In dimension 3 this uses the two-argument arctangent of cross and dot
/// products, which is stable near 0 and π; elsewhere a clamped arccosine.
pub fn angular_distance(u: &UnitVector, v: &UnitVector) -> Result<f64, GeomError> {
    if u.dim() != v.dim() {
        return Err(GeomError::DimensionMismatch {
            expected: u.dim(),
            got: v.dim(),
        });
    }
    if u.dim() == 3 {
        Ok(vec3::angle(u.as3(), v.as3()))
    } else {
        Ok(u.dot(v).clamp(-1.0, 1.0).acos())
    }
}

/// Minimum pairwise angular distance ψ(X) over all distinct pairs.
/// Duplicate points yield 0, which is a value, not an error.
pub fn min_pairwise(points: &[UnitVector]) -> Result<f64, GeomError> {
    if points.len() < 2 {
        return Err(GeomError::TooFewPoints {
            needed: 2,
            got: points.len(),
        });
    }
    let mut best = std::f64::consts::PI;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let d = angular_distance(&points[i], &points[j])?;
            if d < best {
                best = d;
            }
        }
    }
    Ok(best)
}

/// A finite point set on S^{d-1} with its cached minimum angular distance.
/// ψ is defined only when the code has at least two points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphericalCode {
    points: Vec<UnitVector>,
    psi: Option<f64>,
}

impl<'de> Deserialize<'de> for SphericalCode {
    fn deserialize<D>(deserializer: D) -> Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            points: Vec<UnitVector>,
        }
        let raw = Raw::deserialize(deserializer)?;
        SphericalCode::new(raw.points).map_err(serde::de::Error::custom)
    }
}

impl SphericalCode {
    pub fn new(points: Vec<UnitVector>) -> Result<Self, GeomError> {
        if points.is_empty() {
            return Err(GeomError::TooFewPoints { needed: 1, got: 0 });
        }
        let d = points[0].dim();
        for p in &points {
            if p.dim() != d {
                return Err(GeomError::DimensionMismatch {
                    expected: d,
                    got: p.dim(),
                });
            }
        }
        let psi = if points.len() >= 2 {
            Some(min_pairwise(&points)?)
        } else {
            None
        };
        Ok(SphericalCode { points, psi })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, GeomError> {
        let points = rows
            .iter()
            .map(|r| UnitVector::new(r.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        SphericalCode::new(points)
    }

    pub fn points(&self) -> &[UnitVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    /// ψ(X), the cached minimum pairwise angular distance.
    pub fn psi(&self) -> Option<f64> {
        self.psi
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn e(i: usize) -> UnitVector {
        let mut v = vec![0.0; 3];
        v[i] = 1.0;
        UnitVector::new(v).unwrap()
    }

    #[test]
    fn constructor_normalizes_and_rejects_zero() {
        let u = UnitVector::new(vec![3.0, 0.0, 4.0]).unwrap();
        assert_abs_diff_eq!(u.coords()[0], 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(u.coords()[2], 0.8, epsilon = 1e-15);
        assert_eq!(
            UnitVector::new(vec![0.0, 0.0, 0.0]).unwrap_err(),
            GeomError::ZeroVector
        );
    }

    #[test]
    fn angular_distance_identity_antipodal_orthogonal() {
        assert_abs_diff_eq!(angular_distance(&e(0), &e(0)).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            angular_distance(&e(0), &e(0).antipode()).unwrap(),
            PI,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            angular_distance(&e(0), &e(1)).unwrap(),
            FRAC_PI_2,
            epsilon = 1e-15
        );
    }

    #[test]
    fn angular_distance_rejects_dimension_mismatch() {
        let u = UnitVector::new(vec![1.0, 0.0]).unwrap();
        assert!(matches!(
            angular_distance(&u, &e(0)),
            Err(GeomError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn min_pairwise_platonic_values() {
        // Octahedron: π/2.
        let oct: Vec<UnitVector> = (0..3)
            .flat_map(|i| [e(i), e(i).antipode()])
            .collect();
        assert_abs_diff_eq!(min_pairwise(&oct).unwrap(), FRAC_PI_2, epsilon = 1e-14);

        // Cube: arccos(1/3).
        let s = 1.0 / 3.0_f64.sqrt();
        let mut cube = Vec::new();
        for &x in &[-s, s] {
            for &y in &[-s, s] {
                for &z in &[-s, s] {
                    cube.push(UnitVector::new(vec![x, y, z]).unwrap());
                }
            }
        }
        assert_abs_diff_eq!(
            min_pairwise(&cube).unwrap(),
            (1.0_f64 / 3.0).acos(),
            epsilon = 1e-14
        );

        // Icosahedron: arccos(1/√5).
        let ico = crate::solids::icosahedron_vertices();
        assert_abs_diff_eq!(
            min_pairwise(ico.points()).unwrap(),
            (1.0 / 5.0_f64.sqrt()).acos(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn min_pairwise_duplicates_return_zero() {
        let pts = vec![e(0), e(0), e(1)];
        assert_abs_diff_eq!(min_pairwise(&pts).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn min_pairwise_needs_two_points() {
        assert!(matches!(
            min_pairwise(&[e(0)]),
            Err(GeomError::TooFewPoints { .. })
        ));
    }
}
