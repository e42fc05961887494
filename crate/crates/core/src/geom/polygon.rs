//! Spherical polygon areas by angular excess.

use super::vec3::{self, V3};
use super::{GeomError, UnitVector};
use std::f64::consts::PI;

/// Area of a simple spherical polygon whose vertices are listed
/// counterclockwise as seen from outside the sphere (interior on the left).
///
/// Computed as the sum of interior angles minus (n−2)π. Adjacent vertices
/// that coincide or are antipodal leave the connecting arc undefined and are
/// rejected.
pub fn spherical_polygon_area(cycle: &[UnitVector]) -> Result<f64, GeomError> {
    if cycle.len() < 3 {
        return Err(GeomError::DegeneratePolygon(format!(
            "polygon needs at least 3 vertices, got {}",
            cycle.len()
        )));
    }
    for v in cycle {
        if v.dim() != 3 {
            return Err(GeomError::DimensionMismatch {
                expected: 3,
                got: v.dim(),
            });
        }
    }
    let pts: Vec<V3> = cycle.iter().map(|v| v.as3()).collect();
    let n = pts.len();
    for i in 0..n {
        let d = vec3::angle(pts[i], pts[(i + 1) % n]);
        if d < 1e-10 {
            return Err(GeomError::DegeneratePolygon(
                "adjacent vertices coincide".into(),
            ));
        }
        if d > PI - 1e-10 {
            return Err(GeomError::DegeneratePolygon(
                "adjacent vertices are antipodal; the arc between them is undefined".into(),
            ));
        }
    }
    Ok(excess_area(&pts))
}

/// Interior-angle excess for a CCW vertex loop. Callers guarantee
/// non-degenerate adjacent pairs.
pub(crate) fn excess_area(pts: &[V3]) -> f64 {
    let n = pts.len();
    let mut angle_sum = 0.0;
    for i in 0..n {
        let prev = pts[(i + n - 1) % n];
        let next = pts[(i + 1) % n];
        let v = pts[i];
        let ta = vec3::normalize(vec3::tangential(v, prev)).unwrap_or([0.0; 3]);
        let tb = vec3::normalize(vec3::tangential(v, next)).unwrap_or([0.0; 3]);
        // Signed angle from the outgoing to the incoming tangent around v;
        // for a CCW loop the interior angle is its value in (0, 2π).
        let s = vec3::dot(vec3::cross(tb, ta), v).atan2(vec3::dot(tb, ta));
        angle_sum += if s > 0.0 { s } else { s + 2.0 * PI };
    }
    angle_sum - (n as f64 - 2.0) * PI
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn uv(x: f64, y: f64, z: f64) -> UnitVector {
        UnitVector::new(vec![x, y, z]).unwrap()
    }

    #[test]
    fn octant_triangle() {
        let cycle = [uv(1.0, 0.0, 0.0), uv(0.0, 1.0, 0.0), uv(0.0, 0.0, 1.0)];
        assert_abs_diff_eq!(
            spherical_polygon_area(&cycle).unwrap(),
            FRAC_PI_2,
            epsilon = 1e-13
        );
    }

    #[test]
    fn equatorial_square_bounds_a_hemisphere() {
        let cycle = [
            uv(1.0, 0.0, 0.0),
            uv(0.0, 1.0, 0.0),
            uv(-1.0, 0.0, 0.0),
            uv(0.0, -1.0, 0.0),
        ];
        assert_abs_diff_eq!(
            spherical_polygon_area(&cycle).unwrap(),
            2.0 * PI,
            epsilon = 1e-13
        );
    }

    #[test]
    fn antipodal_adjacent_vertices_are_rejected() {
        let cycle = [uv(0.0, 0.0, 1.0), uv(0.0, 0.0, -1.0), uv(1.0, 0.0, 0.0)];
        assert!(matches!(
            spherical_polygon_area(&cycle),
            Err(GeomError::DegeneratePolygon(_))
        ));
    }

    #[test]
    fn duplicate_adjacent_vertices_are_rejected() {
        let cycle = [uv(0.0, 0.0, 1.0), uv(0.0, 0.0, 1.0), uv(1.0, 0.0, 0.0)];
        assert!(spherical_polygon_area(&cycle).is_err());
    }

    #[test]
    fn too_few_vertices() {
        let cycle = [uv(0.0, 0.0, 1.0), uv(1.0, 0.0, 0.0)];
        assert!(spherical_polygon_area(&cycle).is_err());
    }
}
