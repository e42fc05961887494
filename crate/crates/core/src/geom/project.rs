//! Central projection onto tangent planes.

use super::{angular_distance, GeomError, UnitVector};
use std::f64::consts::FRAC_PI_2;

/// Intersection of the ray from the origin through `y` with the plane
/// tangent to the unit sphere at `x`, i.e. {p : p·x = 1}.
///
/// The tangency point is fixed: projecting `x` returns `x`. A point at
/// angular distance θ from `x` lands at planar distance tan θ; at θ ≥ π/2
/// the ray no longer meets the plane and the projection is undefined.
pub fn project_to_tangent(x: &UnitVector, y: &UnitVector) -> Result<Vec<f64>, GeomError> {
    let theta = angular_distance(x, y)?;
    let c = x.dot(y);
    if theta >= FRAC_PI_2 || c <= 1e-12 {
        return Err(GeomError::Domain(format!(
            "projection undefined at angular distance {theta} >= π/2"
        )));
    }
    Ok(y.coords().iter().map(|v| v / c).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn uv(v: [f64; 3]) -> UnitVector {
        UnitVector::from3(v).unwrap()
    }

    #[test]
    fn tangency_point_is_fixed() {
        let x = uv([0.0, 0.0, 1.0]);
        let p = project_to_tangent(&x, &x).unwrap();
        assert_abs_diff_eq!(p[2], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p[0], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn forty_five_degree_ray_lands_at_unit_offset() {
        let x = uv([0.0, 0.0, 1.0]);
        let s = 1.0 / 2.0_f64.sqrt();
        let y = uv([s, 0.0, s]);
        let p = project_to_tangent(&x, &y).unwrap();
        assert_abs_diff_eq!(p[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(p[1], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(p[2], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn orthogonal_ray_is_rejected() {
        let x = uv([0.0, 0.0, 1.0]);
        let y = uv([1.0, 0.0, 0.0]);
        assert!(project_to_tangent(&x, &y).is_err());
    }

    #[test]
    fn planar_distance_is_tangent_of_angle() {
        let x = uv([0.0, 0.0, 1.0]);
        for k in 1..15 {
            let theta = k as f64 * 0.1;
            let y = uv([theta.sin(), 0.0, theta.cos()]);
            match project_to_tangent(&x, &y) {
                Ok(p) => {
                    let planar = (p[0] * p[0] + p[1] * p[1]).sqrt();
                    assert_abs_diff_eq!(planar, theta.tan(), epsilon = 1e-12);
                }
                Err(_) => assert!(theta >= std::f64::consts::FRAC_PI_2 - 1e-9),
            }
        }
    }
}
