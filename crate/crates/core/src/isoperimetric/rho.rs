//! Exact area of the tangent-plane lift of a regular spherical triangle, and
//! the dual form of the Goldberg–Fejes Tóth bound built on it.

use super::IsoError;
use crate::geom::vec3::{self, V3};
use crate::geom::{regular_triangle_side, UnitVector};
use crate::geom::project_to_tangent;
use std::f64::consts::PI;

fn lift(at: V3, y: V3) -> Result<V3, IsoError> {
    let x = UnitVector::from3(at).map_err(IsoError::Geom)?;
    let yv = UnitVector::from3(y).map_err(IsoError::Geom)?;
    let p = project_to_tangent(&x, &yv).map_err(IsoError::Geom)?;
    Ok([p[0], p[1], p[2]])
}

/// ρ(t): the surface area of the preimage, under central projection from the
/// circumscribed polyhedron, of a regular spherical triangle of area t.
///
/// The preimage consists of three congruent planar kites, one per tangent
/// plane at the triangle's vertices; the kite at a vertex has corners at the
/// vertex itself and the lifted images of the two adjacent arc midpoints and
/// of the circumcenter. Its area is computed by an exact planar shoelace.
pub fn rho(t: f64) -> Result<f64, IsoError> {
    if !(t > 0.0 && t < 2.0 * PI) {
        return Err(IsoError::Domain(format!(
            "lifted triangle area needs t in (0, 2π), got {t}"
        )));
    }
    let phi = regular_triangle_side(t).map_err(IsoError::Geom)?;
    // Circumradius R of the regular triangle: cos²R = (2 cos φ + 1)/3,
    // strictly below π/2 throughout the domain.
    let cos_r = ((2.0 * phi.cos() + 1.0) / 3.0).sqrt();
    let sin_r = (1.0 - cos_r * cos_r).max(0.0).sqrt();

    let pole: V3 = [0.0, 0.0, 1.0];
    let vertex = |lon: f64| -> V3 { [sin_r * lon.cos(), sin_r * lon.sin(), cos_r] };
    let x1 = vertex(0.0);
    let x2 = vertex(2.0 * PI / 3.0);
    let x3 = vertex(4.0 * PI / 3.0);

    let m12 = vec3::normalize(vec3::add(x1, x2)).ok_or_else(|| {
        IsoError::Domain("degenerate arc midpoint".into())
    })?;
    let m13 = vec3::normalize(vec3::add(x1, x3)).ok_or_else(|| {
        IsoError::Domain("degenerate arc midpoint".into())
    })?;

    let corners = [x1, lift(x1, m12)?, lift(x1, pole)?, lift(x1, m13)?];
    let mut area2 = 0.0;
    for k in 0..4 {
        let a = vec3::sub(corners[k], x1);
        let b = vec3::sub(corners[(k + 1) % 4], x1);
        area2 += vec3::dot(vec3::cross(a, b), x1);
    }
    Ok(3.0 * 0.5 * area2.abs())
}

/// The dual form of the Goldberg–Fejes Tóth bound for a polyhedron with f
/// faces: IQ ≤ τ/ρ(τ) with τ = 2π/(f − 2). Agrees with
/// [`crate::bounds::goldberg_ft_rhs`] to machine precision.
pub fn dual_goldberg_bound(f: u32) -> Result<f64, IsoError> {
    if f < 4 {
        return Err(IsoError::Domain(format!(
            "dual bound needs f >= 4, got {f}"
        )));
    }
    let tau = 2.0 * PI / (f as f64 - 2.0);
    Ok(tau / rho(tau)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn octant_triangle_lifts_to_three_unit_squares() {
        // Eight octants tile the sphere and lift to the cube of surface 24.
        let r = rho(FRAC_PI_2).unwrap();
        assert_abs_diff_eq!(r, 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(8.0 * r, 24.0, epsilon = 1e-11);
    }

    #[test]
    fn small_areas_lift_almost_isometrically() {
        for &t in &[1e-3, 1e-4, 1e-5] {
            let ratio = rho(t).unwrap() / t;
            assert!((ratio - 1.0).abs() < 10.0 * t, "ratio {ratio} at t = {t}");
        }
    }

    #[test]
    fn tetrahedral_case() {
        // τ = π lifts to a quarter of the regular tetrahedron's surface 24√3.
        assert_abs_diff_eq!(rho(PI).unwrap(), 6.0 * 3.0_f64.sqrt(), epsilon = 1e-10);
    }

    #[test]
    fn dual_bound_matches_goldberg_closed_form() {
        for f in 4..=64 {
            let dual = dual_goldberg_bound(f).unwrap();
            let closed = crate::bounds::goldberg_ft_rhs(f).unwrap();
            assert_abs_diff_eq!(dual, closed, epsilon = 1e-9);
        }
    }

    #[test]
    fn domain_is_enforced() {
        assert!(rho(0.0).is_err());
        assert!(rho(2.0 * PI).is_err());
        assert!(dual_goldberg_bound(3).is_err());
    }
}
