//! Central-projection identities of circumscribed polyhedra.
//!
//! Projecting a circumscribed polyhedron radially onto its inscribed sphere
//! sends each face to the Voronoi cell of its tangency point and each
//! polyhedron vertex to a Voronoi vertex (the circumcenter of the dual
//! Delaunay cell). The spherical areas of the Voronoi and Delaunay cells
//! each sum to 4π, and the surface area equals the sum over Delaunay cells
//! of the lifted areas ∫ sec³θ dσ, θ being the angular distance to the
//! nearest tangency point. The report below verifies all of it numerically:
//! the lifted areas are computed by adaptive quadrature over the overlay of
//! the Delaunay cell with the Voronoi diagram, an independent route from the
//! planar face decomposition that produced the surface area.

use super::{CircumscribedPolyhedron, IsoError};
use crate::geom::vec3::{self, V3};
use crate::geom::{angular_distance, spherical_polygon_area, UnitVector};
use std::f64::consts::PI;

/// Numerical check of the projection identities for one polyhedron.
#[derive(Debug, Clone)]
pub struct ProjectionReport {
    /// Spherical areas of the projected faces (the Voronoi cells).
    pub voronoi_areas: Vec<f64>,
    /// Spherical areas of the Delaunay cells.
    pub delaunay_areas: Vec<f64>,
    /// Largest angular deviation between a projected polyhedron vertex and
    /// the nearest Voronoi vertex.
    pub projected_vertex_match: f64,
    /// |Σ voronoi_areas − 4π|.
    pub face_area_sum_check: f64,
    /// Σ of the lifted Delaunay-cell areas, which must reproduce the
    /// surface area.
    pub preimage_area_sum: f64,
    /// Lifted area of each Delaunay cell.
    pub preimage_areas: Vec<f64>,
    /// Accumulated quadrature error bound for the lifted areas.
    pub quadrature_error: f64,
    /// Surface area of the polyhedron, for the relative comparison.
    pub surface_area: f64,
}

impl ProjectionReport {
    /// |Σ lifted areas − F| / F.
    pub fn relative_surface_residual(&self) -> f64 {
        (self.preimage_area_sum - self.surface_area).abs() / self.surface_area
    }

    pub fn delaunay_area_sum_check(&self) -> f64 {
        (self.delaunay_areas.iter().sum::<f64>() - 4.0 * PI).abs()
    }
}

/// Verify the central-projection identities of a circumscribed polyhedron.
pub fn projection_report(p: &CircumscribedPolyhedron) -> Result<ProjectionReport, IsoError> {
    let tess = p.tessellation();
    let sites: Vec<V3> = tess.sites().points().iter().map(|s| s.as3()).collect();

    // Projected faces: the radial images of the face polygons.
    let mut voronoi_areas = Vec::with_capacity(p.faces.len());
    for face in &p.faces {
        let cycle: Vec<UnitVector> = face
            .vertex_ids
            .iter()
            .map(|&vid| UnitVector::from3(p.vertices[vid]).map_err(IsoError::Geom))
            .collect::<Result<_, _>>()?;
        voronoi_areas.push(spherical_polygon_area(&cycle).map_err(IsoError::Geom)?);
    }
    let face_area_sum_check = (voronoi_areas.iter().sum::<f64>() - 4.0 * PI).abs();

    let delaunay_areas = tess.delaunay_areas().map_err(IsoError::Geom)?;

    // Projected polyhedron vertices against the Voronoi vertex set.
    let mut projected_vertex_match = 0.0_f64;
    for v in &p.vertices {
        let g = UnitVector::from3(*v).map_err(IsoError::Geom)?;
        let nearest = tess
            .circumcenters()
            .iter()
            .map(|c| angular_distance(&g, c).expect("d = 3"))
            .fold(f64::INFINITY, f64::min);
        projected_vertex_match = projected_vertex_match.max(nearest);
    }

    // Lifted Delaunay areas: ∫ sec³(θ to nearest site) over each cell,
    // integrated piecewise over the overlay with the Voronoi diagram so the
    // integrand is smooth on every piece.
    let mut preimage_areas = Vec::with_capacity(tess.delaunay_cells().len());
    let mut quadrature_error = 0.0;
    for cell in tess.delaunay_cells() {
        let tri = [
            sites[cell[0]],
            sites[cell[1]],
            sites[cell[2]],
        ];
        let mut lifted = 0.0;
        for (s, owner) in sites.iter().enumerate() {
            let piece = clip_to_voronoi_cell(&tri, s, &sites);
            if piece.len() < 3 {
                continue;
            }
            let q = integrate_projection_density(&piece, *owner, 3, 1e-12);
            lifted += q.0;
            quadrature_error += q.1;
        }
        preimage_areas.push(lifted);
    }
    let preimage_area_sum = preimage_areas.iter().sum();

    Ok(ProjectionReport {
        voronoi_areas,
        delaunay_areas,
        projected_vertex_match,
        face_area_sum_check,
        preimage_area_sum,
        preimage_areas,
        quadrature_error,
        surface_area: p.surface_area,
    })
}

/// Intersect a spherical convex polygon with the Voronoi cell of site `s`:
/// successively clip by the central planes ω·(x_s − x_t) ≥ 0 for t ≠ s.
fn clip_to_voronoi_cell(polygon: &[V3], s: usize, sites: &[V3]) -> Vec<V3> {
    let mut poly: Vec<V3> = polygon.to_vec();
    for (t, other) in sites.iter().enumerate() {
        if t == s {
            continue;
        }
        poly = clip_halfspace(&poly, vec3::sub(sites[s], *other));
        if poly.len() < 3 {
            return Vec::new();
        }
    }
    poly
}

/// Sutherland–Hodgman against the central plane n·ω ≥ 0; crossing points are
/// placed exactly on the great circle (the chord zero coincides with the arc
/// zero for planes through the origin).
fn clip_halfspace(poly: &[V3], n: V3) -> Vec<V3> {
    const EPS: f64 = 1e-13;
    let mut out: Vec<V3> = Vec::with_capacity(poly.len() + 2);
    let k = poly.len();
    for i in 0..k {
        let a = poly[i];
        let b = poly[(i + 1) % k];
        let da = vec3::dot(n, a);
        let db = vec3::dot(n, b);
        let a_in = da >= -EPS;
        let b_in = db >= -EPS;
        if a_in {
            push_dedup(&mut out, a);
        }
        if a_in != b_in {
            let t = da / (da - db);
            let w = vec3::add(vec3::scale(a, 1.0 - t), vec3::scale(b, t));
            if let Some(u) = vec3::normalize(w) {
                push_dedup(&mut out, u);
            }
        }
    }
    // Close the loop: drop a duplicated first/last vertex.
    while out.len() > 1 {
        let first = out[0];
        let last = *out.last().unwrap();
        if vec3::norm(vec3::sub(first, last)) < 1e-12 {
            out.pop();
        } else {
            break;
        }
    }
    out
}

fn push_dedup(out: &mut Vec<V3>, p: V3) {
    if let Some(last) = out.last() {
        if vec3::norm(vec3::sub(*last, p)) < 1e-12 {
            return;
        }
    }
    out.push(p);
}

/// ∫ (ω·s)^{−d} dΩ over a convex spherical polygon: the area of its lift to
/// the tangent plane at s. The polygon is fanned into spherical triangles
/// and each is pulled back to its planar chord triangle, where the integrand
/// is analytic and an adaptive degree-5 rule converges fast.
pub(crate) fn integrate_projection_density(
    polygon: &[V3],
    site: V3,
    power: i32,
    tol: f64,
) -> (f64, f64) {
    let mut total = 0.0;
    let mut err = 0.0;
    for k in 1..polygon.len() - 1 {
        let (v, e) = spherical_triangle_integral(polygon[0], polygon[k], polygon[k + 1], site, power, tol);
        total += v;
        err += e;
    }
    (total, err)
}

fn spherical_triangle_integral(
    a: V3,
    b: V3,
    c: V3,
    site: V3,
    power: i32,
    tol: f64,
) -> (f64, f64) {
    // Unit normal of the chord triangle, oriented away from the origin.
    let n = vec3::cross(vec3::sub(b, a), vec3::sub(c, a));
    let n = match vec3::normalize(n) {
        Some(u) => {
            if vec3::dot(u, a) < 0.0 {
                vec3::neg(u)
            } else {
                u
            }
        }
        None => return (0.0, 0.0),
    };
    // dΩ = (n̂·u)/|u|³ dA on the chord plane, so the integrand over the
    // planar triangle is (u·s / |u|)^{-power} (n̂·u)/|u|³.
    let f = |u: V3| -> f64 {
        let r = vec3::norm(u);
        let cosine = vec3::dot(u, site) / r;
        cosine.powi(-power) * vec3::dot(n, u) / (r * r * r)
    };
    adaptive_planar_triangle(&f, a, b, c, tol, 26)
}

/// Degree-5 seven-point rule on a planar triangle.
fn rule7<F: Fn(V3) -> f64>(f: &F, a: V3, b: V3, c: V3) -> f64 {
    let area = 0.5 * vec3::norm(vec3::cross(vec3::sub(b, a), vec3::sub(c, a)));
    let s15 = 15.0_f64.sqrt();
    let w0 = 9.0 / 40.0;
    let b1 = (6.0 - s15) / 21.0;
    let w1 = (155.0 - s15) / 1200.0;
    let b2 = (6.0 + s15) / 21.0;
    let w2 = (155.0 + s15) / 1200.0;
    let at = |l1: f64, l2: f64, l3: f64| -> V3 {
        [
            l1 * a[0] + l2 * b[0] + l3 * c[0],
            l1 * a[1] + l2 * b[1] + l3 * c[1],
            l1 * a[2] + l2 * b[2] + l3 * c[2],
        ]
    };
    let third = 1.0 / 3.0;
    let mut acc = w0 * f(at(third, third, third));
    for (beta, w) in [(b1, w1), (b2, w2)] {
        let alpha = 1.0 - 2.0 * beta;
        acc += w * f(at(alpha, beta, beta));
        acc += w * f(at(beta, alpha, beta));
        acc += w * f(at(beta, beta, alpha));
    }
    acc * area
}

fn adaptive_planar_triangle<F: Fn(V3) -> f64>(
    f: &F,
    a: V3,
    b: V3,
    c: V3,
    tol: f64,
    depth: u32,
) -> (f64, f64) {
    let whole = rule7(f, a, b, c);
    let ab = vec3::scale(vec3::add(a, b), 0.5);
    let bc = vec3::scale(vec3::add(b, c), 0.5);
    let ca = vec3::scale(vec3::add(c, a), 0.5);
    let parts = [
        (a, ab, ca),
        (ab, b, bc),
        (ca, bc, c),
        (ab, bc, ca),
    ];
    let refined: f64 = parts.iter().map(|&(p, q, r)| rule7(f, p, q, r)).sum();
    let delta = (refined - whole).abs();
    if depth == 0 || delta <= tol {
        return (refined, delta.max(f64::EPSILON * refined.abs()));
    }
    let mut total = 0.0;
    let mut err = 0.0;
    for &(p, q, r) in &parts {
        let (v, e) = adaptive_planar_triangle(f, p, q, r, tol / 4.0, depth - 1);
        total += v;
        err += e;
    }
    (total, err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isoperimetric::circumscribe;
    use crate::solids;
    use approx::assert_abs_diff_eq;

    #[test]
    fn cube_projection_identities() {
        let p = circumscribe(&solids::octahedron_vertices()).unwrap();
        let r = projection_report(&p).unwrap();
        assert_eq!(r.voronoi_areas.len(), 6);
        for a in &r.voronoi_areas {
            assert_abs_diff_eq!(*a, 2.0 * PI / 3.0, epsilon = 1e-10);
        }
        assert!(r.face_area_sum_check < 1e-9);
        assert!(r.projected_vertex_match < 1e-9);
        assert!(r.relative_surface_residual() < 1e-9, "sum {} vs F {}", r.preimage_area_sum, r.surface_area);
    }

    #[test]
    fn dodecahedron_projection_identities() {
        let p = circumscribe(&solids::icosahedron_vertices()).unwrap();
        let r = projection_report(&p).unwrap();
        assert_eq!(r.voronoi_areas.len(), 12);
        assert!(r.face_area_sum_check < 1e-9);
        assert!(r.delaunay_area_sum_check() < 1e-9);
        assert!(r.relative_surface_residual() < 1e-9);
    }

    #[test]
    fn tetrahedron_preimage_matches_surface() {
        let p = circumscribe(&solids::tetrahedron_vertices()).unwrap();
        let r = projection_report(&p).unwrap();
        assert!(r.relative_surface_residual() < 1e-9);
        // Four congruent cells, each lifting to a quarter of the surface.
        for a in &r.preimage_areas {
            assert_abs_diff_eq!(*a, p.surface_area / 4.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn octant_lift_matches_the_exact_kite_value() {
        // Integrate sec³ over the octant triangle directly.
        let tri = [
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
        ];
        let sites = tri;
        let mut total = 0.0;
        for s in 0..3 {
            let piece = clip_to_voronoi_cell(&tri, s, &sites);
            assert!(piece.len() >= 3);
            total += integrate_projection_density(&piece, sites[s], 3, 1e-13).0;
        }
        assert_abs_diff_eq!(total, 3.0, epsilon = 1e-10);
    }
}
