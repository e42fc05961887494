//! Polyhedra circumscribed about the unit sphere and their isoperimetric
//! quotients.
//!
//! A circumscribed polyhedron is the intersection of the halfspaces
//! {p : p·x_i ≤ 1} over a set of tangency points x_i on the sphere. In
//! dimension 3 it is built exactly through the polar dual of the convex hull
//! of the tangency points: every hull facet with outward unit normal m and
//! plane offset h contributes the polyhedron vertex m/h, and the face
//! touching the sphere at x_i is the cycle of those vertices around x_i.
//! Since every face lies at height 1 over the origin, V = F/3 holds
//! identically; the volume is nevertheless recomputed independently by a
//! divergence-theorem sum over the actual vertex coordinates and the
//! identity is verified.

mod highdim;
mod projection;
mod rho;

pub use highdim::{
    circumscribe_monte_carlo, conjectured_iq_report, omega_sphere, rho_d, upper_bound_vertices,
    ConjectureReport, McEstimate, McPolyhedron,
};
pub use projection::{projection_report, ProjectionReport};
pub use rho::{dual_goldberg_bound, rho};

use crate::geom::vec3::{self, V3};
use crate::geom::{tessellate, GeomError, SphericalCode, SphericalTessellation};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IsoError {
    #[error("halfspace intersection is unbounded: tangency points lie in a closed hemisphere")]
    Unbounded,
    #[error(transparent)]
    Geom(GeomError),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("Monte Carlo estimation failed: {0}")]
    MonteCarlo(String),
}

impl From<GeomError> for IsoError {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::Hemispherical => IsoError::Unbounded,
            other => IsoError::Geom(other),
        }
    }
}

/// A face of a circumscribed polyhedron: the tangency point it touches the
/// sphere at, and its vertex cycle (counterclockwise seen from outside).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Face {
    pub tangency: usize,
    pub vertex_ids: Vec<usize>,
    pub area: f64,
}

/// Convex polyhedron tangent to the unit sphere at every face.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircumscribedPolyhedron {
    pub tangency_points: SphericalCode,
    pub vertices: Vec<V3>,
    pub faces: Vec<Face>,
    pub surface_area: f64,
    pub volume: f64,
    pub dimension: usize,
    #[serde(skip)]
    pub(crate) tessellation: Option<SphericalTessellation>,
}

impl CircumscribedPolyhedron {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.faces.iter().map(|f| f.vertex_ids.len()).sum::<usize>() / 2
    }

    /// Isoperimetric quotient 36π V²/F³, in (0, 1) by the isoperimetric
    /// inequality. For circumscribed bodies this equals 4π/F via V = F/3;
    /// both routes are evaluated and must agree.
    pub fn iq(&self) -> f64 {
        let via_volume = 36.0 * PI * self.volume * self.volume / self.surface_area.powi(3);
        let via_area = 4.0 * PI / self.surface_area;
        debug_assert!(
            (via_volume - via_area).abs() <= 1e-9 * via_area,
            "iq routes disagree: {via_volume} vs {via_area}"
        );
        via_volume
    }

    /// Relative residual of the identity V = F/3.
    pub fn volume_identity_residual(&self) -> f64 {
        (self.volume - self.surface_area / 3.0).abs() / self.volume
    }

    pub(crate) fn tessellation(&self) -> &SphericalTessellation {
        self.tessellation
            .as_ref()
            .expect("built by circumscribe")
    }
}

/// Intersect the tangent halfspaces {p·x_i ≤ 1} of a code on S².
///
/// Errors when the intersection is unbounded (all points in a closed
/// hemisphere) or the code is rank-deficient. Cospherical degeneracies are
/// handled by merging coincident dual vertices, so e.g. the six coordinate
/// directions yield a combinatorial cube with 8 vertices, not 12.
pub fn circumscribe(code: &SphericalCode) -> Result<CircumscribedPolyhedron, IsoError> {
    if code.dim() != 3 {
        return Err(IsoError::Domain(format!(
            "exact circumscription needs dimension 3, got {} (use the Monte Carlo constructor)",
            code.dim()
        )));
    }
    let tess = tessellate(code)?;
    let hull = tess.hull();

    // Dual vertex of each hull facet; facets sharing a plane (cospherical
    // sites) give the same dual point and are merged.
    let raw: Vec<V3> = hull
        .facets
        .iter()
        .map(|f| vec3::scale(f.normal, 1.0 / f.offset))
        .collect();
    let mut canon: Vec<usize> = (0..raw.len()).collect();
    let mut vertices: Vec<V3> = Vec::new();
    let mut cluster: Vec<Vec<usize>> = Vec::new();
    for (i, p) in raw.iter().enumerate() {
        let found = vertices
            .iter()
            .position(|q| vec3::norm(vec3::sub(*p, *q)) < 1e-9 * (1.0 + vec3::norm(*p)));
        match found {
            Some(k) => {
                canon[i] = k;
                cluster[k].push(i);
            }
            None => {
                canon[i] = vertices.len();
                cluster.push(vec![i]);
                vertices.push(*p);
            }
        }
    }
    // Average each cluster for symmetric exactness.
    for (k, members) in cluster.iter().enumerate() {
        if members.len() > 1 {
            let mut acc = [0.0; 3];
            for &i in members {
                acc = vec3::add(acc, raw[i]);
            }
            vertices[k] = vec3::scale(acc, 1.0 / members.len() as f64);
        }
    }

    let sites = tess.sites();
    let mut faces = Vec::with_capacity(sites.len());
    let mut surface = 0.0;
    let mut volume6 = 0.0;
    for (s, cycle) in tess.site_cell_cycles().iter().enumerate() {
        let mut ids: Vec<usize> = Vec::with_capacity(cycle.len());
        for &fi in cycle {
            let v = canon[fi];
            if ids.last() == Some(&v) {
                continue;
            }
            ids.push(v);
        }
        while ids.len() > 1 && ids.first() == ids.last() {
            ids.pop();
        }
        if ids.len() < 3 {
            return Err(IsoError::Geom(GeomError::DegeneratePolygon(
                "a polyhedron face degenerated to fewer than 3 vertices".into(),
            )));
        }
        let x = sites.points()[s].as3();
        // Planar shoelace about the tangency point (the face normal is x).
        let mut area2 = 0.0;
        for k in 0..ids.len() {
            let a = vec3::sub(vertices[ids[k]], x);
            let b = vec3::sub(vertices[ids[(k + 1) % ids.len()]], x);
            area2 += vec3::dot(vec3::cross(a, b), x);
        }
        let area = 0.5 * area2;
        if area <= 0.0 {
            return Err(IsoError::Geom(GeomError::DegeneratePolygon(
                "face with non-positive area".into(),
            )));
        }
        surface += area;
        // Independent volume route: signed tetrahedra from the origin over
        // a fan of the actual vertex coordinates.
        let p0 = vertices[ids[0]];
        for k in 1..ids.len() - 1 {
            let p1 = vertices[ids[k]];
            let p2 = vertices[ids[k + 1]];
            volume6 += vec3::dot(p0, vec3::cross(p1, p2));
        }
        faces.push(Face {
            tangency: s,
            vertex_ids: ids,
            area,
        });
    }
    let volume = volume6 / 6.0;

    // Tangency at height 1 forces V = F/3; a violation means a geometry bug.
    let residual = (volume - surface / 3.0).abs() / volume;
    if residual > 1e-10 {
        return Err(IsoError::Domain(format!(
            "volume identity violated: relative residual {residual}"
        )));
    }
    for v in &vertices {
        debug_assert!(vec3::norm(*v) >= 1.0 - 1e-12);
    }

    Ok(CircumscribedPolyhedron {
        tangency_points: sites.clone(),
        vertices,
        faces,
        surface_area: surface,
        volume,
        dimension: 3,
        tessellation: Some(tess),
    })
}

/// Diagnostic for the Lindelöf–Minkowski necessary condition on
/// isoperimetric extremality: the deviation of each face's centroid from its
/// tangency point, maximized over faces. Zero only when the sphere touches
/// every face at its centroid.
pub fn centroid_tangency_deviation(p: &CircumscribedPolyhedron) -> f64 {
    let mut worst = 0.0_f64;
    for face in &p.faces {
        let x = p.tangency_points.points()[face.tangency].as3();
        // Area-weighted centroid of the face polygon.
        let mut acc = [0.0; 3];
        let mut total = 0.0;
        let p0 = p.vertices[face.vertex_ids[0]];
        for k in 1..face.vertex_ids.len() - 1 {
            let p1 = p.vertices[face.vertex_ids[k]];
            let p2 = p.vertices[face.vertex_ids[k + 1]];
            let a = 0.5
                * vec3::dot(
                    vec3::cross(vec3::sub(p1, p0), vec3::sub(p2, p0)),
                    x,
                );
            let c = vec3::scale(vec3::add(vec3::add(p0, p1), p2), 1.0 / 3.0);
            acc = vec3::add(acc, vec3::scale(c, a));
            total += a;
        }
        let centroid = vec3::scale(acc, 1.0 / total);
        worst = worst.max(vec3::norm(vec3::sub(centroid, x)));
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solids;
    use approx::assert_abs_diff_eq;

    #[test]
    fn octahedron_directions_give_the_unit_cube_scaled_by_two() {
        let p = circumscribe(&solids::octahedron_vertices()).unwrap();
        assert_eq!(p.face_count(), 6);
        assert_eq!(p.vertex_count(), 8);
        assert_abs_diff_eq!(p.surface_area, 24.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.volume, 8.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.iq(), PI / 6.0, epsilon = 1e-13);
        assert!(p.volume_identity_residual() < 1e-13);
    }

    #[test]
    fn tetrahedral_directions_give_the_regular_tetrahedron() {
        let p = circumscribe(&solids::tetrahedron_vertices()).unwrap();
        assert_eq!(p.face_count(), 4);
        assert_eq!(p.vertex_count(), 4);
        // Insphere radius 1 means edge 2√6 and surface 24√3.
        assert_abs_diff_eq!(p.surface_area, 24.0 * 3.0_f64.sqrt(), epsilon = 1e-10);
        assert_abs_diff_eq!(p.iq(), PI / (6.0 * 3.0_f64.sqrt()), epsilon = 1e-12);
        assert!(centroid_tangency_deviation(&p) < 1e-10);
    }

    #[test]
    fn platonic_iq_values() {
        let cases: [(&str, f64); 5] = [
            ("tetrahedron", 0.302),
            ("cube", 0.524),
            ("octahedron", 0.605),
            ("dodecahedron", 0.755),
            ("icosahedron", 0.829),
        ];
        for (name, expected) in cases {
            let pts = solids::tangency_points(name).unwrap();
            let p = circumscribe(&pts).unwrap();
            assert_abs_diff_eq!(p.iq(), expected, epsilon = 1e-3);
            assert!(p.volume_identity_residual() < 1e-12);
        }
    }

    #[test]
    fn hemispherical_tangency_points_are_unbounded() {
        let rows = vec![
            vec![0.0, 0.0, 1.0],
            vec![0.8, 0.0, 0.6],
            vec![-0.8, 0.0, 0.6],
            vec![0.0, 0.8, 0.6],
            vec![0.0, -0.8, 0.6],
        ];
        let code = SphericalCode::from_rows(&rows).unwrap();
        assert!(matches!(circumscribe(&code), Err(IsoError::Unbounded)));
    }

    #[test]
    fn dual_counts_satisfy_euler() {
        for name in ["tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"] {
            let p = circumscribe(&solids::tangency_points(name).unwrap()).unwrap();
            let v = p.vertex_count() as i64;
            let e = p.edge_count() as i64;
            let f = p.face_count() as i64;
            assert_eq!(v - e + f, 2, "{name}");
        }
    }
}
