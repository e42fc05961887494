//! Exact vertex directions for the Platonic solids, generated
//! programmatically rather than from decimal tables.
//!
//! When a named polyhedron is circumscribed about the unit sphere, its
//! tangency points are the vertex directions of its dual: a cube touches at
//! octahedron vertices, a dodecahedron at icosahedron vertices, and so on.

use crate::geom::{SphericalCode, UnitVector};

fn code(rows: Vec<[f64; 3]>) -> SphericalCode {
    let pts = rows
        .into_iter()
        .map(|r| UnitVector::from3(r).expect("generator rows are nonzero"))
        .collect();
    SphericalCode::new(pts).expect("generator sets are valid")
}

/// Four tetrahedral directions (alternating cube corners).
pub fn tetrahedron_vertices() -> SphericalCode {
    code(vec![
        [1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0],
        [-1.0, 1.0, -1.0],
        [-1.0, -1.0, 1.0],
    ])
}

/// The six coordinate directions.
pub fn octahedron_vertices() -> SphericalCode {
    code(vec![
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ])
}

/// The eight cube corners.
pub fn cube_vertices() -> SphericalCode {
    let mut rows = Vec::with_capacity(8);
    for &x in &[-1.0, 1.0] {
        for &y in &[-1.0, 1.0] {
            for &z in &[-1.0, 1.0] {
                rows.push([x, y, z]);
            }
        }
    }
    code(rows)
}

/// The twelve icosahedron vertices: cyclic permutations of (0, ±1, ±φ).
pub fn icosahedron_vertices() -> SphericalCode {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let mut rows = Vec::with_capacity(12);
    for &a in &[-1.0, 1.0] {
        for &b in &[-phi, phi] {
            rows.push([0.0, a, b]);
            rows.push([a, b, 0.0]);
            rows.push([b, 0.0, a]);
        }
    }
    code(rows)
}

/// The twenty dodecahedron vertices: (±1, ±1, ±1) together with cyclic
/// permutations of (0, ±1/φ, ±φ).
pub fn dodecahedron_vertices() -> SphericalCode {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let inv = 1.0 / phi;
    let mut rows = Vec::with_capacity(20);
    for &x in &[-1.0, 1.0] {
        for &y in &[-1.0, 1.0] {
            for &z in &[-1.0, 1.0] {
                rows.push([x, y, z]);
            }
        }
    }
    for &a in &[-inv, inv] {
        for &b in &[-phi, phi] {
            rows.push([0.0, a, b]);
            rows.push([a, b, 0.0]);
            rows.push([b, 0.0, a]);
        }
    }
    code(rows)
}

/// Tangency points of a named Platonic solid circumscribed about the unit
/// sphere: the vertex directions of its dual.
pub fn tangency_points(name: &str) -> Option<SphericalCode> {
    match name {
        "tetrahedron" => Some(tetrahedron_vertices()),
        "cube" => Some(octahedron_vertices()),
        "octahedron" => Some(cube_vertices()),
        "dodecahedron" => Some(icosahedron_vertices()),
        "icosahedron" => Some(dodecahedron_vertices()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::min_pairwise;
    use approx::assert_abs_diff_eq;

    #[test]
    fn vertex_counts() {
        assert_eq!(tetrahedron_vertices().len(), 4);
        assert_eq!(octahedron_vertices().len(), 6);
        assert_eq!(cube_vertices().len(), 8);
        assert_eq!(icosahedron_vertices().len(), 12);
        assert_eq!(dodecahedron_vertices().len(), 20);
    }

    #[test]
    fn tetrahedron_minimum_distance() {
        assert_abs_diff_eq!(
            min_pairwise(tetrahedron_vertices().points()).unwrap(),
            (-1.0_f64 / 3.0).acos(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn dodecahedron_vertices_share_a_norm() {
        // (±1,±1,±1) and (0, ±1/φ, ±φ) both have squared norm 3.
        for p in dodecahedron_vertices().points() {
            let n: f64 = p.coords().iter().map(|x| x * x).sum();
            assert_abs_diff_eq!(n, 1.0, epsilon = 1e-14);
        }
    }
}
