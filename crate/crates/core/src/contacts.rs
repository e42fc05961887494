//! Contact graphs of spherical codes: edges at the minimum distance, face
//! structure from the spherical embedding, maximal-packing tests, and the
//! two sufficient conditions for irreducibility.
//!
//! "Irreducible" is a rigidity-type property defined externally; only
//! sufficient conditions are implemented here, so a `false` answer means
//! "condition not met", never "reducible".

use crate::bounds;
use crate::geom::vec3::{self, V3};
use crate::geom::{angular_distance, GeomError, SphericalCode};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ContactsError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("face structure unavailable: {0}")]
    NoFaces(String),
    #[error("{0}")]
    Invalid(String),
}

/// Combinatorial contact graph of a code, with the planar face structure of
/// its spherical embedding when the graph is connected and spanning.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContactGraph {
    pub vertices: SphericalCode,
    /// Index pairs (i < j) at the contact distance within tolerance.
    pub edges: Vec<(usize, usize)>,
    pub contact_distance: f64,
    pub tolerance: f64,
    /// Face cycles of the embedding; `None` when the graph is disconnected
    /// and face extraction does not apply.
    pub faces: Option<Vec<Vec<usize>>>,
    /// Shortest and longest edge actually classified as a contact, for
    /// auditing near-misses.
    pub min_edge_length: f64,
    pub max_edge_length: f64,
}

/// Build the contact graph of a code: edges are exactly the pairs whose
/// angular distance is within `tol` of ψ(X).
pub fn build_contact_graph(code: &SphericalCode, tol: f64) -> Result<ContactGraph, ContactsError> {
    if code.len() < 2 {
        return Err(ContactsError::Geom(GeomError::TooFewPoints {
            needed: 2,
            got: code.len(),
        }));
    }
    if tol <= 0.0 {
        return Err(ContactsError::Invalid(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let psi = code.psi().expect("len >= 2 so psi is defined");
    with_distance(code, psi, tol)
}

/// Contact graph at an explicit contact distance (used when a packing is
/// examined at a diameter below its minimum distance).
pub fn with_distance(
    code: &SphericalCode,
    contact_distance: f64,
    tol: f64,
) -> Result<ContactGraph, ContactsError> {
    let n = code.len();
    let mut edges = Vec::new();
    let mut min_edge = f64::INFINITY;
    let mut max_edge = f64::NEG_INFINITY;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = angular_distance(&code.points()[i], &code.points()[j])?;
            if d < contact_distance - tol {
                return Err(ContactsError::Invalid(format!(
                    "pair ({i}, {j}) at distance {d} violates the packing \
                     condition for contact distance {contact_distance}"
                )));
            }
            if (d - contact_distance).abs() <= tol {
                edges.push((i, j));
                min_edge = min_edge.min(d);
                max_edge = max_edge.max(d);
            }
        }
    }
    if edges.is_empty() {
        min_edge = contact_distance;
        max_edge = contact_distance;
    }
    // Planarity of contact graphs on the sphere: e ≤ 3N − 6 for N ≥ 3.
    if n >= 3 {
        assert!(
            edges.len() <= 3 * n - 6,
            "contact graph violates planarity: {} edges on {} vertices",
            edges.len(),
            n
        );
    }
    let faces = if code.dim() == 3 && is_connected_spanning(n, &edges) {
        Some(extract_faces(code, &edges)?)
    } else {
        None
    };
    Ok(ContactGraph {
        vertices: code.clone(),
        edges,
        contact_distance,
        tolerance: tol,
        faces,
        min_edge_length: min_edge,
        max_edge_length: max_edge,
    })
}

fn is_connected_spanning(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Faces of the spherical embedding: neighbors of each vertex are sorted by
/// azimuth in its tangent plane (counterclockwise from outside), and each
/// directed edge is followed by the next edge clockwise around its head,
/// which traces every face exactly once.
fn extract_faces(
    code: &SphericalCode,
    edges: &[(usize, usize)],
) -> Result<Vec<Vec<usize>>, ContactsError> {
    let n = code.len();
    let pts: Vec<V3> = code.points().iter().map(|p| p.as3()).collect();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        nbrs[a].push(b);
        nbrs[b].push(a);
    }
    for v in 0..n {
        let base = pts[v];
        // Reference frame in the tangent plane at v.
        let helper = if base[0].abs() < 0.9 {
            [1.0, 0.0, 0.0]
        } else {
            [0.0, 1.0, 0.0]
        };
        let e1 = vec3::normalize(vec3::tangential(base, helper))
            .ok_or_else(|| ContactsError::Invalid("degenerate tangent frame".into()))?;
        let e2 = vec3::cross(base, e1);
        let mut keyed: Vec<(f64, usize)> = nbrs[v]
            .iter()
            .map(|&w| {
                let t = vec3::tangential(base, pts[w]);
                (vec3::dot(t, e2).atan2(vec3::dot(t, e1)), w)
            })
            .collect();
        keyed.sort_by(|a, b| a.partial_cmp(b).expect("azimuths are finite"));
        nbrs[v] = keyed.into_iter().map(|(_, w)| w).collect();
    }

    let mut used: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    let mut faces = Vec::new();
    for &(a0, b0) in edges {
        for &(s, t) in &[(a0, b0), (b0, a0)] {
            if used.contains(&(s, t)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut u, mut v) = (s, t);
            loop {
                used.insert((u, v));
                face.push(u);
                // Next edge: predecessor of u in the CCW order around v.
                let ring = &nbrs[v];
                let pos = ring
                    .iter()
                    .position(|&w| w == u)
                    .ok_or_else(|| ContactsError::Invalid("broken adjacency".into()))?;
                let w = ring[(pos + ring.len() - 1) % ring.len()];
                u = v;
                v = w;
                if (u, v) == (s, t) {
                    break;
                }
                if face.len() > 2 * edges.len() + 2 {
                    return Err(ContactsError::Invalid("face walk failed to close".into()));
                }
            }
            faces.push(face);
        }
    }
    Ok(faces)
}

/// Number of edges e(X) of the contact graph.
pub fn edge_count(g: &ContactGraph) -> usize {
    g.edges.len()
}

/// Result of the maximal-packing test 2e(X) = Nκ(d).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaximalPackingCheck {
    pub is_maximal: bool,
    /// κ at the contact distance; `None` for the degenerate two-point case.
    pub kappa: Option<u32>,
    /// Set when the test passes for an N outside {2,3,4,6,8,9,12,24,48,60,120},
    /// where maximal packings are known not to exist — a tolerance artifact.
    pub suspicious: bool,
}

const MAXIMAL_N: [usize; 11] = [2, 3, 4, 6, 8, 9, 12, 24, 48, 60, 120];

/// Test whether the packing attains the maximal contact count Nκ(d)/2.
/// The two-point case bypasses κ: a single contact is maximal.
pub fn is_maximal_packing(g: &ContactGraph) -> MaximalPackingCheck {
    let n = g.vertices.len();
    if n == 2 {
        return MaximalPackingCheck {
            is_maximal: g.edges.len() == 1,
            kappa: None,
            suspicious: false,
        };
    }
    match bounds::kappa_extended(g.contact_distance) {
        Some(k) => {
            let is_maximal = 2 * g.edges.len() == n * k as usize;
            MaximalPackingCheck {
                is_maximal,
                kappa: Some(k),
                suspicious: is_maximal && !MAXIMAL_N.contains(&n),
            }
        }
        None => MaximalPackingCheck {
            is_maximal: false,
            kappa: None,
            suspicious: false,
        },
    }
}

/// Sufficient condition: if every face of the contact graph is a triangle or
/// a quadrilateral, the graph is irreducible. `false` means the condition is
/// not met, not that the graph is reducible.
pub fn irreducible_by_faces(g: &ContactGraph) -> Result<bool, ContactsError> {
    let faces = g.faces.as_ref().ok_or_else(|| {
        ContactsError::NoFaces("graph is disconnected; face test not applicable".into())
    })?;
    Ok(faces.iter().all(|f| f.len() == 3 || f.len() == 4))
}

/// Sufficient condition: N > 6 together with e(X) ≥ 3N − 8 forces
/// irreducibility.
pub fn irreducible_by_count(g: &ContactGraph) -> bool {
    let n = g.vertices.len();
    n > 6 && g.edges.len() >= 3 * n - 8
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::UnitVector;
    use crate::solids;

    fn graph_of(code: &SphericalCode) -> ContactGraph {
        build_contact_graph(code, 1e-6).unwrap()
    }

    #[test]
    fn octahedron_graph() {
        let g = graph_of(&solids::octahedron_vertices());
        assert_eq!(edge_count(&g), 12);
        let faces = g.faces.as_ref().unwrap();
        assert_eq!(faces.len(), 8);
        assert!(faces.iter().all(|f| f.len() == 3));
        // V − E + F = 2.
        assert_eq!(6 - 12 + faces.len() as i64, 2);
        assert!(irreducible_by_faces(&g).unwrap());
        assert!(!irreducible_by_count(&g), "N > 6 is required");
        let m = is_maximal_packing(&g);
        assert!(m.is_maximal && !m.suspicious);
    }

    #[test]
    fn icosahedron_graph() {
        let g = graph_of(&solids::icosahedron_vertices());
        assert_eq!(edge_count(&g), 30);
        let faces = g.faces.as_ref().unwrap();
        assert_eq!(faces.len(), 20);
        assert!(irreducible_by_faces(&g).unwrap());
        assert!(irreducible_by_count(&g), "30 >= 3*12 - 8");
        let m = is_maximal_packing(&g);
        assert!(m.is_maximal, "30 = 12·5/2");
        assert_eq!(m.kappa, Some(5));
    }

    #[test]
    fn cube_graph_is_not_edge_maximal() {
        let g = graph_of(&solids::cube_vertices());
        assert_eq!(edge_count(&g), 12);
        let faces = g.faces.as_ref().unwrap();
        assert!(faces.iter().all(|f| f.len() == 4));
        assert!(irreducible_by_faces(&g).unwrap());
        let m = is_maximal_packing(&g);
        // κ(arccos 1/3) = 4, so the maximal count would be 16.
        assert!(!m.is_maximal);
        assert_eq!(m.kappa, Some(4));
    }

    #[test]
    fn tetrahedron_is_maximal_beyond_ninety_degrees() {
        let g = graph_of(&solids::tetrahedron_vertices());
        assert_eq!(edge_count(&g), 6);
        let m = is_maximal_packing(&g);
        assert!(m.is_maximal, "6 = 4·3/2 at the tetrahedral distance");
        assert_eq!(m.kappa, Some(3));
    }

    #[test]
    fn dodecahedron_fails_the_face_condition() {
        let g = graph_of(&solids::dodecahedron_vertices());
        assert_eq!(edge_count(&g), 30);
        let faces = g.faces.as_ref().unwrap();
        assert_eq!(faces.len(), 12);
        assert!(faces.iter().all(|f| f.len() == 5));
        assert!(!irreducible_by_faces(&g).unwrap());
    }

    #[test]
    fn icosahedron_minus_two_adjacent_vertices() {
        let full = solids::icosahedron_vertices();
        let psi = full.psi().unwrap();
        // Find an adjacent pair and drop it.
        let pts = full.points();
        let mut drop = None;
        'outer: for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                if (angular_distance(&pts[i], &pts[j]).unwrap() - psi).abs() < 1e-9 {
                    drop = Some((i, j));
                    break 'outer;
                }
            }
        }
        let (i, j) = drop.unwrap();
        let rest: Vec<UnitVector> = pts
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i && *k != j)
            .map(|(_, p)| p.clone())
            .collect();
        let code = SphericalCode::new(rest).unwrap();
        let g = graph_of(&code);
        assert_eq!(edge_count(&g), 21);
        // 21 < 3·10 − 8 = 22: the count condition does not apply here.
        assert!(!irreducible_by_count(&g));
    }

    #[test]
    fn two_points_single_contact() {
        let code =
            SphericalCode::from_rows(&[vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 0.0]]).unwrap();
        let g = graph_of(&code);
        assert_eq!(edge_count(&g), 1);
        let m = is_maximal_packing(&g);
        assert!(m.is_maximal);
        assert_eq!(m.kappa, None);
    }

    #[test]
    fn disconnected_graph_skips_faces() {
        // Two tight pairs on opposite sides: contacts only within each pair.
        let code = SphericalCode::from_rows(&[
            vec![1.0, 0.0, 0.0],
            vec![0.999_999_5, 1e-3, 0.0],
            vec![-1.0, 0.0, 0.0],
            vec![-0.999_999_5, 0.0, 1e-3],
        ])
        .unwrap();
        let g = build_contact_graph(&code, 1e-6).unwrap();
        assert!(g.faces.is_none());
        assert!(matches!(
            irreducible_by_faces(&g),
            Err(ContactsError::NoFaces(_))
        ));
    }

    #[test]
    fn face_lengths_sum_to_twice_the_edges() {
        for code in [
            solids::octahedron_vertices(),
            solids::icosahedron_vertices(),
            solids::dodecahedron_vertices(),
            solids::cube_vertices(),
        ] {
            let g = graph_of(&code);
            let total: usize = g.faces.as_ref().unwrap().iter().map(|f| f.len()).sum();
            assert_eq!(total, 2 * g.edges.len());
        }
    }
}
