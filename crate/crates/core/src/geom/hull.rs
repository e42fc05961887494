//! Incremental convex hull of points on the unit sphere.
//!
//! For a point set on S² whose convex hull contains the origin, the hull
//! facets are exactly the cells of the spherical Delaunay tessellation and
//! the outward unit facet normals are their circumcenters. Orientation tests
//! use unit-normal signed distances with an epsilon band of 1e−12; facets
//! coplanar with the inserted point count as visible, so cospherical
//! degeneracies (more than three points on a circle) come out triangulated.

use super::vec3::{self, V3};
use super::GeomError;

const EPS_STRICT: f64 = 1e-12;
const EPS_COPLANAR: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct HullFacet {
    /// Vertex indices, counterclockwise seen from outside.
    pub v: [usize; 3],
    /// `nbr[i]` is the facet across the edge (v[i], v[(i+1)%3]).
    pub nbr: [usize; 3],
    /// Outward unit normal.
    pub normal: V3,
    /// normal · vertex: distance of the facet plane from the origin.
    pub offset: f64,
}

impl HullFacet {
    /// Position of the directed edge (a, b) in this facet, if present.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        (0..3).find(|&i| self.v[i] == a && self.v[(i + 1) % 3] == b)
    }
}

#[derive(Debug, Clone)]
pub struct ConvexHull {
    pub facets: Vec<HullFacet>,
}

#[derive(Debug, Clone)]
struct WorkFacet {
    v: [usize; 3],
    nbr: [usize; 3],
    normal: V3,
    /// Plane offset along the unit normal (normal · v0).
    d: f64,
    alive: bool,
}

impl WorkFacet {
    fn dist(&self, p: V3) -> f64 {
        vec3::dot(self.normal, p) - self.d
    }

    fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        (0..3).find(|&i| self.v[i] == a && self.v[(i + 1) % 3] == b)
    }
}

fn make_facet(pts: &[V3], a: usize, b: usize, c: usize) -> Option<WorkFacet> {
    let n = vec3::cross(vec3::sub(pts[b], pts[a]), vec3::sub(pts[c], pts[a]));
    let n = vec3::normalize(n)?;
    Some(WorkFacet {
        v: [a, b, c],
        nbr: [usize::MAX; 3],
        normal: n,
        d: vec3::dot(n, pts[a]),
        alive: true,
    })
}

/// Pick four affinely independent points for the initial tetrahedron.
fn initial_tetrahedron(pts: &[V3]) -> Result<[usize; 4], GeomError> {
    let n = pts.len();
    let i0 = 0;
    let mut i1 = 0;
    let mut best = -1.0;
    for j in 1..n {
        let d = vec3::norm(vec3::sub(pts[j], pts[i0]));
        if d > best {
            best = d;
            i1 = j;
        }
    }
    if best < 1e-9 {
        return Err(GeomError::DegenerateRank);
    }
    let axis = vec3::sub(pts[i1], pts[i0]);
    let mut i2 = 0;
    best = -1.0;
    for j in 0..n {
        let d = vec3::norm(vec3::cross(axis, vec3::sub(pts[j], pts[i0])));
        if d > best {
            best = d;
            i2 = j;
        }
    }
    if best < 1e-9 {
        return Err(GeomError::DegenerateRank);
    }
    let nrm = vec3::cross(axis, vec3::sub(pts[i2], pts[i0]));
    let mut i3 = 0;
    best = -1.0;
    for j in 0..n {
        let d = vec3::dot(nrm, vec3::sub(pts[j], pts[i0])).abs();
        if d > best {
            best = d;
            i3 = j;
        }
    }
    let vol = vec3::dot(nrm, vec3::sub(pts[i3], pts[i0])) / vec3::norm(nrm);
    if vol.abs() < 1e-9 {
        return Err(GeomError::DegenerateRank);
    }
    Ok([i0, i1, i2, i3])
}

/// Convex hull of (deduplicated) points on the unit sphere.
pub fn convex_hull_sphere(pts: &[V3]) -> Result<ConvexHull, GeomError> {
    if pts.len() < 4 {
        return Err(GeomError::TooFewPoints {
            needed: 4,
            got: pts.len(),
        });
    }
    let [i0, i1, i2, i3] = initial_tetrahedron(pts)?;
    let centroid = vec3::scale(
        vec3::add(vec3::add(pts[i0], pts[i1]), vec3::add(pts[i2], pts[i3])),
        0.25,
    );

    let mut facets: Vec<WorkFacet> = Vec::new();
    for &(a, b, c) in &[(i0, i1, i2), (i0, i1, i3), (i0, i2, i3), (i1, i2, i3)] {
        let mut f = make_facet(pts, a, b, c).ok_or(GeomError::DegenerateRank)?;
        if f.dist(centroid) > 0.0 {
            f = make_facet(pts, a, c, b).ok_or(GeomError::DegenerateRank)?;
        }
        facets.push(f);
    }
    wire_all_neighbors(&mut facets)?;

    let seeded = [i0, i1, i2, i3];
    for p in 0..pts.len() {
        if seeded.contains(&p) {
            continue;
        }
        insert_point(pts, &mut facets, p)?;
    }

    // Compact to alive facets and validate the final structure.
    let mut remap = vec![usize::MAX; facets.len()];
    let mut out = Vec::new();
    for (i, f) in facets.iter().enumerate() {
        if f.alive {
            remap[i] = out.len();
            out.push(HullFacet {
                v: f.v,
                nbr: f.nbr,
                normal: f.normal,
                offset: f.d,
            });
        }
    }
    for f in &mut out {
        for k in 0..3 {
            let m = remap[f.nbr[k]];
            if m == usize::MAX {
                return Err(GeomError::DegenerateRank);
            }
            f.nbr[k] = m;
        }
    }
    // Every input point must appear on the hull: points of a sphere are in
    // convex position, so a missing one signals a degeneracy we cannot fix.
    let mut used = vec![false; pts.len()];
    for f in &out {
        for &v in &f.v {
            used[v] = true;
        }
    }
    if used.iter().any(|u| !u) {
        return Err(GeomError::DegenerateRank);
    }
    Ok(ConvexHull { facets: out })
}

fn wire_all_neighbors(facets: &mut [WorkFacet]) -> Result<(), GeomError> {
    let n = facets.len();
    for i in 0..n {
        for k in 0..3 {
            let a = facets[i].v[k];
            let b = facets[i].v[(k + 1) % 3];
            let mut found = usize::MAX;
            for (j, g) in facets.iter().enumerate() {
                if j != i && g.edge_index(b, a).is_some() {
                    found = j;
                    break;
                }
            }
            if found == usize::MAX {
                return Err(GeomError::DegenerateRank);
            }
            facets[i].nbr[k] = found;
        }
    }
    Ok(())
}

fn insert_point(pts: &[V3], facets: &mut Vec<WorkFacet>, p: usize) -> Result<(), GeomError> {
    let point = pts[p];
    // Seed from the strictly most-visible facet; grow through anything at
    // least coplanar so cospherical faces get retriangulated.
    let mut seed = usize::MAX;
    let mut best = EPS_STRICT;
    for (i, f) in facets.iter().enumerate() {
        if !f.alive {
            continue;
        }
        let d = f.dist(point);
        if d > best {
            best = d;
            seed = i;
        }
    }
    if seed == usize::MAX {
        // Interior within tolerance: only possible for duplicates, which
        // callers collapse beforehand.
        return Err(GeomError::DegenerateRank);
    }

    let mut visible = vec![false; facets.len()];
    let mut stack = vec![seed];
    visible[seed] = true;
    let mut visible_list = vec![seed];
    while let Some(i) = stack.pop() {
        for k in 0..3 {
            let j = facets[i].nbr[k];
            if !visible[j] && facets[j].alive && facets[j].dist(point) > -EPS_COPLANAR {
                visible[j] = true;
                visible_list.push(j);
                stack.push(j);
            }
        }
    }

    // Horizon: directed edges of visible facets whose neighbor stays.
    let mut next_of: std::collections::HashMap<usize, (usize, usize)> =
        std::collections::HashMap::new();
    let mut horizon_len = 0usize;
    for &i in &visible_list {
        for k in 0..3 {
            let j = facets[i].nbr[k];
            if !visible[j] {
                let a = facets[i].v[k];
                let b = facets[i].v[(k + 1) % 3];
                if next_of.insert(a, (b, j)).is_some() {
                    return Err(GeomError::DegenerateRank);
                }
                horizon_len += 1;
            }
        }
    }
    if horizon_len < 3 {
        return Err(GeomError::DegenerateRank);
    }

    for &i in &visible_list {
        facets[i].alive = false;
    }

    // Walk the horizon cycle and build the cone of new facets.
    let start = *next_of.keys().next().unwrap();
    let mut cycle: Vec<(usize, usize, usize)> = Vec::with_capacity(horizon_len);
    let mut a = start;
    loop {
        let (b, outside) = *next_of
            .get(&a)
            .ok_or(GeomError::DegenerateRank)?;
        cycle.push((a, b, outside));
        a = b;
        if a == start {
            break;
        }
        if cycle.len() > horizon_len {
            return Err(GeomError::DegenerateRank);
        }
    }
    if cycle.len() != horizon_len {
        return Err(GeomError::DegenerateRank);
    }

    let base = facets.len();
    let m = cycle.len();
    for (idx, &(ea, eb, outside)) in cycle.iter().enumerate() {
        let mut f = make_facet(pts, p, ea, eb).ok_or(GeomError::DegenerateRank)?;
        f.nbr[0] = base + (idx + m - 1) % m; // edge (p, ea) ↔ previous cone facet
        f.nbr[1] = outside; //                  edge (ea, eb) ↔ surviving facet
        f.nbr[2] = base + (idx + 1) % m; //     edge (eb, p) ↔ next cone facet
        facets.push(f);
        // Repoint the survivor across the shared edge.
        let k = facets[outside]
            .edge_index(eb, ea)
            .ok_or(GeomError::DegenerateRank)?;
        facets[outside].nbr[k] = base + idx;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> Vec<V3> {
        vec![
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
        ]
    }

    fn check_structure(pts: &[V3], hull: &ConvexHull) {
        // Euler: V - E + F = 2 with E = 3F/2.
        let f = hull.facets.len();
        assert_eq!(f % 2, 0);
        let e = 3 * f / 2;
        assert_eq!(pts.len() as i64 - e as i64 + f as i64, 2);
        for (i, facet) in hull.facets.iter().enumerate() {
            for k in 0..3 {
                let j = facet.nbr[k];
                let a = facet.v[k];
                let b = facet.v[(k + 1) % 3];
                assert!(hull.facets[j].edge_index(b, a).is_some());
                assert_ne!(i, j);
            }
            // No point strictly outside any facet.
            for p in pts {
                assert!(vec3::dot(facet.normal, *p) - facet.offset < 1e-9);
            }
        }
    }

    #[test]
    fn octahedron_hull_has_eight_facets() {
        let pts = octahedron();
        let hull = convex_hull_sphere(&pts).unwrap();
        assert_eq!(hull.facets.len(), 8);
        check_structure(&pts, &hull);
    }

    #[test]
    fn cube_hull_triangulates_square_faces() {
        let s = 1.0 / 3.0_f64.sqrt();
        let mut pts = Vec::new();
        for &x in &[-s, s] {
            for &y in &[-s, s] {
                for &z in &[-s, s] {
                    pts.push([x, y, z]);
                }
            }
        }
        let hull = convex_hull_sphere(&pts).unwrap();
        // 6 squares, each split into 2 triangles.
        assert_eq!(hull.facets.len(), 12);
        check_structure(&pts, &hull);
    }

    #[test]
    fn icosahedron_hull_has_twenty_facets() {
        let pts: Vec<V3> = crate::solids::icosahedron_vertices()
            .points()
            .iter()
            .map(|p| p.as3())
            .collect();
        let hull = convex_hull_sphere(&pts).unwrap();
        assert_eq!(hull.facets.len(), 20);
        check_structure(&pts, &hull);
    }

    #[test]
    fn random_points_yield_valid_hulls() {
        use rand::Rng;
        for trial in 0..30 {
            let mut rng = crate::rngutil::stream_rng(42, trial);
            let n = 4 + (rng.gen::<u64>() % 60) as usize;
            let pts: Vec<V3> = (0..n)
                .map(|_| crate::rngutil::sample_sphere3(&mut rng))
                .collect();
            let hull = convex_hull_sphere(&pts).unwrap();
            check_structure(&pts, &hull);
        }
    }

    #[test]
    fn rank_deficient_input_is_rejected() {
        // Four points on one great circle span only a plane.
        let pts = vec![
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, -1.0, 0.0],
        ];
        assert!(matches!(
            convex_hull_sphere(&pts),
            Err(GeomError::DegenerateRank)
        ));
    }
}
