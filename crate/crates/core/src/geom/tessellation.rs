//! Spherical Voronoi/Delaunay duality via the convex hull.
//!
//! The Delaunay cells of a point set on S² are the facets of its convex hull
//! (valid whenever the hull contains the origin, i.e. the points do not fit
//! in a closed hemisphere), and the circumcenter of each cell is the outward
//! unit facet normal. The Voronoi cell of a site is the spherical polygon of
//! the circumcenters of its incident Delaunay cells, walked counterclockwise.

use super::hull::{convex_hull_sphere, ConvexHull};
use super::polygon::spherical_polygon_area;
use super::vec3::V3;
use super::{angular_distance, GeomError, SphericalCode, UnitVector};

/// Voronoi/Delaunay tessellation of a spherical code on S².
#[derive(Debug, Clone)]
pub struct SphericalTessellation {
    sites: SphericalCode,
    voronoi_cells: Vec<Vec<UnitVector>>,
    delaunay_cells: Vec<[usize; 3]>,
    circumcenters: Vec<UnitVector>,
    site_cycles: Vec<Vec<usize>>,
    merged_duplicates: usize,
    hull: ConvexHull,
}

impl SphericalTessellation {
    /// The sites after duplicate collapsing, in input order.
    pub fn sites(&self) -> &SphericalCode {
        &self.sites
    }

    /// Voronoi cell vertex cycles (counterclockwise around each site).
    pub fn voronoi_cells(&self) -> &[Vec<UnitVector>] {
        &self.voronoi_cells
    }

    /// Delaunay cells as index triples into the sites, counterclockwise from
    /// outside.
    pub fn delaunay_cells(&self) -> &[[usize; 3]] {
        &self.delaunay_cells
    }

    /// One circumcenter per Delaunay cell.
    pub fn circumcenters(&self) -> &[UnitVector] {
        &self.circumcenters
    }

    /// For each site, the incident Delaunay cell indices in counterclockwise
    /// order; the Voronoi cell is the circumcenters of this cycle.
    pub fn site_cell_cycles(&self) -> &[Vec<usize>] {
        &self.site_cycles
    }

    /// Number of input points collapsed as duplicates (within 1e−10).
    pub fn merged_duplicates(&self) -> usize {
        self.merged_duplicates
    }

    pub(crate) fn hull(&self) -> &ConvexHull {
        &self.hull
    }

    pub fn delaunay_triangle(&self, cell: usize) -> [&UnitVector; 3] {
        let [a, b, c] = self.delaunay_cells[cell];
        [
            &self.sites.points()[a],
            &self.sites.points()[b],
            &self.sites.points()[c],
        ]
    }

    pub fn delaunay_areas(&self) -> Result<Vec<f64>, GeomError> {
        self.delaunay_cells
            .iter()
            .map(|&[a, b, c]| {
                spherical_polygon_area(&[
                    self.sites.points()[a].clone(),
                    self.sites.points()[b].clone(),
                    self.sites.points()[c].clone(),
                ])
            })
            .collect()
    }

    pub fn voronoi_areas(&self) -> Result<Vec<f64>, GeomError> {
        self.voronoi_cells
            .iter()
            .map(|cell| spherical_polygon_area(cell))
            .collect()
    }

    /// Angular circumradius of a Delaunay cell.
    pub fn circumradius(&self, cell: usize) -> f64 {
        let [a, _, _] = self.delaunay_cells[cell];
        angular_distance(&self.circumcenters[cell], &self.sites.points()[a])
            .expect("dimensions agree by construction")
    }
}

/// Build the Voronoi/Delaunay tessellation of a code on S².
///
/// Duplicate points within 1e−10 are collapsed (the count is reported on the
/// result). Errors: fewer than four distinct points, rank-deficient input,
/// or all points within a closed hemisphere.
pub fn tessellate(code: &SphericalCode) -> Result<SphericalTessellation, GeomError> {
    if code.dim() != 3 {
        return Err(GeomError::DimensionMismatch {
            expected: 3,
            got: code.dim(),
        });
    }
    // Collapse duplicates before hull construction.
    let mut kept: Vec<UnitVector> = Vec::with_capacity(code.len());
    let mut merged = 0usize;
    for p in code.points() {
        let dup = kept
            .iter()
            .any(|q| angular_distance(p, q).unwrap_or(0.0) < 1e-10);
        if dup {
            merged += 1;
        } else {
            kept.push(p.clone());
        }
    }
    if kept.len() < 4 {
        return Err(GeomError::TooFewPoints {
            needed: 4,
            got: kept.len(),
        });
    }
    let pts: Vec<V3> = kept.iter().map(|p| p.as3()).collect();
    let hull = convex_hull_sphere(&pts)?;
    debug_assert!(hull.facets.iter().enumerate().all(|(i, f)| {
        (0..3).all(|k| {
            let j = f.nbr[k];
            j != i && hull.facets[j].edge_index(f.v[(k + 1) % 3], f.v[k]).is_some()
        })
    }));

    // The origin must be strictly inside the hull for bounded Voronoi cells.
    if hull.facets.iter().any(|f| f.offset <= 1e-12) {
        return Err(GeomError::Hemispherical);
    }

    let delaunay_cells: Vec<[usize; 3]> = hull.facets.iter().map(|f| f.v).collect();
    let circumcenters: Vec<UnitVector> = hull
        .facets
        .iter()
        .map(|f| UnitVector::from3(f.normal))
        .collect::<Result<_, _>>()?;

    // Walk the facets around each site: rotate the facet so the site comes
    // first, (s, a, b); the counterclockwise successor is the neighbor across
    // the edge (b, s).
    let mut incident: Vec<usize> = vec![usize::MAX; kept.len()];
    for (fi, f) in hull.facets.iter().enumerate() {
        for &v in &f.v {
            incident[v] = fi;
        }
    }
    let mut site_cycles: Vec<Vec<usize>> = Vec::with_capacity(kept.len());
    for s in 0..kept.len() {
        let start = incident[s];
        let mut cycle = Vec::new();
        let mut fi = start;
        loop {
            cycle.push(fi);
            let f = &hull.facets[fi];
            let k = f
                .v
                .iter()
                .position(|&v| v == s)
                .ok_or(GeomError::DegenerateRank)?;
            // Edge (v[k+2], v[k]) = (b, s) has index (k+2) % 3.
            fi = f.nbr[(k + 2) % 3];
            if fi == start {
                break;
            }
            if cycle.len() > hull.facets.len() {
                return Err(GeomError::DegenerateRank);
            }
        }
        site_cycles.push(cycle);
    }

    // Voronoi polygons: circumcenters along each cycle, with consecutive
    // duplicates (cospherical cells sharing a circumcircle) collapsed.
    let mut voronoi_cells = Vec::with_capacity(kept.len());
    for cycle in &site_cycles {
        let mut poly: Vec<UnitVector> = Vec::with_capacity(cycle.len());
        for &fi in cycle {
            let c = &circumcenters[fi];
            if let Some(last) = poly.last() {
                if angular_distance(last, c)? < 1e-10 {
                    continue;
                }
            }
            poly.push(c.clone());
        }
        while poly.len() > 1
            && angular_distance(&poly[0], poly.last().unwrap())? < 1e-10
        {
            poly.pop();
        }
        if poly.len() < 3 {
            return Err(GeomError::DegeneratePolygon(
                "a Voronoi cell degenerated to fewer than 3 vertices".into(),
            ));
        }
        voronoi_cells.push(poly);
    }

    Ok(SphericalTessellation {
        sites: SphericalCode::new(kept)?,
        voronoi_cells,
        delaunay_cells,
        circumcenters,
        site_cycles,
        merged_duplicates: merged,
        hull,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn octahedron_tessellation() {
        let code = crate::solids::octahedron_vertices();
        let t = tessellate(&code).unwrap();
        assert_eq!(t.delaunay_cells().len(), 8);
        for a in t.delaunay_areas().unwrap() {
            assert_abs_diff_eq!(a, PI / 2.0, epsilon = 1e-12);
        }
        assert_eq!(t.voronoi_cells().len(), 6);
        for cell in t.voronoi_cells() {
            assert_eq!(cell.len(), 4);
        }
        for a in t.voronoi_areas().unwrap() {
            assert_abs_diff_eq!(a, 2.0 * PI / 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn icosahedron_tessellation() {
        let code = crate::solids::icosahedron_vertices();
        let t = tessellate(&code).unwrap();
        assert_eq!(t.delaunay_cells().len(), 20);
        assert_eq!(t.voronoi_cells().len(), 12);
        for cell in t.voronoi_cells() {
            assert_eq!(cell.len(), 5, "icosahedral Voronoi cells are pentagons");
        }
        for a in t.delaunay_areas().unwrap() {
            assert_abs_diff_eq!(a, PI / 5.0, epsilon = 1e-12);
        }
        let vor_sum: f64 = t.voronoi_areas().unwrap().iter().sum();
        assert_abs_diff_eq!(vor_sum, 4.0 * PI, epsilon = 1e-9);
    }

    #[test]
    fn cube_sites_collapse_cospherical_voronoi_vertices() {
        let code = crate::solids::cube_vertices();
        let t = tessellate(&code).unwrap();
        // Square hull faces triangulated: 12 Delaunay cells.
        assert_eq!(t.delaunay_cells().len(), 12);
        // But each Voronoi cell is still a spherical triangle.
        for cell in t.voronoi_cells() {
            assert_eq!(cell.len(), 3);
        }
        let vor_sum: f64 = t.voronoi_areas().unwrap().iter().sum();
        let del_sum: f64 = t.delaunay_areas().unwrap().iter().sum();
        assert_abs_diff_eq!(vor_sum, 4.0 * PI, epsilon = 1e-9);
        assert_abs_diff_eq!(del_sum, 4.0 * PI, epsilon = 1e-9);
    }

    #[test]
    fn duplicates_are_collapsed_and_reported() {
        let mut pts = crate::solids::octahedron_vertices().points().to_vec();
        pts.push(pts[0].clone());
        let code = SphericalCode::new(pts).unwrap();
        let t = tessellate(&code).unwrap();
        assert_eq!(t.merged_duplicates(), 1);
        assert_eq!(t.sites().len(), 6);
    }

    #[test]
    fn hemispherical_input_is_rejected() {
        let rows = vec![
            vec![0.0, 0.0, 1.0],
            vec![0.9, 0.0, 0.4],
            vec![-0.9, 0.0, 0.4],
            vec![0.0, 0.9, 0.4],
            vec![0.0, -0.9, 0.4],
        ];
        let code = SphericalCode::from_rows(&rows).unwrap();
        assert!(matches!(tessellate(&code), Err(GeomError::Hemispherical)));
    }

    #[test]
    fn too_few_points_is_rejected() {
        let code = crate::solids::octahedron_vertices();
        let three = SphericalCode::new(code.points()[..3].to_vec()).unwrap();
        assert!(matches!(
            tessellate(&three),
            Err(GeomError::TooFewPoints { .. })
        ));
    }

    #[test]
    fn circumcenters_are_equidistant_from_cell_vertices() {
        let code = crate::solids::icosahedron_vertices();
        let t = tessellate(&code).unwrap();
        for (ci, cell) in t.delaunay_cells().iter().enumerate() {
            let q = &t.circumcenters()[ci];
            let r0 = angular_distance(q, &t.sites().points()[cell[0]]).unwrap();
            for &v in &cell[1..] {
                let r = angular_distance(q, &t.sites().points()[v]).unwrap();
                assert_abs_diff_eq!(r, r0, epsilon = 1e-9);
            }
        }
    }
}
