//! File formats: point sets, contact-graph exports, and polyhedron exports.
//!
//! All formats are JSON text documents. Point coordinates are normalized on
//! load and zero rows are rejected.

use crate::contacts::ContactGraph;
use crate::geom::{GeomError, SphericalCode, UnitVector};
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("I/O error on {path}: {source}")]
    File {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Point-set document: `{"dimension": d, "points": [[..], ..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointSetFile {
    pub dimension: usize,
    pub points: Vec<Vec<f64>>,
}

impl PointSetFile {
    pub fn from_code(code: &SphericalCode) -> Self {
        PointSetFile {
            dimension: code.dim(),
            points: code.points().iter().map(|p| p.coords().to_vec()).collect(),
        }
    }

    pub fn into_code(self) -> Result<SphericalCode, IoError> {
        let points = self
            .points
            .into_iter()
            .map(|row| {
                if row.len() != self.dimension {
                    return Err(GeomError::DimensionMismatch {
                        expected: self.dimension,
                        got: row.len(),
                    });
                }
                UnitVector::new(row)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SphericalCode::new(points)?)
    }
}

pub fn load_point_set(path: &Path) -> Result<SphericalCode, IoError> {
    let text = fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })?;
    let file: PointSetFile = serde_json::from_str(&text).map_err(|e| IoError::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    file.into_code()
}

pub fn save_point_set(path: &Path, code: &SphericalCode) -> Result<(), IoError> {
    let doc = PointSetFile::from_code(code);
    let text = serde_json::to_string_pretty(&doc).expect("point sets serialize");
    fs::write(path, text + "\n").map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })
}

/// Contact-graph export document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphExport {
    pub vertices: Vec<Vec<f64>>,
    pub edges: Vec<(usize, usize)>,
    pub faces: Option<Vec<Vec<usize>>>,
    pub contact_distance: f64,
    pub tolerance: f64,
    pub min_edge_length: f64,
    pub max_edge_length: f64,
}

impl GraphExport {
    pub fn from_graph(g: &ContactGraph) -> Self {
        GraphExport {
            vertices: g
                .vertices
                .points()
                .iter()
                .map(|p| p.coords().to_vec())
                .collect(),
            edges: g.edges.clone(),
            faces: g.faces.clone(),
            contact_distance: g.contact_distance,
            tolerance: g.tolerance,
            min_edge_length: g.min_edge_length,
            max_edge_length: g.max_edge_length,
        }
    }
}

pub fn save_graph(path: &Path, g: &ContactGraph) -> Result<(), IoError> {
    let text =
        serde_json::to_string_pretty(&GraphExport::from_graph(g)).expect("graphs serialize");
    fs::write(path, text + "\n").map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })
}

/// Polyhedron export document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyhedronExport {
    pub tangency_points: Vec<Vec<f64>>,
    pub vertices: Vec<Vec<f64>>,
    /// Vertex index cycles, one per face, in tangency-point order.
    pub faces: Vec<Vec<usize>>,
    pub surface_area: f64,
    pub volume: f64,
    pub iq: f64,
}

pub fn save_polyhedron(path: &Path, doc: &PolyhedronExport) -> Result<(), IoError> {
    let text = serde_json::to_string_pretty(doc).expect("polyhedra serialize");
    fs::write(path, text + "\n").map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_set_roundtrip_normalizes() {
        let dir = std::env::temp_dir().join("sphaerica-io-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("points.json");
        fs::write(
            &path,
            r#"{"dimension": 3, "points": [[2.0, 0.0, 0.0], [0.0, 0.0, 5.0]]}"#,
        )
        .unwrap();
        let code = load_point_set(&path).unwrap();
        assert_eq!(code.len(), 2);
        assert!((code.points()[0].coords()[0] - 1.0).abs() < 1e-15);
        save_point_set(&path, &code).unwrap();
        let again = load_point_set(&path).unwrap();
        assert_eq!(code, again);
    }

    #[test]
    fn zero_rows_are_rejected() {
        let dir = std::env::temp_dir().join("sphaerica-io-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("zero.json");
        fs::write(
            &path,
            r#"{"dimension": 3, "points": [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]]}"#,
        )
        .unwrap();
        assert!(load_point_set(&path).is_err());
    }
}
