//! Closed-form and quadrature-based bounds for packings, coverings, and
//! isoperimetric quotients: the Fejes Tóth packing/covering/code bounds, the
//! Coxeter–Böröczky simplex-density bound, the Goldberg–Fejes Tóth
//! inequality, the cap kissing function κ(d), and kissing-number
//! bookkeeping.

mod kissing;
mod schlafli;

pub use kissing::{kbar, KissingEntry, KissingTable, Provenance};
pub use schlafli::{
    coxeter_bound, schlafli_f, schlafli_f2_closed, schlafli_f3_closed, schlafli_lower_limit,
    CoxeterBound, SchlafliValue,
};

use crate::geom::{regular_triangle_area, GeomError};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("quadrature failed to converge: {0}")]
    Quadrature(String),
    #[error("kissing table has no entry for n = {0}")]
    MissingTableEntry(u32),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Named bound value with parameters, evaluation method, and error estimate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: BoundName,
    pub params: Vec<(String, f64)>,
    pub value: f64,
    pub method: Method,
    pub error_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    FtPacking,
    FtCovering,
    FtCode,
    Coxeter,
    GoldbergFt,
    FtVertexConj,
    FtEdgeConj,
}

impl BoundName {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundName::FtPacking => "ft_packing",
            BoundName::FtCovering => "ft_covering",
            BoundName::FtCode => "ft_code",
            BoundName::Coxeter => "coxeter",
            BoundName::GoldbergFt => "goldberg_ft",
            BoundName::FtVertexConj => "ft_vertex_conj",
            BoundName::FtEdgeConj => "ft_edge_conj",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
    MonteCarlo,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Quadrature => "quadrature",
            Method::MonteCarlo => "monte_carlo",
        }
    }
}

/// Integer part of a real-valued bound, with 1e−9 slack so exact integers
/// (e.g. a bound that is exactly 120) are not lost to rounding.
pub fn integer_bound(value: f64) -> i64 {
    (value + 1e-9).floor() as i64
}

/// ω_N = Nπ/(6N−12), the angle entering the Fejes Tóth bounds. Decreasing in
/// N with limit π/6.
pub fn omega_n(n: u32) -> Result<f64, BoundsError> {
    if n < 3 {
        return Err(BoundsError::Domain(format!("omega_n needs N >= 3, got {n}")));
    }
    Ok(n as f64 * PI / (6.0 * n as f64 - 12.0))
}

/// Fejes Tóth's upper bound (N/4)(2 − csc ω_N) on the density of N congruent
/// spherical caps packed in S². Tight for N = 3, 4, 6 and 12.
pub fn ft_packing_bound(n: u32) -> Result<f64, BoundsError> {
    let w = omega_n(n)?;
    Ok(n as f64 / 4.0 * (2.0 - 1.0 / w.sin()))
}

/// Fejes Tóth's lower bound (N/2)(1 − cot(ω_N)/√3) on the density of a
/// covering of S² by N congruent caps.
pub fn ft_covering_bound(n: u32) -> Result<f64, BoundsError> {
    let w = omega_n(n)?;
    Ok(n as f64 / 2.0 * (1.0 - w.cos() / w.sin() / 3.0_f64.sqrt()))
}

/// Upper bound 2π/Δ(φ) + 2 on the size of a spherical φ-code in S²; Δ is the
/// area of the regular spherical triangle of side φ. The integer bound is
/// the floor.
pub fn ft_code_bound(phi: f64) -> Result<f64, BoundsError> {
    let delta = regular_triangle_area(phi)?;
    Ok(2.0 * PI / delta + 2.0)
}

/// Right side of the Goldberg–Fejes Tóth inequality: the IQ of a convex
/// polyhedron with f faces is at most 2π cot ω_f / (3(f−2)(4 sin²ω_f − 1)),
/// with equality only for f = 4, 6, 12.
pub fn goldberg_ft_rhs(f: u32) -> Result<f64, BoundsError> {
    if f < 4 {
        return Err(BoundsError::Domain(format!(
            "goldberg_ft_rhs needs f >= 4, got {f}"
        )));
    }
    let w = omega_n(f)?;
    let s = w.sin();
    Ok(2.0 * PI * (w.cos() / s) / (3.0 * (f as f64 - 2.0) * (4.0 * s * s - 1.0)))
}

/// Fejes Tóth's vertex conjecture evaluated at v vertices: the conjectured
/// lower bound on F³/V² together with the IQ ceiling 36π/bound it implies.
/// An evaluator for an open conjecture — never asserted as a theorem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConjectureBound {
    /// Conjectured lower bound on F³/V².
    pub f3_over_v2: f64,
    /// Implied ceiling 36π / f3_over_v2 on the isoperimetric quotient.
    pub iq_ceiling: f64,
}

pub fn ft_vertex_conjecture_rhs(v: u32) -> Result<ConjectureBound, BoundsError> {
    if v < 4 {
        return Err(BoundsError::Domain(format!(
            "vertex conjecture needs v >= 4, got {v}"
        )));
    }
    let w = omega_n(v)?;
    let t = w.tan();
    let rhs = 27.0 * 3.0_f64.sqrt() / 2.0 * (v as f64 - 2.0) * (3.0 * t * t - 1.0);
    Ok(ConjectureBound {
        f3_over_v2: rhs,
        iq_ceiling: 36.0 * PI / rhs,
    })
}

/// Fejes Tóth's edge conjecture evaluated at (f, v, e): the conjectured lower
/// bound 9e sin(2π/p)(tan²(π/p) tan²(π/q) − 1) on F³/V², with p = 2e/f and
/// q = 2e/v. Requires the Euler relation v − e + f = 2.
pub fn ft_edge_conjecture_rhs(f: u32, v: u32, e: u32) -> Result<ConjectureBound, BoundsError> {
    if e < 6 {
        return Err(BoundsError::Domain(format!(
            "edge conjecture needs e >= 6, got {e}"
        )));
    }
    if v as i64 - e as i64 + f as i64 != 2 {
        return Err(BoundsError::Domain(format!(
            "Euler relation violated: v - e + f = {} != 2",
            v as i64 - e as i64 + f as i64
        )));
    }
    let p = 2.0 * e as f64 / f as f64;
    let q = 2.0 * e as f64 / v as f64;
    let rhs = 9.0
        * e as f64
        * (2.0 * PI / p).sin()
        * ((PI / p).tan().powi(2) * (PI / q).tan().powi(2) - 1.0);
    Ok(ConjectureBound {
        f3_over_v2: rhs,
        iq_ceiling: 36.0 * PI / rhs,
    })
}

/// κ(d): the number of non-overlapping spherical caps of diameter d that can
/// touch a congruent cap, ⌊π / arcsin(sin(d/2)/sin d)⌋. A 1e−9 slack keeps
/// exact boundary cases (κ = 5 at d = arccos(1/√5)) from flooring down.
pub fn kappa(d: f64) -> Result<u32, BoundsError> {
    if !(d > 0.0 && d <= PI / 2.0 + 1e-15) {
        return Err(BoundsError::Domain(format!(
            "kappa needs cap diameter in (0, π/2], got {d}"
        )));
    }
    Ok(kappa_unchecked(d))
}

/// κ(d) on the full range where two caps can still touch a third
/// (d < 2π/3). Used by the maximal-packing test, whose contact distances
/// (e.g. the tetrahedral angle) exceed π/2.
pub(crate) fn kappa_extended(d: f64) -> Option<u32> {
    if d > 0.0 && d < 2.0 * PI / 3.0 {
        Some(kappa_unchecked(d))
    } else {
        None
    }
}

fn kappa_unchecked(d: f64) -> u32 {
    // sin(d/2)/sin d = 1/(2 cos(d/2)).
    let ratio = ((d / 2.0).sin() / d.sin()).clamp(-1.0, 1.0);
    let gamma = ratio.asin();
    (PI / gamma + 1e-9).floor() as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn omega_values() {
        assert_abs_diff_eq!(omega_n(12).unwrap(), PI / 5.0, epsilon = 1e-15);
        assert_abs_diff_eq!(omega_n(4).unwrap(), PI / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(omega_n(3).unwrap(), PI / 2.0, epsilon = 1e-15);
        assert!(omega_n(2).is_err());
    }

    #[test]
    fn packing_bound_values() {
        assert_abs_diff_eq!(ft_packing_bound(3).unwrap(), 0.75, epsilon = 1e-14);
        // N = 4: (4/4)(2 - 2/√3).
        assert_abs_diff_eq!(
            ft_packing_bound(4).unwrap(),
            2.0 - 2.0 / 3.0_f64.sqrt(),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(ft_packing_bound(12).unwrap(), 0.896_095, epsilon = 1e-6);
    }

    #[test]
    fn packing_bound_is_tight_for_icosahedral_caps() {
        // Twelve caps of angular radius arccos(1/√5)/2 have total density
        // 12·2π(1−cos r)/(4π), which meets the bound exactly.
        let r = (1.0 / 5.0_f64.sqrt()).acos() / 2.0;
        let density = 6.0 * (1.0 - r.cos());
        assert_abs_diff_eq!(ft_packing_bound(12).unwrap(), density, epsilon = 1e-9);

        let r4 = (-1.0_f64 / 3.0).acos() / 2.0;
        let density4 = 2.0 * (1.0 - r4.cos());
        assert_abs_diff_eq!(ft_packing_bound(4).unwrap(), density4, epsilon = 1e-9);
    }

    #[test]
    fn covering_bound_values() {
        assert_abs_diff_eq!(ft_covering_bound(4).unwrap(), 4.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(ft_covering_bound(3).unwrap(), 1.5, epsilon = 1e-14);
        // 6(1 − cot 36°/√3); evaluated from the formula directly.
        assert_abs_diff_eq!(
            ft_covering_bound(12).unwrap(),
            1.232_073_166_249,
            epsilon = 1e-9
        );
    }

    #[test]
    fn code_bound_values() {
        assert_abs_diff_eq!(ft_code_bound(PI / 3.0).unwrap(), 13.397_33, epsilon = 1e-3);
        assert_eq!(integer_bound(ft_code_bound(PI / 3.0).unwrap()), 13);
        assert_abs_diff_eq!(
            ft_code_bound((1.0 / 5.0_f64.sqrt()).acos()).unwrap(),
            12.0,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(ft_code_bound(PI / 2.0).unwrap(), 6.0, epsilon = 1e-9);
    }

    #[test]
    fn goldberg_values() {
        assert_abs_diff_eq!(goldberg_ft_rhs(4).unwrap(), 0.302_300, epsilon = 1e-6);
        assert_abs_diff_eq!(goldberg_ft_rhs(6).unwrap(), PI / 6.0, epsilon = 1e-14);
        assert_abs_diff_eq!(goldberg_ft_rhs(12).unwrap(), 0.754_697, epsilon = 1e-6);
        assert!(goldberg_ft_rhs(3).is_err());
    }

    #[test]
    fn goldberg_increases_toward_one() {
        let mut prev = 0.0;
        for f in 4..=4096 {
            let v = goldberg_ft_rhs(f).unwrap();
            assert!(v < 1.0);
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn vertex_conjecture_matches_goldberg_at_the_tetrahedron() {
        // Tetrahedron self-duality: v = 4 vertices against f = 4 faces.
        let vc = ft_vertex_conjecture_rhs(4).unwrap();
        assert_abs_diff_eq!(vc.iq_ceiling, goldberg_ft_rhs(4).unwrap(), epsilon = 1e-9);
        let vc12 = ft_vertex_conjecture_rhs(12).unwrap();
        assert_abs_diff_eq!(vc12.iq_ceiling, 0.828_8, epsilon = 1e-4);
        assert!(ft_vertex_conjecture_rhs(8).unwrap().f3_over_v2 > 0.0);
    }

    #[test]
    fn edge_conjecture_platonic_identities() {
        let tetra = ft_edge_conjecture_rhs(4, 4, 6).unwrap();
        assert_abs_diff_eq!(
            tetra.iq_ceiling,
            goldberg_ft_rhs(4).unwrap(),
            epsilon = 1e-9
        );
        let cube = ft_edge_conjecture_rhs(6, 8, 12).unwrap();
        assert_abs_diff_eq!(cube.iq_ceiling, PI / 6.0, epsilon = 1e-9);
        let ico = ft_edge_conjecture_rhs(20, 12, 30).unwrap();
        let vtx = ft_vertex_conjecture_rhs(12).unwrap();
        assert_abs_diff_eq!(ico.iq_ceiling, vtx.iq_ceiling, epsilon = 1e-9);
        assert!(ft_edge_conjecture_rhs(7, 8, 12).is_err());
    }

    #[test]
    fn kappa_values() {
        // Planar limit: arcsin(1/2) = π/6 gives 6 neighbors.
        assert_eq!(kappa(1e-9).unwrap(), 6);
        assert_eq!(kappa((1.0 / 5.0_f64.sqrt()).acos()).unwrap(), 5);
        assert_eq!(kappa(PI / 2.0).unwrap(), 4);
        assert!(kappa(0.0).is_err());
        assert!(kappa(2.0).is_err());
    }

    #[test]
    fn kappa_extended_covers_the_tetrahedral_distance() {
        let d = (-1.0_f64 / 3.0).acos();
        assert_eq!(kappa_extended(d), Some(3));
        assert_eq!(kappa_extended(2.2), None);
    }
}
