//! Seeded stochastic max–min optimization on S².
//!
//! All four searches share one engine: annealed soft-minimum gradient ascent
//! from seeded random starts, a pattern-search polish of the true minimum
//! distance, and a Gauss–Newton "equalize and inflate" refinement that
//! drives the active contact distances to a common, maximal value. Restarts
//! are independent and may run in parallel; the best restart is selected by
//! (ψ, restart index) lexicographic order, so results are bit-identical
//! regardless of thread count.

mod contact_search;
mod engine;
mod equalize;

pub use contact_search::{max_contacts, MaxContactsOutcome};

use crate::bounds;
use crate::geom::{min_pairwise, regular_triangle_side, GeomError, SphericalCode, UnitVector};
use engine::{materialize, run_restart, PairSystem};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OptimizeError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Search modes of the optimizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Tammes: free max–min over N points.
    Free,
    /// Antipodal codes: M free representatives, mirrored virtually.
    Antipodal,
    /// Closed-hemisphere codes (one-sided kissing reformulation).
    Hemisphere,
    /// Contact-count maximization at a fixed or co-optimized diameter.
    MaxContacts,
}

/// Optimizer configuration. Defaults recover the known optima for N ≤ 12
/// reliably within minutes on commodity hardware.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub restarts: u32,
    pub iterations_per_restart: u32,
    pub master_seed: u64,
    /// Increasing inverse temperatures for the soft-minimum surrogate.
    pub softmin_beta_schedule: Vec<f64>,
    /// Decreasing gradient step sizes, one per annealing phase.
    pub step_schedule: Vec<f64>,
    pub convergence_tol: f64,
    /// Decreasing smoothing widths for the contact-count objective.
    pub contact_epsilon_schedule: Vec<f64>,
    /// Number of candidate contact diameters when none is prescribed.
    pub contact_grid: u32,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            restarts: 200,
            iterations_per_restart: 5000,
            master_seed: 0,
            softmin_beta_schedule: vec![50.0, 200.0, 1000.0, 5000.0],
            step_schedule: vec![1e-2, 3e-3, 1e-3, 3e-4],
            convergence_tol: 1e-10,
            contact_epsilon_schedule: vec![0.1, 0.03, 0.01, 3e-3, 1e-3],
            contact_grid: 24,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<(), OptimizeError> {
        if self.restarts < 1 {
            return Err(OptimizeError::Invalid("restarts must be >= 1".into()));
        }
        if self.softmin_beta_schedule.is_empty() || self.step_schedule.is_empty() {
            return Err(OptimizeError::Invalid("schedules must be nonempty".into()));
        }
        if self.softmin_beta_schedule.iter().any(|&b| b <= 0.0) {
            return Err(OptimizeError::Invalid("beta values must be positive".into()));
        }
        if self.contact_epsilon_schedule.is_empty() {
            return Err(OptimizeError::Invalid(
                "contact epsilon schedule must be nonempty".into(),
            ));
        }
        Ok(())
    }
}

/// Result of a max–min search.
#[derive(Debug, Clone, Serialize)]
pub struct TammesResult {
    pub code: SphericalCode,
    /// The achieved minimum pairwise distance, equal to ψ(code).
    pub psi: f64,
    pub mode: SearchMode,
    pub best_restart: u32,
    /// Upper bound on ψ for this point count from the code bound, when the
    /// bound applies (N ≥ 4).
    pub certificate: Option<f64>,
}

/// Upper bound on the Tammes optimum d_N: the side length at which the code
/// bound equals N. Applies for N ≥ 4.
pub fn tammes_certificate(n: usize) -> Option<f64> {
    if n < 4 {
        return None;
    }
    regular_triangle_side(2.0 * PI / (n as f64 - 2.0)).ok()
}

fn best_of(results: Vec<(f64, u32, Vec<[f64; 3]>)>) -> (f64, u32, Vec<[f64; 3]>) {
    results
        .into_iter()
        .reduce(|best, cand| {
            // Lexicographic: larger ψ wins, ties go to the earlier restart.
            if cand.0 > best.0 || (cand.0 == best.0 && cand.1 < best.1) {
                cand
            } else {
                best
            }
        })
        .expect("at least one restart")
}

fn solve(system: PairSystem, count: usize, cfg: &OptimizerConfig) -> Result<TammesResult, OptimizeError> {
    cfg.validate()?;
    let results: Vec<(f64, u32, Vec<[f64; 3]>)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|restart| {
            let pts = run_restart(system, count, cfg, restart);
            let full = materialize(system, &pts);
            let psi = engine::min_distance_full(&full);
            (psi, restart, pts)
        })
        .collect();
    let (_, best_restart, pts) = best_of(results);
    let full = materialize(system, &pts);
    let points: Vec<UnitVector> = full
        .iter()
        .map(|p| UnitVector::from3(*p).expect("engine outputs are unit"))
        .collect();
    let code = SphericalCode::new(points)?;
    let psi = min_pairwise(code.points())?;
    let certificate = match system {
        PairSystem::Antipodal => tammes_certificate(2 * count),
        _ => tammes_certificate(count),
    };
    Ok(TammesResult {
        code,
        psi,
        mode: match system {
            PairSystem::Free => SearchMode::Free,
            PairSystem::Antipodal => SearchMode::Antipodal,
            PairSystem::Hemisphere => SearchMode::Hemisphere,
        },
        best_restart,
        certificate,
    })
}

/// Tammes search: place N points on S² maximizing the minimum pairwise
/// angular distance. Deterministic given the configuration.
pub fn tammes_solve(n: usize, cfg: &OptimizerConfig) -> Result<TammesResult, OptimizeError> {
    if n < 2 {
        return Err(OptimizeError::Invalid(format!(
            "tammes_solve needs N >= 2, got {n}"
        )));
    }
    solve(PairSystem::Free, n, cfg)
}

/// Antipodal Tammes search over M representatives: the code X = {±x_i} is
/// kept exactly antipodal by construction, and the objective sees both the
/// direct and the mirrored distance of every representative pair. The result
/// contains all 2M points.
pub fn antipodal_solve(m: usize, cfg: &OptimizerConfig) -> Result<TammesResult, OptimizeError> {
    if m < 2 {
        return Err(OptimizeError::Invalid(format!(
            "antipodal_solve needs M >= 2, got {m}"
        )));
    }
    solve(PairSystem::Antipodal, m, cfg)
}

/// Outcome of a hemisphere-code search: feasibility means the achieved ψ
/// reaches the target within 1e−8. Infeasibility is a result, not an error;
/// the search is heuristic evidence, not a proof.
#[derive(Debug, Clone, Serialize)]
pub struct HemisphereOutcome {
    pub result: TammesResult,
    pub target: f64,
    pub feasible: bool,
}

/// Search for `count` points on the closed upper hemisphere with pairwise
/// distance at least `target`. This is the spherical reformulation of the
/// one-sided kissing problem: centers of unit balls in a half-space touching
/// a boundary-tangent ball subtend pairwise angles ≥ 60° and sit on a closed
/// hemisphere.
pub fn hemisphere_code_search(
    count: usize,
    target: f64,
    cfg: &OptimizerConfig,
) -> Result<HemisphereOutcome, OptimizeError> {
    if count < 2 {
        return Err(OptimizeError::Invalid(format!(
            "hemisphere search needs count >= 2, got {count}"
        )));
    }
    if !(target > 0.0 && target < PI) {
        return Err(OptimizeError::Invalid(format!(
            "target must lie in (0, π), got {target}"
        )));
    }
    let result = solve(PairSystem::Hemisphere, count, cfg)?;
    let feasible = result.psi >= target - 1e-8;
    Ok(HemisphereOutcome {
        result,
        target,
        feasible,
    })
}

/// Soundness checks applied to every returned configuration.
pub fn verify_mode_constraints(result: &TammesResult) -> Result<(), OptimizeError> {
    let pts = result.code.points();
    let psi = min_pairwise(pts)?;
    if (psi - result.psi).abs() > 1e-12 {
        return Err(OptimizeError::Invalid(format!(
            "cached ψ {} disagrees with recomputation {}",
            result.psi, psi
        )));
    }
    match result.mode {
        SearchMode::Antipodal => {
            for p in pts {
                let has_mirror = pts.iter().any(|q| {
                    crate::geom::angular_distance(&p.antipode(), q).unwrap_or(PI) < 1e-9
                });
                if !has_mirror {
                    return Err(OptimizeError::Invalid(
                        "antipodal code is not closed under negation".into(),
                    ));
                }
            }
        }
        SearchMode::Hemisphere => {
            for p in pts {
                if p.coords()[2] < -1e-12 {
                    return Err(OptimizeError::Invalid(
                        "hemisphere constraint violated".into(),
                    ));
                }
            }
        }
        _ => {}
    }
    Ok(())
}

/// Consistency with the code bound: a code of N points at distance ψ must
/// satisfy bound(ψ) ≥ N (up to tolerance). Returns the bound value.
pub fn certificate_consistency(result: &TammesResult) -> Result<f64, OptimizeError> {
    let n = result.code.len() as f64;
    let b = bounds::ft_code_bound(result.psi)
        .map_err(|e| OptimizeError::Invalid(e.to_string()))?;
    if b < n - 1e-6 {
        return Err(OptimizeError::Invalid(format!(
            "achieved ψ {} would certify fewer than {n} points (bound {b})",
            result.psi
        )));
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn small_cfg() -> OptimizerConfig {
        OptimizerConfig {
            restarts: 12,
            iterations_per_restart: 1200,
            ..Default::default()
        }
    }

    #[test]
    fn two_points_go_antipodal() {
        let r = tammes_solve(2, &small_cfg()).unwrap();
        assert_abs_diff_eq!(r.psi, PI, epsilon = 1e-6);
    }

    #[test]
    fn three_points_form_an_equilateral_great_circle_triangle() {
        let r = tammes_solve(3, &small_cfg()).unwrap();
        assert_abs_diff_eq!(r.psi, 2.0 * PI / 3.0, epsilon = 1e-6);
    }

    #[test]
    fn tetrahedron_recovered_quickly() {
        let r = tammes_solve(4, &small_cfg()).unwrap();
        assert_abs_diff_eq!(r.psi, (-1.0_f64 / 3.0).acos(), epsilon = 1e-6);
        verify_mode_constraints(&r).unwrap();
        certificate_consistency(&r).unwrap();
    }

    #[test]
    fn octahedron_recovered_quickly() {
        let r = tammes_solve(6, &small_cfg()).unwrap();
        assert_abs_diff_eq!(r.psi, PI / 2.0, epsilon = 1e-6);
    }

    #[test]
    fn antipodal_square() {
        let r = antipodal_solve(2, &small_cfg()).unwrap();
        assert_eq!(r.code.len(), 4);
        assert_abs_diff_eq!(r.psi, PI / 2.0, epsilon = 1e-6);
        verify_mode_constraints(&r).unwrap();
    }

    #[test]
    fn hemisphere_pole_plus_equatorial_triangle() {
        let out = hemisphere_code_search(4, PI / 2.0, &small_cfg()).unwrap();
        assert!(out.feasible, "achieved only {}", out.result.psi);
        verify_mode_constraints(&out.result).unwrap();
    }

    #[test]
    fn determinism_across_runs() {
        let cfg = small_cfg();
        let a = tammes_solve(5, &cfg).unwrap();
        let b = tammes_solve(5, &cfg).unwrap();
        assert_eq!(a.psi.to_bits(), b.psi.to_bits());
        assert_eq!(a.best_restart, b.best_restart);
        for (p, q) in a.code.points().iter().zip(b.code.points()) {
            for (x, y) in p.coords().iter().zip(q.coords()) {
                assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }

    #[test]
    fn invalid_arguments() {
        assert!(tammes_solve(1, &small_cfg()).is_err());
        assert!(antipodal_solve(1, &small_cfg()).is_err());
        assert!(hemisphere_code_search(4, 0.0, &small_cfg()).is_err());
        let bad = OptimizerConfig {
            restarts: 0,
            ..Default::default()
        };
        assert!(tammes_solve(4, &bad).is_err());
    }
}
