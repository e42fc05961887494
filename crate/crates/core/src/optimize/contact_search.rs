//! Contact-count maximization: for N caps of prescribed (or co-optimized)
//! diameter d, search for packings maximizing the number of touching pairs.
//!
//! The search anneals a smoothed contact count, a sum of sigmoids of width ε
//! around the contact distance, against a quadratic non-overlap penalty, with
//! ε driven down a schedule; a Gauss–Newton snap then places every
//! near-contact exactly at d and the exact integer count is read off at
//! 1e−6. When no diameter is prescribed, a grid of candidates descending
//! from the Tammes optimum is scanned and locally refined.

use super::engine::{pair_distance, pair_gradient, pair_list, PairSystem};
use super::equalize::gauss_newton_distances;
use super::{tammes_certificate, tammes_solve, OptimizerConfig, OptimizeError, SearchMode, TammesResult};
use crate::geom::vec3::{self, V3};
use crate::geom::{min_pairwise, SphericalCode, UnitVector};
use crate::rngutil::{sample_sphere3, stream_rng};
use rayon::prelude::*;
use serde::Serialize;

/// Result of a contact maximization run.
#[derive(Debug, Clone, Serialize)]
pub struct MaxContactsOutcome {
    pub result: TammesResult,
    /// Exact number of touching pairs of the polished configuration.
    pub contact_count: usize,
    /// The contact distance the count refers to.
    pub contact_distance: f64,
}

const CONTACT_TOL: f64 = 1e-6;
const SNAP_WINDOW: f64 = 3e-3;
const GRID_JOB_BASE: u64 = 0x0001_0000;
const FINAL_JOB_BASE: u64 = 0x0002_0000;

/// Maximize the number of touching pairs among N caps. With `d` given the
/// diameter is fixed (it must not exceed the Tammes certificate when one
/// applies); otherwise candidates descending from the Tammes optimum are
/// scanned and the best is refined.
pub fn max_contacts(
    n: usize,
    d: Option<f64>,
    cfg: &OptimizerConfig,
) -> Result<MaxContactsOutcome, OptimizeError> {
    cfg.validate()?;
    if n < 2 {
        return Err(OptimizeError::Invalid(format!(
            "max_contacts needs N >= 2, got {n}"
        )));
    }
    let cert = tammes_certificate(n);
    if let (Some(d), Some(cert)) = (d, cert) {
        if d > cert + 1e-9 {
            return Err(OptimizeError::Invalid(format!(
                "contact distance {d} exceeds the upper-bound certificate {cert} for N = {n}"
            )));
        }
    }
    if let Some(d) = d {
        if !(d > 0.0 && d < std::f64::consts::PI) {
            return Err(OptimizeError::Invalid(format!(
                "contact distance must lie in (0, π), got {d}"
            )));
        }
    }

    // A polished Tammes configuration seeds a third of the restarts.
    let tammes = tammes_solve(n, cfg)?;
    let base: Vec<V3> = tammes.code.points().iter().map(|p| p.as3()).collect();

    let best = match d {
        Some(d) => run_candidates(n, &[d], cfg.restarts, cfg, &base, FINAL_JOB_BASE)?,
        None => {
            // Scan a coarse diameter grid descending from the Tammes optimum
            // with a reduced restart budget, then spend the full budget on
            // the best candidate and a local refinement around it.
            let psi_star = tammes.psi;
            let g = cfg.contact_grid.max(1) as usize;
            let mut cands = Vec::with_capacity(g);
            for k in 0..g {
                let frac = if g == 1 { 0.0 } else { k as f64 / (g - 1) as f64 };
                cands.push(psi_star * (1.0 - 0.45 * frac));
            }
            let spacing = if g > 1 {
                psi_star * 0.45 / (g - 1) as f64
            } else {
                0.0
            };
            let scan_restarts = (cfg.restarts / 6).clamp(1, cfg.restarts).max(16.min(cfg.restarts));
            let scan = run_candidates(n, &cands, scan_restarts, cfg, &base, GRID_JOB_BASE)?;

            let mut finals: Vec<f64> = vec![scan.3];
            for o in [-0.5, -0.25, 0.25, 0.5] {
                let c = scan.3 + o * spacing;
                if c > 0.0 && cert.map_or(true, |u| c <= u + 1e-12) {
                    finals.push(c);
                }
            }
            let refined = run_candidates(n, &finals, cfg.restarts, cfg, &base, FINAL_JOB_BASE)?;
            if refined.0 >= scan.0 {
                refined
            } else {
                scan
            }
        }
    };

    let (count, restart, pts, distance) = best;
    let points: Vec<UnitVector> = pts
        .iter()
        .map(|p| UnitVector::from3(*p).expect("engine outputs are unit"))
        .collect();
    let code = SphericalCode::new(points)?;
    let psi = min_pairwise(code.points())?;
    Ok(MaxContactsOutcome {
        result: TammesResult {
            code,
            psi,
            mode: SearchMode::MaxContacts,
            best_restart: restart,
            certificate: cert,
        },
        contact_count: count,
        contact_distance: distance,
    })
}

/// (count, winning restart, configuration, realized contact distance).
type Best = (usize, u32, Vec<V3>, f64);

fn run_candidates(
    n: usize,
    candidates: &[f64],
    restarts: u32,
    cfg: &OptimizerConfig,
    base: &[V3],
    job_base: u64,
) -> Result<Best, OptimizeError> {
    let cert = tammes_certificate(n);
    let free_d = candidates.len() > 1;
    let jobs: Vec<(usize, u32)> = (0..candidates.len())
        .flat_map(|di| (0..restarts).map(move |r| (di, r)))
        .collect();
    let results: Vec<(usize, usize, u32, Vec<V3>, f64)> = jobs
        .into_par_iter()
        .map(|(di, restart)| {
            let d = candidates[di];
            let seed_index = job_base + (di as u64) * restarts as u64 + restart as u64;
            let pts = contact_restart(n, d, cfg, seed_index, restart, base);
            let count = exact_contact_count(&pts, d);
            // Contact-rich configurations may be flexes of a structure that
            // jams at a nearby distance the grid missed; inflate the minimum
            // distance to its rigid maximum and recount there.
            if free_d && count + 12 >= 3 * n {
                let pairs = pair_list(PairSystem::Free, n);
                let mut inflated = pts.clone();
                super::equalize::equalize_inflate(&mut inflated, &pairs, false);
                let jam = super::engine::min_distance(&inflated, &pairs);
                if cert.map_or(true, |u| jam <= u + 1e-9) {
                    let jam_count = exact_contact_count(&inflated, jam);
                    if jam_count > count {
                        return (jam_count, di, restart, inflated, jam);
                    }
                }
            }
            (count, di, restart, pts, d)
        })
        .collect();
    let best = results
        .into_iter()
        .reduce(|best, cand| {
            let better = cand.0 > best.0
                || (cand.0 == best.0 && (cand.1, cand.2) < (best.1, best.2));
            if better {
                cand
            } else {
                best
            }
        })
        .expect("at least one job");
    Ok((best.0, best.2, best.3, best.4))
}

/// Exact classification after polishing: contacts are pairs within 1e−6 of
/// d; a configuration with any pair below d − 1e−6 is not a packing and
/// scores zero.
fn exact_contact_count(pts: &[V3], d: f64) -> usize {
    let mut count = 0;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let r = vec3::angle(pts[i], pts[j]);
            if r < d - CONTACT_TOL {
                return 0;
            }
            if (r - d).abs() <= CONTACT_TOL {
                count += 1;
            }
        }
    }
    count
}

fn contact_restart(
    n: usize,
    d: f64,
    cfg: &OptimizerConfig,
    seed_index: u64,
    restart: u32,
    base: &[V3],
) -> Vec<V3> {
    let mut rng = stream_rng(cfg.master_seed, seed_index);
    let frac = restart as f64 / cfg.restarts.max(1) as f64;
    let mut pts: Vec<V3> = if restart % 3 == 2 && base.len() == n {
        // Seed from the Tammes configuration with growing perturbation.
        let sigma = 0.03 + 0.3 * frac;
        base.iter()
            .map(|p| {
                let noise = sample_sphere3(&mut rng);
                vec3::normalize(vec3::add(*p, vec3::scale(noise, sigma)))
                    .unwrap_or(*p)
            })
            .collect()
    } else {
        (0..n).map(|_| sample_sphere3(&mut rng)).collect()
    };

    let pairs = pair_list(PairSystem::Free, n);
    let phases = cfg.contact_epsilon_schedule.len();
    let per_phase = (cfg.iterations_per_restart as usize / phases.max(1)).max(1) as u32;
    for &eps in &cfg.contact_epsilon_schedule {
        anneal_phase(&mut pts, &pairs, d, eps, per_phase);
    }
    snap_contacts(&mut pts, &pairs, d);
    pts
}

/// Gradient ascent on the smoothed contact count
/// Σ sigmoid((d − r)/ε) − (1/ε²) Σ max(0, d − r)².
fn anneal_phase(pts: &mut [V3], pairs: &[(usize, usize, f64)], d: f64, eps: f64, iterations: u32) {
    let n = pts.len();
    let lambda = 1.0 / (eps * eps);
    let step = (0.5 * eps).clamp(3e-4, 2e-2);
    let mut grad = vec![[0.0f64; 3]; n];
    for _ in 0..iterations {
        for g in grad.iter_mut() {
            *g = [0.0; 3];
        }
        for &p in pairs {
            let r = pair_distance(pts, p);
            let z = (d - r) / eps;
            // Clamped logistic to avoid overflow far from the well.
            let sig = 1.0 / (1.0 + (-z.clamp(-40.0, 40.0)).exp());
            let dsig = sig * (1.0 - sig);
            let overlap = (d - r).max(0.0);
            let coeff = -dsig / eps + 2.0 * lambda * overlap;
            if coeff == 0.0 {
                continue;
            }
            let (gi, gj) = pair_gradient(pts, p);
            grad[p.0] = vec3::add(grad[p.0], vec3::scale(gi, coeff));
            grad[p.1] = vec3::add(grad[p.1], vec3::scale(gj, coeff));
        }
        for (i, p) in pts.iter_mut().enumerate() {
            let g = grad[i];
            let norm = vec3::norm(g);
            if norm < 1e-14 {
                continue;
            }
            // Normalized step: the raw gradient scales like 1/ε.
            let moved = vec3::add(*p, vec3::scale(g, step / norm.max(1.0)));
            if let Some(u) = vec3::normalize(moved) {
                *p = u;
            }
        }
    }
}

/// Place every near-contact exactly at d by Gauss–Newton, re-collecting the
/// active set so pairs pulled into range become exact contacts too.
fn snap_contacts(pts: &mut [V3], pairs: &[(usize, usize, f64)], d: f64) {
    for _ in 0..3 {
        let active: Vec<(usize, usize, f64)> = pairs
            .iter()
            .copied()
            .filter(|&p| pair_distance(pts, p) <= d + SNAP_WINDOW)
            .collect();
        if active.is_empty() {
            return;
        }
        let targets = vec![d; active.len()];
        let residual = gauss_newton_distances(pts, &active, &targets, false, 40);
        if residual < 1e-11 {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_cfg() -> OptimizerConfig {
        OptimizerConfig {
            restarts: 30,
            iterations_per_restart: 1500,
            contact_grid: 8,
            ..Default::default()
        }
    }

    #[test]
    fn tetrahedron_realizes_six_contacts() {
        let out = max_contacts(4, None, &quick_cfg()).unwrap();
        assert_eq!(out.contact_count, 6);
    }

    #[test]
    fn two_points_have_one_contact() {
        let out = max_contacts(2, None, &quick_cfg()).unwrap();
        assert_eq!(out.contact_count, 1);
    }

    #[test]
    fn rejects_distances_above_the_certificate() {
        let err = max_contacts(12, Some(1.3), &quick_cfg());
        assert!(err.is_err());
    }

    #[test]
    fn square_pyramid_beats_the_bipyramid() {
        // K_5 = 8, attained by the square pyramid at d = π/2.
        let out = max_contacts(5, None, &quick_cfg()).unwrap();
        assert_eq!(out.contact_count, 8);
    }
}
