//! Shared max–min search engine: soft-minimum ascent, pattern polish, and
//! the equalize-inflate refinement.

use super::equalize::equalize_inflate;
use super::OptimizerConfig;
use crate::geom::vec3::{self, V3};
use crate::rngutil::{sample_sphere3, stream_rng};

/// Which pair set the objective ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum PairSystem {
    Free,
    Antipodal,
    Hemisphere,
}

impl PairSystem {
    pub(crate) fn hemisphere(self) -> bool {
        matches!(self, PairSystem::Hemisphere)
    }
}

/// Effective pair (i, j, sign): the distance between x_i and sign·x_j.
/// Antipodal codes see each representative pair twice, once mirrored.
pub(crate) fn pair_list(system: PairSystem, n: usize) -> Vec<(usize, usize, f64)> {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j, 1.0));
            if system == PairSystem::Antipodal {
                pairs.push((i, j, -1.0));
            }
        }
    }
    pairs
}

pub(crate) fn pair_distance(pts: &[V3], p: (usize, usize, f64)) -> f64 {
    let (i, j, s) = p;
    vec3::angle(pts[i], vec3::scale(pts[j], s))
}

/// Gradient of the pair distance with respect to both endpoints; each
/// returned vector is tangent and unit unless the pair is degenerate.
pub(crate) fn pair_gradient(pts: &[V3], p: (usize, usize, f64)) -> (V3, V3) {
    let (i, j, s) = p;
    let y = vec3::scale(pts[j], s);
    let c = vec3::dot(pts[i], y);
    let sin = vec3::norm(vec3::cross(pts[i], y));
    if sin < 1e-12 {
        return ([0.0; 3], [0.0; 3]);
    }
    let gi = vec3::scale(vec3::sub(y, vec3::scale(pts[i], c)), -1.0 / sin);
    let gj_wrt_y = vec3::scale(vec3::sub(pts[i], vec3::scale(y, c)), -1.0 / sin);
    (gi, vec3::scale(gj_wrt_y, s))
}

pub(crate) fn clamp_hemisphere(p: V3) -> V3 {
    if p[2] >= 0.0 {
        return p;
    }
    let clamped = [p[0], p[1], 0.0];
    match vec3::normalize(clamped) {
        Some(u) => u,
        // A point at the south pole has no nearest boundary point; nudge it
        // deterministically onto the equator.
        None => [1.0, 0.0, 0.0],
    }
}

pub(crate) fn min_distance(pts: &[V3], pairs: &[(usize, usize, f64)]) -> f64 {
    pairs
        .iter()
        .map(|&p| pair_distance(pts, p))
        .fold(f64::INFINITY, f64::min)
}

/// Minimum distance over all point pairs of a materialized configuration.
pub(crate) fn min_distance_full(pts: &[V3]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            best = best.min(vec3::angle(pts[i], pts[j]));
        }
    }
    best
}

/// Expand the representative set to the full code (adds antipodes).
pub(crate) fn materialize(system: PairSystem, pts: &[V3]) -> Vec<V3> {
    match system {
        PairSystem::Antipodal => {
            let mut full = pts.to_vec();
            full.extend(pts.iter().map(|p| vec3::neg(*p)));
            full
        }
        _ => pts.to_vec(),
    }
}

/// One annealing phase of soft-minimum gradient ascent at fixed β and step.
fn softmin_phase(
    pts: &mut [V3],
    pairs: &[(usize, usize, f64)],
    beta: f64,
    step: f64,
    iterations: u32,
    hemisphere: bool,
) {
    let n = pts.len();
    let mut grad = vec![[0.0f64; 3]; n];
    let mut dists = vec![0.0f64; pairs.len()];
    for _ in 0..iterations {
        let mut dmin = f64::INFINITY;
        for (k, &p) in pairs.iter().enumerate() {
            let d = pair_distance(pts, p);
            dists[k] = d;
            if d < dmin {
                dmin = d;
            }
        }
        for g in grad.iter_mut() {
            *g = [0.0; 3];
        }
        let mut z = 0.0;
        for (k, &p) in pairs.iter().enumerate() {
            let mut w = (-beta * (dists[k] - dmin)).exp();
            // Barrier against collapsing points.
            if dists[k] < 1e-4 {
                w += 1.0;
            }
            if w < 1e-14 {
                continue;
            }
            z += w;
            let (gi, gj) = pair_gradient(pts, p);
            let (i, j, _) = p;
            grad[i] = vec3::add(grad[i], vec3::scale(gi, w));
            grad[j] = vec3::add(grad[j], vec3::scale(gj, w));
        }
        if z <= 0.0 {
            break;
        }
        for (i, p) in pts.iter_mut().enumerate() {
            let moved = vec3::add(*p, vec3::scale(grad[i], step / z * pairs.len() as f64));
            if let Some(u) = vec3::normalize(moved) {
                *p = if hemisphere { clamp_hemisphere(u) } else { u };
            }
        }
    }
}

/// Pattern-search ascent of the true minimum distance: move every point that
/// attains (or nearly attains) the minimum along the sum of its push-away
/// directions, accept only improvements, halve the step on failure.
fn pattern_polish(
    pts: &mut Vec<V3>,
    pairs: &[(usize, usize, f64)],
    hemisphere: bool,
    tol: f64,
) {
    let n = pts.len();
    let mut step = 3e-3_f64;
    let mut psi = min_distance(pts, pairs);
    let mut dir = vec![[0.0f64; 3]; n];
    while step > tol.max(1e-13) {
        let window = psi + (2.0 * step).max(1e-9);
        for d in dir.iter_mut() {
            *d = [0.0; 3];
        }
        let mut any = false;
        for &p in pairs {
            let d = pair_distance(pts, p);
            if d <= window {
                let (gi, gj) = pair_gradient(pts, p);
                dir[p.0] = vec3::add(dir[p.0], gi);
                dir[p.1] = vec3::add(dir[p.1], gj);
                any = true;
            }
        }
        if !any {
            break;
        }
        let cand: Vec<V3> = pts
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let g = dir[i];
                let norm = vec3::norm(g);
                if norm < 1e-14 {
                    return *p;
                }
                let moved = vec3::add(*p, vec3::scale(g, step / norm));
                let u = vec3::normalize(moved).unwrap_or(*p);
                if hemisphere {
                    clamp_hemisphere(u)
                } else {
                    u
                }
            })
            .collect();
        let cand_psi = min_distance(&cand, pairs);
        if cand_psi > psi {
            *pts = cand;
            psi = cand_psi;
            step = (step * 1.4).min(3e-3);
        } else {
            step *= 0.5;
        }
    }
}

/// A full restart: seeded start, annealed ascent phases, polish, equalize.
pub(crate) fn run_restart(
    system: PairSystem,
    count: usize,
    cfg: &OptimizerConfig,
    restart: u32,
) -> Vec<V3> {
    let mut rng = stream_rng(cfg.master_seed, restart as u64);
    let hemisphere = system.hemisphere();
    let mut pts: Vec<V3> = (0..count)
        .map(|_| {
            let p = sample_sphere3(&mut rng);
            if hemisphere {
                clamp_hemisphere(p)
            } else {
                p
            }
        })
        .collect();
    let pairs = pair_list(system, count);
    let phases = cfg.softmin_beta_schedule.len().max(1);
    let per_phase = (cfg.iterations_per_restart as usize / phases).max(1) as u32;
    for (k, &beta) in cfg.softmin_beta_schedule.iter().enumerate() {
        let step = *cfg
            .step_schedule
            .get(k)
            .or(cfg.step_schedule.last())
            .expect("validated nonempty");
        softmin_phase(&mut pts, &pairs, beta, step, per_phase, hemisphere);
    }
    pattern_polish(&mut pts, &pairs, hemisphere, cfg.convergence_tol);
    equalize_inflate(&mut pts, &pairs, hemisphere);
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_gradients_are_tangent_and_antisymmetric_in_effect() {
        let pts = vec![
            vec3::normalize([1.0, 0.2, 0.1]).unwrap(),
            vec3::normalize([-0.3, 1.0, 0.4]).unwrap(),
        ];
        let p = (0usize, 1usize, 1.0);
        let (gi, gj) = pair_gradient(&pts, p);
        assert!(vec3::dot(gi, pts[0]).abs() < 1e-12);
        assert!(vec3::dot(gj, pts[1]).abs() < 1e-12);
        // Moving along the gradient increases the distance.
        let eps = 1e-6;
        let moved = [
            vec3::normalize(vec3::add(pts[0], vec3::scale(gi, eps))).unwrap(),
            vec3::normalize(vec3::add(pts[1], vec3::scale(gj, eps))).unwrap(),
        ];
        assert!(pair_distance(&moved, p) > pair_distance(&pts, p));
    }

    #[test]
    fn antipodal_pairs_cover_mirrored_distances() {
        let pairs = pair_list(PairSystem::Antipodal, 3);
        assert_eq!(pairs.len(), 6);
        let pts = vec![
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            vec3::normalize([0.1, 0.1, 1.0]).unwrap(),
        ];
        let full = materialize(PairSystem::Antipodal, &pts);
        assert_eq!(full.len(), 6);
        let direct = min_distance(&pts, &pairs);
        assert!((direct - min_distance_full(&full)).abs() < 1e-12);
    }

    #[test]
    fn hemisphere_clamp_is_idempotent_on_the_boundary() {
        let p = clamp_hemisphere([0.6, -0.8, -0.3]);
        assert!(p[2] >= 0.0);
        let q = clamp_hemisphere(p);
        assert_eq!(p, q);
    }
}
