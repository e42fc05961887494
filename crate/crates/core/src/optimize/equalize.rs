//! Gauss–Newton refinement of jammed max–min configurations.
//!
//! Near a max–min optimum the tight pairs form a rigid contact structure.
//! The refinement repeatedly proposes a slightly larger common distance s
//! for all active pairs, solves the nonlinear system "every active distance
//! equals s" by damped Gauss–Newton in ambient coordinates, and accepts the
//! solution when it converges and stays feasible. Bisection on the increment
//! drives ψ to the locally maximal value at machine precision, which the
//! pattern search alone approaches only linearly.

use super::engine::{clamp_hemisphere, min_distance, pair_distance, pair_gradient};
use crate::geom::vec3::{self, V3};

/// Solve for target distances on the active pairs. Returns the maximum
/// absolute residual reached; boundary-active points (z within window) are
/// pinned to the equator in hemisphere mode.
pub(crate) fn gauss_newton_distances(
    pts: &mut [V3],
    active: &[(usize, usize, f64)],
    targets: &[f64],
    hemisphere: bool,
    iterations: u32,
) -> f64 {
    let n = pts.len();
    let vars = 3 * n;
    let mut residual_inf = f64::INFINITY;
    let mut prev_residual = f64::INFINITY;
    let mut stalls = 0u32;
    for _ in 0..iterations {
        // Assemble rows: distance constraints, plus boundary pins.
        let mut rows: Vec<(Vec<(usize, f64)>, f64)> = Vec::with_capacity(active.len() + n);
        residual_inf = 0.0;
        for (k, &p) in active.iter().enumerate() {
            let d = pair_distance(pts, p);
            let r = targets[k] - d;
            residual_inf = residual_inf.max(r.abs());
            let (gi, gj) = pair_gradient(pts, p);
            let mut row = Vec::with_capacity(6);
            for a in 0..3 {
                row.push((3 * p.0 + a, gi[a]));
            }
            for a in 0..3 {
                row.push((3 * p.1 + a, gj[a]));
            }
            rows.push((row, r));
        }
        if hemisphere {
            for (i, p) in pts.iter().enumerate() {
                if p[2] < 1e-7 {
                    rows.push((vec![(3 * i + 2, 1.0)], -p[2]));
                    residual_inf = residual_inf.max(p[2].abs());
                }
            }
        }
        if residual_inf < 1e-13 {
            break;
        }
        // Infeasible targets plateau instead of converging; bail out early.
        if residual_inf > 0.5 * prev_residual {
            stalls += 1;
            if stalls >= 3 {
                break;
            }
        } else {
            stalls = 0;
        }
        prev_residual = residual_inf;
        // Normal equations with a small ridge for the gauge directions.
        let mut ata = vec![vec![0.0f64; vars]; vars];
        let mut atb = vec![0.0f64; vars];
        for (row, r) in &rows {
            for &(ci, vi) in row {
                atb[ci] += vi * r;
                for &(cj, vj) in row {
                    ata[ci][cj] += vi * vj;
                }
            }
        }
        for (d, row) in ata.iter_mut().enumerate() {
            row[d] += 1e-10;
        }
        let delta = match cholesky_solve(&mut ata, &atb) {
            Some(d) => d,
            None => break,
        };
        for (i, p) in pts.iter_mut().enumerate() {
            let moved = vec3::add(*p, [delta[3 * i], delta[3 * i + 1], delta[3 * i + 2]]);
            if let Some(u) = vec3::normalize(moved) {
                *p = if hemisphere { clamp_hemisphere(u) } else { u };
            }
        }
    }
    residual_inf
}

/// In-place Cholesky solve of a symmetric positive definite system.
fn cholesky_solve(a: &mut [Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    for k in 0..n {
        for j in 0..k {
            let f = a[k][j];
            for i in k..n {
                a[i][k] -= f * a[i][j];
            }
        }
        let d = a[k][k];
        if d <= 0.0 || !d.is_finite() {
            return None;
        }
        let s = d.sqrt();
        for i in k..n {
            a[i][k] /= s;
        }
    }
    // Forward then backward substitution on the lower factor.
    let mut y = b.to_vec();
    for i in 0..n {
        for j in 0..i {
            let f = a[i][j] * y[j];
            y[i] -= f;
        }
        y[i] /= a[i][i];
    }
    for i in (0..n).rev() {
        for j in (i + 1)..n {
            let f = a[j][i] * y[j];
            y[i] -= f;
        }
        y[i] /= a[i][i];
    }
    Some(y)
}

/// Equalize-inflate: bisection on the common contact distance. Each accepted
/// step replaces the configuration with one whose active pairs sit exactly
/// at the enlarged distance; failures halve the increment.
pub(crate) fn equalize_inflate(
    pts: &mut Vec<V3>,
    pairs: &[(usize, usize, f64)],
    hemisphere: bool,
) {
    let mut gap = 1e-3_f64;
    for _ in 0..260 {
        if gap < 1e-13 {
            break;
        }
        let psi = min_distance(pts, pairs);
        let window = psi + 2.5 * gap + 1e-9;
        let active: Vec<(usize, usize, f64)> = pairs
            .iter()
            .copied()
            .filter(|&p| pair_distance(pts, p) <= window)
            .collect();
        if active.is_empty() {
            break;
        }
        let s = psi + gap;
        let targets = vec![s; active.len()];
        let mut trial = pts.clone();
        let residual = gauss_newton_distances(&mut trial, &active, &targets, hemisphere, 40);
        let feasible = residual < 1e-11
            && min_distance(&trial, pairs) >= s - 1e-9
            && (!hemisphere || trial.iter().all(|p| p[2] >= -1e-12));
        if feasible {
            *pts = trial;
            gap = (gap * 1.3).min(1e-3);
        } else {
            gap *= 0.5;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::vec3;
    use crate::optimize::engine::{pair_list, PairSystem};
    use std::f64::consts::PI;

    #[test]
    fn perturbed_octahedron_snaps_back_to_ninety_degrees() {
        // Start from a slightly twisted octahedron and recover ψ = π/2.
        let mut pts: Vec<V3> = vec![
            [1.0, 0.02, -0.01],
            [-1.0, 0.015, 0.02],
            [0.01, 1.0, 0.015],
            [-0.02, -1.0, 0.01],
            [0.015, -0.01, 1.0],
            [0.01, 0.02, -1.0],
        ]
        .into_iter()
        .map(|p| vec3::normalize(p).unwrap())
        .collect();
        let pairs = pair_list(PairSystem::Free, 6);
        equalize_inflate(&mut pts, &pairs, false);
        let psi = min_distance(&pts, &pairs);
        assert!(
            (psi - PI / 2.0).abs() < 1e-9,
            "equalize reached only ψ = {psi}"
        );
    }

    #[test]
    fn cholesky_solves_a_small_system() {
        let mut a = vec![
            vec![4.0, 1.0, 0.0],
            vec![1.0, 3.0, 0.5],
            vec![0.0, 0.5, 2.0],
        ];
        let b = vec![1.0, 2.0, 3.0];
        let x = cholesky_solve(&mut a, &b).unwrap();
        // Verify A x = b against the original matrix.
        let orig: [[f64; 3]; 3] = [[4.0, 1.0, 0.0], [1.0, 3.0, 0.5], [0.0, 0.5, 2.0]];
        for r in 0..3 {
            let got: f64 = (0..3).map(|c| orig[r][c] * x[c]).sum();
            assert!((got - b[r]).abs() < 1e-12);
        }
    }
}
