//! Higher-dimensional counterparts: sphere areas, the upper bound theorem on
//! vertex counts, Monte Carlo circumscription, the lifted-simplex area
//! ρ_d(t), and the conjectured isoperimetric bounds built from them.
//!
//! Every estimate is produced from seeded sub-streams combined in a fixed
//! order, so results are independent of thread scheduling. Standard errors
//! are always reported; the conjectured bounds are evaluated and never
//! asserted.

use super::rho::rho;
use super::IsoError;
use crate::geom::SphericalCode;
use crate::rngutil::{sample_sphere, stream_rng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const STREAMS: u64 = 64;

/// Surface area Ω_d of the unit sphere S^{d−1}: 2π^{d/2}/Γ(d/2).
pub fn omega_sphere(d: u32) -> Result<f64, IsoError> {
    if d < 2 {
        return Err(IsoError::Domain(format!(
            "sphere area needs dimension >= 2, got {d}"
        )));
    }
    // Γ(d/2) for integer and half-integer arguments.
    let gamma_half = if d % 2 == 0 {
        let k = (d / 2) as usize;
        (1..k).map(|i| i as f64).product::<f64>()
    } else {
        let m = ((d - 1) / 2) as usize;
        let mut g = PI.sqrt();
        for i in 0..m {
            g *= i as f64 + 0.5;
        }
        g
    };
    Ok(2.0 * PI.powf(d as f64 / 2.0) / gamma_half)
}

/// McMullen's upper bound h_d(n) on the number of vertices of a d-polytope
/// with n facets. Reduces to 2n − 4 in dimension 3.
pub fn upper_bound_vertices(d: u32, n: u64) -> Result<u64, IsoError> {
    if d < 2 || n < d as u64 + 1 {
        return Err(IsoError::Domain(format!(
            "upper bound theorem needs n >= d+1 >= 3, got d = {d}, n = {n}"
        )));
    }
    let half_up = (d as u64).div_ceil(2);
    let half_down = (d as u64) / 2;
    Ok(binomial(n - half_up, half_down) + binomial(n - half_down - 1, half_up - 1))
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub value: f64,
    pub stderr: f64,
}

/// Circumscribed body in general dimension, measured by Monte Carlo over
/// radial directions: along direction ω the boundary sits at distance
/// sec θ(ω), θ(ω) the angle to the nearest tangency point, giving
/// F = Ω_d E[sec^d θ] and V = (Ω_d/d) E[sec^d θ] from independent streams.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct McPolyhedron {
    pub dimension: u32,
    pub tangency_points: SphericalCode,
    pub surface_area: McEstimate,
    pub volume: McEstimate,
    pub samples: u64,
    pub seed: u64,
}

impl McPolyhedron {
    /// Isoperimetric quotient d^{d−1} Ω_d V^{d−1}/F^d with a first-order
    /// standard error from the independent F and V streams.
    pub fn iq(&self) -> Result<McEstimate, IsoError> {
        let d = self.dimension as f64;
        let omega = omega_sphere(self.dimension)?;
        let f = self.surface_area.value;
        let v = self.volume.value;
        let iq = d.powf(d - 1.0) * omega * v.powf(d - 1.0) / f.powf(d);
        let rel = ((d - 1.0) * self.volume.stderr / v).hypot(d * self.surface_area.stderr / f);
        Ok(McEstimate {
            value: iq,
            stderr: iq * rel,
        })
    }

    /// Relative deviation of V from F/d in units of its combined standard
    /// error; the identity holds exactly for circumscribed bodies.
    pub fn volume_identity_sigma(&self) -> f64 {
        let d = self.dimension as f64;
        let diff = self.volume.value - self.surface_area.value / d;
        let sigma = self.volume.stderr.hypot(self.surface_area.stderr / d);
        diff.abs() / sigma.max(1e-300)
    }
}

/// Monte Carlo circumscription of the tangent halfspaces {p·x_i ≤ 1} in any
/// dimension d ≥ 3. Unboundedness (a sampled direction escaping every
/// halfspace) is detected and reported.
pub fn circumscribe_monte_carlo(
    code: &SphericalCode,
    samples: u64,
    seed: u64,
) -> Result<McPolyhedron, IsoError> {
    let d = code.dim();
    if d < 3 {
        return Err(IsoError::Domain(format!(
            "Monte Carlo circumscription needs dimension >= 3, got {d}"
        )));
    }
    if samples < 10_000 {
        return Err(IsoError::Domain(format!(
            "at least 10^4 samples required, got {samples}"
        )));
    }
    let omega = omega_sphere(d as u32)?;
    let sites: Vec<Vec<f64>> = code.points().iter().map(|p| p.coords().to_vec()).collect();

    // Independent streams for F and V so the V = F/d check has content.
    let f_mean = mean_sec_power(&sites, d as i32, samples, seed, 0x1000)?;
    let v_mean = mean_sec_power(&sites, d as i32, samples, seed, 0x2000)?;
    Ok(McPolyhedron {
        dimension: d as u32,
        tangency_points: code.clone(),
        surface_area: McEstimate {
            value: omega * f_mean.value,
            stderr: omega * f_mean.stderr,
        },
        volume: McEstimate {
            value: omega / d as f64 * v_mean.value,
            stderr: omega / d as f64 * v_mean.stderr,
        },
        samples,
        seed,
    })
}

/// Mean of sec^power(θ to nearest site) over the sphere, by sub-streams.
fn mean_sec_power(
    sites: &[Vec<f64>],
    power: i32,
    samples: u64,
    seed: u64,
    tag: u64,
) -> Result<McEstimate, IsoError> {
    let d = sites[0].len();
    let per = samples / STREAMS;
    let partials: Vec<Result<(f64, f64, u64), IsoError>> = (0..STREAMS)
        .into_par_iter()
        .map(|stream| {
            let mut rng = stream_rng(seed, tag + stream);
            let count = if stream == STREAMS - 1 {
                samples - per * (STREAMS - 1)
            } else {
                per
            };
            let mut sum = 0.0;
            let mut sq = 0.0;
            for _ in 0..count {
                let w = sample_sphere(&mut rng, d);
                let mut best = f64::NEG_INFINITY;
                for s in sites {
                    let dot: f64 = s.iter().zip(w.iter()).map(|(a, b)| a * b).sum();
                    if dot > best {
                        best = dot;
                    }
                }
                if best <= 1e-9 {
                    return Err(IsoError::Unbounded);
                }
                let val = best.powi(-power);
                sum += val;
                sq += val * val;
            }
            Ok((sum, sq, count))
        })
        .collect();
    let mut sum = 0.0;
    let mut sq = 0.0;
    let mut n = 0u64;
    for p in partials {
        let (s, q, c) = p?;
        sum += s;
        sq += q;
        n += c;
    }
    let mean = sum / n as f64;
    let var = (sq / n as f64 - mean * mean).max(0.0);
    Ok(McEstimate {
        value: mean,
        stderr: (var / n as f64).sqrt(),
    })
}

/// ρ_d(t): Monte Carlo area of the tangent-plane lift of a regular spherical
/// simplex of area t on S^{d−1}.
///
/// The simplex with common pairwise inner product c is located by bisection
/// on c until its Monte Carlo area (common random numbers across iterates)
/// matches t to 1e−4; a separate stream then estimates ∫ sec^d θ_min over
/// the simplex. The reported standard error combines the integration noise
/// with the area-matching uncertainty through a numerical slope dρ/dt.
pub fn rho_d(d: u32, t: f64, samples: u64, seed: u64) -> Result<McEstimate, IsoError> {
    if d < 3 {
        return Err(IsoError::Domain(format!("rho_d needs d >= 3, got {d}")));
    }
    if samples < 10_000 {
        return Err(IsoError::Domain(format!(
            "at least 10^4 samples required, got {samples}"
        )));
    }
    let omega = omega_sphere(d)?;
    if !(t > 0.0 && t < omega / 2.0) {
        return Err(IsoError::Domain(format!(
            "simplex area {t} outside the attainable range (0, {})",
            omega / 2.0
        )));
    }
    let dim = d as usize;

    // Fixed sample set for the area bisection (common random numbers).
    let per = samples / STREAMS;
    let bisect_samples: Vec<Vec<f64>> = (0..STREAMS)
        .into_par_iter()
        .flat_map_iter(|stream| {
            let mut rng = stream_rng(seed, 0x3000 + stream);
            let count = if stream == STREAMS - 1 {
                samples - per * (STREAMS - 1)
            } else {
                per
            };
            (0..count)
                .map(|_| sample_sphere(&mut rng, dim))
                .collect::<Vec<_>>()
        })
        .collect();

    let area_of = |c: f64| -> Result<f64, IsoError> {
        let simplex = SimplexCone::new(dim, c)?;
        let hits = bisect_samples
            .par_iter()
            .filter(|w| simplex.contains(w))
            .count();
        Ok(omega * hits as f64 / bisect_samples.len() as f64)
    };

    // The area decreases in c; bracket and bisect.
    let c_min = -1.0 / (dim as f64 - 1.0) + 1e-9;
    let c_max = 1.0 - 1e-9;
    let (mut lo, mut hi) = (c_min, c_max);
    let area_lo = area_of(lo)?;
    if t > area_lo {
        return Err(IsoError::Domain(format!(
            "simplex area {t} exceeds the attainable maximum ≈ {area_lo}"
        )));
    }
    let mut c_star = 0.5 * (lo + hi);
    for _ in 0..200 {
        c_star = 0.5 * (lo + hi);
        let a = area_of(c_star)?;
        if (a - t).abs() <= 1e-4 {
            break;
        }
        if a > t {
            lo = c_star;
        } else {
            hi = c_star;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    let area_err = omega * (0.25 / bisect_samples.len() as f64).sqrt();

    // Lift integral on an independent stream.
    let integral = |c: f64, tag: u64, n_total: u64| -> Result<McEstimate, IsoError> {
        let simplex = SimplexCone::new(dim, c)?;
        let per = n_total / STREAMS;
        let partials: Vec<Result<(f64, f64, u64), IsoError>> = (0..STREAMS)
            .into_par_iter()
            .map(|stream| {
                let mut rng = stream_rng(seed, tag + stream);
                let count = if stream == STREAMS - 1 {
                    n_total - per * (STREAMS - 1)
                } else {
                    per
                };
                let mut sum = 0.0;
                let mut sq = 0.0;
                for _ in 0..count {
                    let w = sample_sphere(&mut rng, dim);
                    if !simplex.contains(&w) {
                        continue;
                    }
                    let cosine = simplex.max_vertex_dot(&w);
                    if cosine <= 1e-9 {
                        return Err(IsoError::MonteCarlo(
                            "simplex reaches 90° from its vertices; lift diverges".into(),
                        ));
                    }
                    let val = cosine.powi(-(dim as i32));
                    sum += val;
                    sq += val * val;
                }
                Ok((sum, sq, count))
            })
            .collect();
        let mut sum = 0.0;
        let mut sq = 0.0;
        let mut n = 0u64;
        for p in partials {
            let (s, q, c) = p?;
            sum += s;
            sq += q;
            n += c;
        }
        let mean = sum / n as f64;
        let var = (sq / n as f64 - mean * mean).max(0.0);
        Ok(McEstimate {
            value: omega * mean,
            stderr: omega * (var / n as f64).sqrt(),
        })
    };
    let main = integral(c_star, 0x4000, samples)?;

    // Slope dρ/dt from a coarse bracket, to fold the area-matching
    // uncertainty into the reported standard error.
    let dc = 0.02_f64.min((c_max - c_star).abs() / 2.0).max(1e-4);
    let c_a = (c_star - dc).max(c_min);
    let c_b = (c_star + dc).min(c_max);
    let coarse = (samples / 8).max(10_000);
    let rho_a = integral(c_a, 0x5000, coarse)?;
    let rho_b = integral(c_b, 0x6000, coarse)?;
    let t_a = area_of(c_a)?;
    let t_b = area_of(c_b)?;
    let slope = if (t_a - t_b).abs() > 1e-12 {
        (rho_a.value - rho_b.value) / (t_a - t_b)
    } else {
        0.0
    };
    let stderr = main
        .stderr
        .hypot(slope * (area_err + 1e-4))
        .max(main.stderr);

    Ok(McEstimate {
        value: main.value,
        stderr,
    })
}

/// Regular spherical simplex: d unit vectors in R^d with common pairwise
/// inner product c, realized as v_i = p e_i + q·1 and queried through the
/// inverse of the vertex matrix.
struct SimplexCone {
    vertices: Vec<Vec<f64>>,
    inverse: Vec<Vec<f64>>,
}

impl SimplexCone {
    fn new(d: usize, c: f64) -> Result<Self, IsoError> {
        let disc = 1.0 + (d as f64 - 1.0) * c;
        if disc <= 0.0 || c >= 1.0 {
            return Err(IsoError::Domain(format!(
                "no regular simplex with inner product {c} in dimension {d}"
            )));
        }
        let p = (1.0 - c).sqrt();
        let q = (disc.sqrt() - p) / d as f64;
        let vertices: Vec<Vec<f64>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| if i == j { p + q } else { q })
                    .collect()
            })
            .collect();
        // Invert the vertex matrix (columns v_i) by Gauss–Jordan.
        let mut a: Vec<Vec<f64>> = (0..d)
            .map(|r| (0..d).map(|ccol| vertices[ccol][r]).collect())
            .collect();
        let mut inv: Vec<Vec<f64>> = (0..d)
            .map(|r| (0..d).map(|ccol| if r == ccol { 1.0 } else { 0.0 }).collect())
            .collect();
        for col in 0..d {
            let mut piv = col;
            for r in col + 1..d {
                if a[r][col].abs() > a[piv][col].abs() {
                    piv = r;
                }
            }
            if a[piv][col].abs() < 1e-14 {
                return Err(IsoError::Domain("degenerate simplex matrix".into()));
            }
            a.swap(col, piv);
            inv.swap(col, piv);
            let scale = a[col][col];
            for j in 0..d {
                a[col][j] /= scale;
                inv[col][j] /= scale;
            }
            for r in 0..d {
                if r != col {
                    let factor = a[r][col];
                    for j in 0..d {
                        a[r][j] -= factor * a[col][j];
                        inv[r][j] -= factor * inv[col][j];
                    }
                }
            }
        }
        Ok(SimplexCone {
            vertices,
            inverse: inv,
        })
    }

    /// ω lies in the cone spanned by the vertices iff M⁻¹ω ≥ 0.
    fn contains(&self, w: &[f64]) -> bool {
        self.inverse.iter().all(|row| {
            row.iter().zip(w.iter()).map(|(a, b)| a * b).sum::<f64>() >= -1e-12
        })
    }

    fn max_vertex_dot(&self, w: &[f64]) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.iter().zip(w.iter()).map(|(a, b)| a * b).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Evaluation of the conjectured isoperimetric bounds in dimension d: the
/// vertex form Ω_d/(v·ρ_d(Ω_d/v)) and the facet form τ/ρ_d(τ) with
/// τ = Ω_d/h_d(n). Reported with margins, never asserted.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub dimension: u32,
    pub vertex_count: u64,
    pub facet_count: u64,
    pub iq: McEstimate,
    /// Right side of the conjectured bound through the vertex count.
    pub vertex_form_rhs: McEstimate,
    /// Right side of the conjectured bound through the facet count.
    pub facet_form_rhs: McEstimate,
    /// Always "conjectured bound": these are open problems.
    pub label: String,
}

impl ConjectureReport {
    pub fn vertex_margin(&self) -> f64 {
        self.vertex_form_rhs.value - self.iq.value
    }

    pub fn facet_margin(&self) -> f64 {
        self.facet_form_rhs.value - self.iq.value
    }

    /// Combined 1σ uncertainty on the vertex-form margin.
    pub fn vertex_margin_stderr(&self) -> f64 {
        self.iq.stderr.hypot(self.vertex_form_rhs.stderr)
    }

    pub fn facet_margin_stderr(&self) -> f64 {
        self.iq.stderr.hypot(self.facet_form_rhs.stderr)
    }
}

/// Build the conjectured-bound report for a body with the given measured IQ,
/// vertex count v, and facet count n. In dimension 3 the lifted areas are
/// exact; higher dimensions use `rho_d` with the given sample budget.
pub fn conjectured_iq_report(
    iq: McEstimate,
    d: u32,
    vertex_count: u64,
    facet_count: u64,
    samples: u64,
    seed: u64,
) -> Result<ConjectureReport, IsoError> {
    let omega = omega_sphere(d)?;
    let tau_v = omega / vertex_count as f64;
    let h = upper_bound_vertices(d, facet_count)?;
    let tau_f = omega / h as f64;

    let bound_at = |tau: f64, tag: u64| -> Result<McEstimate, IsoError> {
        if d == 3 {
            Ok(McEstimate {
                value: tau / rho(tau)?,
                stderr: 0.0,
            })
        } else {
            let r = rho_d(d, tau, samples, seed ^ tag)?;
            let value = tau / r.value;
            Ok(McEstimate {
                value,
                stderr: value * r.stderr / r.value,
            })
        }
    };

    Ok(ConjectureReport {
        dimension: d,
        vertex_count,
        facet_count,
        iq,
        vertex_form_rhs: bound_at(tau_v, 0x11)?,
        facet_form_rhs: bound_at(tau_f, 0x22)?,
        label: "conjectured bound".to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sphere_areas() {
        assert_abs_diff_eq!(omega_sphere(2).unwrap(), 2.0 * PI, epsilon = 1e-12);
        assert_abs_diff_eq!(omega_sphere(3).unwrap(), 4.0 * PI, epsilon = 1e-12);
        assert_abs_diff_eq!(omega_sphere(4).unwrap(), 2.0 * PI * PI, epsilon = 1e-12);
        assert!(omega_sphere(1).is_err());
    }

    #[test]
    fn upper_bound_theorem_values() {
        for n in 4..=100 {
            assert_eq!(upper_bound_vertices(3, n).unwrap(), 2 * n - 4);
        }
        assert_eq!(upper_bound_vertices(4, 5).unwrap(), 5);
        assert!(upper_bound_vertices(3, 3).is_err());
    }

    #[test]
    fn rho_d_matches_exact_rho_on_the_octant() {
        let est = rho_d(3, PI / 2.0, 200_000, 11).unwrap();
        assert!(
            (est.value - 3.0).abs() < 3.0 * est.stderr,
            "estimate {} ± {}",
            est.value,
            est.stderr
        );
    }

    #[test]
    fn mc_circumscription_of_the_cube() {
        let code = crate::solids::octahedron_vertices();
        let body = circumscribe_monte_carlo(&code, 400_000, 5).unwrap();
        assert!((body.surface_area.value - 24.0).abs() < 4.0 * body.surface_area.stderr);
        assert!(body.volume_identity_sigma() < 4.0);
        let iq = body.iq().unwrap();
        assert!((iq.value - PI / 6.0).abs() < 4.0 * iq.stderr);
    }

    #[test]
    fn unbounded_mc_detection() {
        let rows = vec![
            vec![0.0, 0.0, 1.0],
            vec![0.8, 0.0, 0.6],
            vec![-0.8, 0.0, 0.6],
            vec![0.0, 0.8, 0.6],
        ];
        let code = SphericalCode::from_rows(&rows).unwrap();
        assert!(matches!(
            circumscribe_monte_carlo(&code, 50_000, 1),
            Err(IsoError::Unbounded)
        ));
    }

    #[test]
    fn four_dimensional_simplex_body() {
        // Five tangency points at regular 4-simplex directions.
        let c = -0.25;
        let p = (1.0_f64 - c).sqrt();
        let q = ((1.0 + 3.0 * c).sqrt() - p) / 4.0;
        let mut rows: Vec<Vec<f64>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| if i == j { p + q } else { q })
                    .collect()
            })
            .collect();
        // Fifth vertex: the negative sum direction completes the simplex.
        let sum: Vec<f64> = (0..4).map(|j| -rows.iter().map(|r| r[j]).sum::<f64>()).collect();
        let n = sum.iter().map(|x| x * x).sum::<f64>().sqrt();
        rows.push(sum.iter().map(|x| x / n).collect());
        let code = SphericalCode::from_rows(&rows).unwrap();
        let body = circumscribe_monte_carlo(&code, 200_000, 9).unwrap();
        let iq = body.iq().unwrap();
        assert!(iq.value > 0.0 && iq.value < 1.0);
        assert!(body.volume_identity_sigma() < 4.0);
    }
}
