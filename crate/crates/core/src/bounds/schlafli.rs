//! The recursive Schläfli-type function family behind the Coxeter–Böröczky
//! bound, and the bound itself.
//!
//! The family is F_0(α) = F_1(α) = 1 and
//!
//! ```text
//! F_{n+1}(α) = (2/π) ∫_{arcsec(n)/2}^{α} F_{n−1}(β) dθ,   sec 2β = sec 2θ − 2,
//! ```
//!
//! and the bound on the size of a φ-code in S^{n-1} is
//! 2 F_{n−1}(α) / F_n(α) with sec 2α = sec φ + n − 2.
//!
//! Near its lower limit L_k = arcsec(k−1)/2 the level-k integrand behaves
//! like √(θ − L_k), so all quadrature is done in the substituted variable
//! u = √(θ − L_k), in which every level is analytic; Gauss–Legendre panels
//! then converge at machine precision. Levels four and up are memoized on a
//! 256-node Chebyshev grid (in u) and evaluated by barycentric
//! interpolation; levels two and three have closed forms 2α/π and
//! (2/π)(α − π/6).

use super::BoundsError;
use crate::quad::{adaptive_gl, Chebyshev};
use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::{Arc, Mutex, OnceLock};

const CHEB_NODES: usize = 256;
const QUAD_TOL: f64 = 1e-13;

/// arcsec on [1, ∞).
fn arcsec(x: f64) -> f64 {
    (1.0 / x).clamp(-1.0, 1.0).acos()
}

/// Lower integration limit of level k: arcsec(k−1)/2.
fn lower_limit(k: u32) -> f64 {
    arcsec((k - 1) as f64) / 2.0
}

/// β(θ) from sec 2β = sec 2θ − 2. Arguments below 1 by more than 1e−12 are
/// rejected by the recursion's limits; within that slack they clamp to 1
/// (β = 0), removing roundoff at the lower endpoint.
fn beta_of(theta: f64) -> f64 {
    let arg = 1.0 / (2.0 * theta).cos() - 2.0;
    debug_assert!(arg > 1.0 - 1e-9, "beta substitution left its domain");
    arcsec(arg.max(1.0)) / 2.0
}

struct Level {
    cheb: Chebyshev,
    /// Accumulated error estimate for values interpolated at this level.
    err: f64,
}

fn level_cache() -> &'static Mutex<HashMap<u32, Arc<Level>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Level>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Evaluate F_k(α) from closed forms (k ≤ 3) or the memoized interpolant.
/// Values below the lower limit are 0 by convention.
fn eval_level(k: u32, alpha: f64, levels: &HashMap<u32, Arc<Level>>) -> f64 {
    match k {
        0 | 1 => 1.0,
        2 => 2.0 * alpha / PI,
        3 => {
            let l = lower_limit(3);
            if alpha <= l {
                0.0
            } else {
                2.0 / PI * (alpha - l)
            }
        }
        _ => {
            let l = lower_limit(k);
            if alpha <= l {
                return 0.0;
            }
            let u = (alpha - l).sqrt();
            let lev = levels.get(&k).expect("level built before use");
            let (_, hi) = lev.cheb.domain();
            lev.cheb.eval(u.min(hi))
        }
    }
}

/// Direct quadrature of level k at α, using lower levels from `levels`.
fn quad_level(k: u32, alpha: f64, levels: &HashMap<u32, Arc<Level>>) -> (f64, f64) {
    debug_assert!(k >= 2);
    let l = lower_limit(k);
    if alpha <= l {
        return (0.0, 0.0);
    }
    let upper = (alpha - l).sqrt();
    let inner = k - 2;
    let integrand = |u: f64| {
        let theta = l + u * u;
        let f = if inner <= 1 {
            1.0
        } else {
            eval_level(inner, beta_of(theta), levels)
        };
        f * 2.0 * u
    };
    let q = adaptive_gl(&integrand, 0.0, upper, QUAD_TOL);
    (2.0 / PI * q.value, 2.0 / PI * q.error)
}

/// Ensure interpolants exist for levels 4..=k; returns a snapshot of the
/// cache including them. Results are independent of thread interleaving:
/// every build produces the same table.
fn ensure_levels(k: u32) -> HashMap<u32, Arc<Level>> {
    let mut have: HashMap<u32, Arc<Level>> = level_cache().lock().unwrap().clone();
    for lev in 4..=k.max(3) {
        if have.contains_key(&lev) {
            continue;
        }
        let l = lower_limit(lev);
        let u_max = (FRAC_PI_4 - l).sqrt();
        let mut quad_err: f64 = 0.0;
        let cheb = Chebyshev::fit(0.0, u_max, CHEB_NODES, |u| {
            let (v, e) = quad_level(lev, l + u * u, &have);
            quad_err = quad_err.max(e);
            v
        });
        // Validate the interpolant against direct quadrature off-grid.
        let candidate = Level { cheb, err: 0.0 };
        let mut probe_err: f64 = 0.0;
        for &frac in &[0.043, 0.17, 0.39, 0.58, 0.81, 0.965] {
            let alpha = l + (u_max * frac).powi(2);
            let (direct, _) = quad_level(lev, alpha, &have);
            let interp = candidate.cheb.eval((alpha - l).sqrt());
            probe_err = probe_err.max((direct - interp).abs());
        }
        let inherited = if lev >= 6 {
            have.get(&(lev - 2)).map(|p| p.err).unwrap_or(0.0)
        } else {
            0.0
        };
        let level = Arc::new(Level {
            cheb: candidate.cheb,
            err: probe_err + quad_err + inherited,
        });
        have.insert(lev, level.clone());
        level_cache().lock().unwrap().entry(lev).or_insert(level);
    }
    have
}

/// Value of F_n(α) with its accumulated error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchlafliValue {
    pub value: f64,
    pub error_estimate: f64,
    /// α was below the level's lower integration limit; the value is 0 by
    /// convention.
    pub below_domain: bool,
}

/// Evaluate the Schläfli-type function F_n(α) by recursive quadrature with
/// memoized lower levels.
pub fn schlafli_f(n: u32, alpha: f64) -> Result<SchlafliValue, BoundsError> {
    if !(0.0..=FRAC_PI_4 + 1e-12).contains(&alpha) {
        return Err(BoundsError::Domain(format!(
            "schlafli_f needs alpha in [0, π/4], got {alpha}"
        )));
    }
    if n > 64 {
        return Err(BoundsError::Domain(format!(
            "schlafli_f supports n <= 64, got {n}"
        )));
    }
    let alpha = alpha.min(FRAC_PI_4);
    if n <= 1 {
        return Ok(SchlafliValue {
            value: 1.0,
            error_estimate: 0.0,
            below_domain: false,
        });
    }
    if alpha < lower_limit(n) {
        return Ok(SchlafliValue {
            value: 0.0,
            error_estimate: 0.0,
            below_domain: true,
        });
    }
    let levels = ensure_levels(n.saturating_sub(2));
    let (value, quad_err) = quad_level(n, alpha, &levels);
    let inherited = if n >= 6 {
        levels.get(&(n - 2)).map(|l| l.err).unwrap_or(0.0)
    } else {
        0.0
    };
    if !value.is_finite() {
        return Err(BoundsError::Quadrature(format!(
            "schlafli_f({n}, {alpha}) did not converge"
        )));
    }
    Ok(SchlafliValue {
        value,
        error_estimate: quad_err + inherited,
        below_domain: false,
    })
}

/// The Coxeter–Böröczky bound 2 F_{n−1}(α)/F_n(α) on the maximal size of a
/// spherical φ-code in S^{n−1}, with sec 2α = sec φ + n − 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoxeterBound {
    pub value: f64,
    pub error_estimate: f64,
    /// The α solving sec 2α = sec φ + n − 2.
    pub alpha: f64,
}

impl CoxeterBound {
    /// Floor with 1e−9 slack, the integer form of the bound.
    pub fn integer(&self) -> i64 {
        super::integer_bound(self.value)
    }
}

pub fn coxeter_bound(n: u32, phi: f64) -> Result<CoxeterBound, BoundsError> {
    if n < 3 {
        return Err(BoundsError::Domain(format!(
            "coxeter_bound needs n >= 3, got {n}"
        )));
    }
    if !(phi > 0.0 && phi < PI) {
        return Err(BoundsError::Domain(format!(
            "coxeter_bound needs phi in (0, π), got {phi}"
        )));
    }
    let sec_phi = 1.0 / phi.cos();
    let arg = sec_phi + (n as f64 - 2.0);
    if !(arg >= 1.0) {
        return Err(BoundsError::Domain(format!(
            "sec φ + n − 2 = {arg} < 1: bound undefined"
        )));
    }
    let alpha = arcsec(arg) / 2.0;
    if alpha + 1e-15 < lower_limit(n - 1) {
        return Err(BoundsError::Domain(format!(
            "alpha = {alpha} below the recursion's lower limit for n = {n}"
        )));
    }
    let num = schlafli_f(n - 1, alpha)?;
    let den = schlafli_f(n, alpha)?;
    if den.value <= 0.0 {
        return Err(BoundsError::Quadrature(format!(
            "denominator F_{n}({alpha}) vanished"
        )));
    }
    let value = 2.0 * num.value / den.value;
    // First-order error propagation through the quotient.
    let err = value
        * ((num.error_estimate / num.value.max(1e-300)).abs()
            + (den.error_estimate / den.value).abs());
    Ok(CoxeterBound {
        value,
        error_estimate: err,
        alpha,
    })
}

/// The α-angle below which the level-n recursion is identically zero;
/// exposed for the guide and diagnostics.
pub fn schlafli_lower_limit(n: u32) -> f64 {
    if n <= 1 {
        0.0
    } else {
        lower_limit(n)
    }
}

/// Closed form of F_2 used in cross-checks: 2α/π.
pub fn schlafli_f2_closed(alpha: f64) -> f64 {
    2.0 * alpha / PI
}

/// Closed form of F_3: (2/π)(α − π/6) above its lower limit, else 0.
pub fn schlafli_f3_closed(alpha: f64) -> f64 {
    let l = arcsec(2.0) / 2.0;
    if alpha <= l {
        0.0
    } else {
        2.0 / PI * (alpha - l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn initial_conditions() {
        for &a in &[0.0, 0.3, FRAC_PI_4] {
            assert_eq!(schlafli_f(0, a).unwrap().value, 1.0);
            assert_eq!(schlafli_f(1, a).unwrap().value, 1.0);
        }
    }

    #[test]
    fn level_two_matches_its_closed_form() {
        for k in 0..=16 {
            let a = FRAC_PI_4 * k as f64 / 16.0;
            let v = schlafli_f(2, a).unwrap();
            assert_abs_diff_eq!(v.value, schlafli_f2_closed(a), epsilon = 1e-10);
            assert!(v.error_estimate < 1e-10);
        }
    }

    #[test]
    fn level_three_matches_its_closed_form_and_flags_below_domain() {
        let below = schlafli_f(3, 0.5).unwrap();
        assert!(below.below_domain);
        assert_eq!(below.value, 0.0);
        for &a in &[0.55, 0.6, 0.7, FRAC_PI_4] {
            let v = schlafli_f(3, a).unwrap();
            assert_abs_diff_eq!(v.value, schlafli_f3_closed(a), epsilon = 1e-12);
        }
    }

    #[test]
    fn coxeter_bound_at_sixty_degrees_matches_the_planar_code_bound() {
        // In S², the bound coincides with 2π/Δ(φ) + 2 analytically.
        let b = coxeter_bound(3, PI / 3.0).unwrap();
        let ft = super::super::ft_code_bound(PI / 3.0).unwrap();
        assert_abs_diff_eq!(b.value, ft, epsilon = 1e-9);
        assert!(b.value > 13.0 && b.value < 14.0);
    }

    #[test]
    fn kissing_number_floors() {
        let expect = [(4u32, 26i64), (5, 48), (6, 85), (7, 146), (8, 244)];
        for &(n, floor) in &expect {
            let b = coxeter_bound(n, PI / 3.0).unwrap();
            assert_eq!(b.integer(), floor, "n = {n} gave {}", b.value);
            assert!(b.error_estimate < 1e-6);
        }
    }

    #[test]
    fn six_hundred_cell_case_is_exact() {
        let b = coxeter_bound(4, PI / 5.0).unwrap();
        assert_abs_diff_eq!(b.value, 120.0, epsilon = 1e-7);
        assert_eq!(b.integer(), 120);
    }

    #[test]
    fn domain_errors() {
        assert!(coxeter_bound(2, PI / 3.0).is_err());
        assert!(coxeter_bound(3, -0.1).is_err());
        assert!(schlafli_f(4, 1.0).is_err());
    }
}
