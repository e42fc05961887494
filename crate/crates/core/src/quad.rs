//! One-dimensional quadrature and interpolation helpers shared by the bound
//! evaluators and the projection-area integrals.

use std::sync::OnceLock;

/// Value of a numerical integral together with an accumulated error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
}

impl QuadResult {
    pub const ZERO: QuadResult = QuadResult { value: 0.0, error: 0.0 };
}

/// Adaptive Simpson quadrature with an absolute tolerance per call and a
/// recursion depth cap. Returns the estimate and the accumulated error bound.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: u32,
) -> QuadResult {
    if a == b {
        return QuadResult::ZERO;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    m: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> QuadResult {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return QuadResult {
            value: left + right + delta / 15.0,
            error: delta.abs() / 15.0,
        };
    }
    let l = simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1);
    let r = simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
    QuadResult {
        value: l.value + r.value,
        error: l.error + r.error,
    }
}

/// Gauss–Legendre nodes and weights on [-1, 1], computed once by Newton
/// iteration on the Legendre recurrence.
fn legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        // Chebyshev-based initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Evaluate P_n(x) and P'_n(x).
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let mut p0 = 1.0;
        let mut p1 = x;
        for k in 2..=n {
            let kf = k as f64;
            let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn rule_16() -> &'static (Vec<f64>, Vec<f64>) {
    static R: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    R.get_or_init(|| legendre_rule(16))
}

fn rule_32() -> &'static (Vec<f64>, Vec<f64>) {
    static R: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    R.get_or_init(|| legendre_rule(32))
}

fn gl_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rule: &(Vec<f64>, Vec<f64>)) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in rule.0.iter().zip(rule.1.iter()) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Adaptive Gauss–Legendre quadrature: each panel is integrated with 16- and
/// 32-point rules, the difference serving as the error estimate; panels are
/// bisected until the estimate meets the absolute tolerance. Converges at
/// machine precision on analytic integrands with a handful of panels.
pub fn adaptive_gl<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> QuadResult {
    if a == b {
        return QuadResult::ZERO;
    }
    let mut stack = vec![(a, b, tol)];
    let mut total = 0.0;
    let mut err = 0.0;
    let mut depth_guard = 0usize;
    while let Some((lo, hi, t)) = stack.pop() {
        depth_guard += 1;
        let coarse = gl_panel(f, lo, hi, rule_16());
        let fine = gl_panel(f, lo, hi, rule_32());
        let e = (fine - coarse).abs();
        if e <= t || (hi - lo) < 1e-14 || depth_guard > 4096 {
            total += fine;
            err += e.max(f64::EPSILON * fine.abs());
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, 0.5 * t));
            stack.push((mid, hi, 0.5 * t));
        }
    }
    QuadResult { value: total, error: err }
}

/// Chebyshev–Lobatto interpolant on [a, b] evaluated by the barycentric
/// formula. Node values are supplied by the fitting closure.
#[derive(Debug, Clone)]
pub struct Chebyshev {
    a: f64,
    b: f64,
    nodes: Vec<f64>,
    values: Vec<f64>,
}

impl Chebyshev {
    pub fn fit<F: FnMut(f64) -> f64>(a: f64, b: f64, n: usize, mut f: F) -> Self {
        assert!(n >= 2 && b > a);
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut nodes = Vec::with_capacity(n);
        let mut values = Vec::with_capacity(n);
        for j in 0..n {
            // Lobatto points, descending cosine order mapped onto [a, b].
            let x = mid - half * (std::f64::consts::PI * j as f64 / (n - 1) as f64).cos();
            let x = x.clamp(a, b);
            nodes.push(x);
            values.push(f(x));
        }
        Chebyshev { a, b, nodes, values }
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.nodes.len();
        let mut num = 0.0;
        let mut den = 0.0;
        for j in 0..n {
            let dx = x - self.nodes[j];
            if dx.abs() < 1e-300 {
                return self.values[j];
            }
            // Lobatto barycentric weights: (-1)^j, halved at the ends.
            let mut w = if j % 2 == 0 { 1.0 } else { -1.0 };
            if j == 0 || j == n - 1 {
                w *= 0.5;
            }
            let q = w / dx;
            num += q * self.values[j];
            den += q;
        }
        num / den
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn simpson_integrates_smooth_functions() {
        let r = adaptive_simpson(&|x: f64| x.sin(), 0.0, PI, 1e-12, 40);
        assert!((r.value - 2.0).abs() < 1e-10);
        assert!(r.error < 1e-9);
    }

    #[test]
    fn gl_reaches_machine_precision_on_analytic_integrands() {
        let r = adaptive_gl(&|x: f64| (3.0 * x).cos() * x.exp(), 0.0, 2.0, 1e-13);
        // Antiderivative of e^x cos 3x: e^x (cos 3x + 3 sin 3x)/10.
        let exact = |x: f64| x.exp() * ((3.0 * x).cos() + 3.0 * (3.0 * x).sin()) / 10.0;
        assert!((r.value - (exact(2.0) - exact(0.0))).abs() < 1e-12);
    }

    #[test]
    fn chebyshev_interpolates_analytic_functions() {
        let c = Chebyshev::fit(0.0, 1.0, 64, |x| (2.0 * x).sin() + x * x);
        for k in 0..97 {
            let x = k as f64 / 96.0;
            assert!((c.eval(x) - ((2.0 * x).sin() + x * x)).abs() < 1e-13);
        }
    }
}
