//! Fixed-size 3-vector arithmetic used on the hot d=3 paths.

pub type V3 = [f64; 3];

#[inline]
pub fn add(a: V3, b: V3) -> V3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn scale(a: V3, s: f64) -> V3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

#[inline]
pub fn neg(a: V3) -> V3 {
    [-a[0], -a[1], -a[2]]
}

#[inline]
pub fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn norm(a: V3) -> f64 {
    dot(a, a).sqrt()
}

pub fn normalize(a: V3) -> Option<V3> {
    let n = norm(a);
    if n < 1e-14 {
        None
    } else {
        Some(scale(a, 1.0 / n))
    }
}

/// Angle between unit vectors via atan2(|u×v|, u·v); stable near 0 and π.
#[inline]
pub fn angle(u: V3, v: V3) -> f64 {
    norm(cross(u, v)).atan2(dot(u, v))
}

/// Component of `v` orthogonal to the unit vector `at`.
#[inline]
pub fn tangential(at: V3, v: V3) -> V3 {
    sub(v, scale(at, dot(at, v)))
}
