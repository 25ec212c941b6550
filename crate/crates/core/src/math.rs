// Float helpers routed through libm so the crate builds without std.

pub(crate) use core::f64::consts::{PI, TAU};

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn sin_cos(x: f64) -> (f64, f64) {
    libm::sincos(x)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub(crate) fn tan(x: f64) -> f64 {
    libm::tan(x)
}

/// Fractional part of `x`, in `[0, 1)`.
#[inline]
pub(crate) fn fract(x: f64) -> f64 {
    let f = x - libm::floor(x);
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// `sqrt(a^2 + c^2) - sqrt(b^2 + c^2)` without cancellation.
#[inline]
pub(crate) fn hypot_difference(c: f64, a: f64, b: f64) -> f64 {
    let ha = libm::hypot(c, a);
    let hb = libm::hypot(c, b);
    (a - b) * (a + b) / (ha + hb)
}
