// Float helpers routed through libm so results do not depend on the platform
// libm or on whether `std` is enabled.

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn asin(x: f64) -> f64 {
    libm::asin(x.clamp(-1.0, 1.0))
}

#[inline]
pub(crate) fn acos(x: f64) -> f64 {
    libm::acos(x.clamp(-1.0, 1.0))
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub(crate) fn tan(x: f64) -> f64 {
    libm::tan(x)
}

#[inline]
pub(crate) fn cbrt(x: f64) -> f64 {
    libm::cbrt(x)
}

#[inline]
pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub(crate) fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

/// `ceil(x)` that ignores representation noise just above an integer, e.g.
/// `0.3 * 10.0 = 3.0000000000000004` maps to 3.
pub(crate) fn ceil_tolerant(x: f64) -> usize {
    ceil(x - 1e-9).max(0.0) as usize
}

/// `floor(x)` that ignores representation noise just below an integer.
pub(crate) fn floor_tolerant(x: f64) -> usize {
    floor(x + 1e-9).max(0.0) as usize
}
