//! Elementary functions routed through `libm` so results are the same with or
//! without `std`, plus the few complex helpers the analytics need.

use num_complex::Complex64;

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn expm1(x: f64) -> f64 {
    libm::expm1(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn ln_1p(x: f64) -> f64 {
    libm::log1p(x)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

/// `e^{iθ}`.
#[inline]
pub fn cis(theta: f64) -> Complex64 {
    let (s, c) = libm::sincos(theta);
    Complex64::new(c, s)
}

pub fn cexp(z: Complex64) -> Complex64 {
    cis(z.im) * exp(z.re)
}

/// Principal square root.
pub fn csqrt(z: Complex64) -> Complex64 {
    if z.re == 0.0 && z.im == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let r = libm::hypot(z.re, z.im);
    if z.re >= 0.0 {
        let a = sqrt(0.5 * (r + z.re));
        Complex64::new(a, z.im / (2.0 * a))
    } else {
        let b = sqrt(0.5 * (r - z.re));
        let b = if z.im < 0.0 { -b } else { b };
        Complex64::new(z.im / (2.0 * b), b)
    }
}

#[inline]
pub fn cabs(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}
