//! Float math shims so the crate builds both with `std` and with `libm`.

#[cfg(feature = "std")]
mod imp {
    pub fn sqrt(x: f64) -> f64 {
        x.sqrt()
    }
    pub fn hypot(x: f64, y: f64) -> f64 {
        x.hypot(y)
    }
    pub fn exp(x: f64) -> f64 {
        x.exp()
    }
    pub fn ln(x: f64) -> f64 {
        x.ln()
    }
    pub fn abs(x: f64) -> f64 {
        x.abs()
    }
    pub fn round(x: f64) -> f64 {
        x.round()
    }
}

#[cfg(all(not(feature = "std"), feature = "libm"))]
mod imp {
    pub fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }
    pub fn hypot(x: f64, y: f64) -> f64 {
        libm::hypot(x, y)
    }
    pub fn exp(x: f64) -> f64 {
        libm::exp(x)
    }
    pub fn ln(x: f64) -> f64 {
        libm::log(x)
    }
    pub fn abs(x: f64) -> f64 {
        libm::fabs(x)
    }
    pub fn round(x: f64) -> f64 {
        libm::round(x)
    }
}

pub(crate) use imp::{abs, exp, hypot, ln, round, sqrt};

/// `|z|` without relying on feature-gated `Complex` methods.
pub(crate) fn cabs(z: num_complex::Complex64) -> f64 {
    hypot(z.re, z.im)
}

/// Fortran-style transfer of sign: `|a|` with the sign of `b`.
pub(crate) fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        abs(a)
    } else {
        -abs(a)
    }
}
