//! Scalar float math, routed through std or libm depending on features.

#[cfg(feature = "std")]
mod imp {
    pub fn abs(x: f64) -> f64 {
        x.abs()
    }
    pub fn sqrt(x: f64) -> f64 {
        x.sqrt()
    }
    pub fn exp(x: f64) -> f64 {
        x.exp()
    }
    pub fn ln(x: f64) -> f64 {
        x.ln()
    }
    pub fn sin(x: f64) -> f64 {
        x.sin()
    }
    pub fn cos(x: f64) -> f64 {
        x.cos()
    }
    pub fn atan(x: f64) -> f64 {
        x.atan()
    }
    pub fn powf(x: f64, p: f64) -> f64 {
        x.powf(p)
    }
}

#[cfg(all(not(feature = "std"), feature = "libm"))]
mod imp {
    pub fn abs(x: f64) -> f64 {
        libm::fabs(x)
    }
    pub fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }
    pub fn exp(x: f64) -> f64 {
        libm::exp(x)
    }
    pub fn ln(x: f64) -> f64 {
        libm::log(x)
    }
    pub fn sin(x: f64) -> f64 {
        libm::sin(x)
    }
    pub fn cos(x: f64) -> f64 {
        libm::cos(x)
    }
    pub fn atan(x: f64) -> f64 {
        libm::atan(x)
    }
    pub fn powf(x: f64, p: f64) -> f64 {
        libm::pow(x, p)
    }
}

pub(crate) use imp::*;

/// Integer power by repeated squaring; `0^0 = 1` by convention.
pub(crate) fn powi(x: f64, k: i32) -> f64 {
    let mut base = if k < 0 { 1.0 / x } else { x };
    let mut exp = k.unsigned_abs();
    let mut acc = 1.0;
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= base;
        }
        base *= base;
        exp >>= 1;
    }
    acc
}

/// `k!` for `k = 0..=MAX_ORDER`, built at compile time. `171!` would
/// overflow, which is what caps [`crate::MAX_ORDER`].
const FACTORIALS: [f64; crate::MAX_ORDER + 1] = {
    let mut table = [1.0; crate::MAX_ORDER + 1];
    let mut k = 1;
    while k <= crate::MAX_ORDER {
        table[k] = table[k - 1] * k as f64;
        k += 1;
    }
    table
};

/// `k!` as an `f64`.
///
/// # Panics
///
/// Panics for `k > MAX_ORDER`; callers validate orders first.
pub(crate) fn factorial(k: usize) -> f64 {
    FACTORIALS[k]
}
