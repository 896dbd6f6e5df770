//! Overflow-safe hyperbolic helpers.

use libm::{exp, log, log1p, sinh};

/// Above this argument `ln sinh` switches to the asymptotic form.
pub const LOG_SINH_SWITCH: f64 = 30.0;

/// ln(sinh x) for x > 0.
///
/// Uses `x + ln(1 - e^{-2x}) - ln 2` above [`LOG_SINH_SWITCH`], so the result
/// stays finite long after `sinh` itself overflows (x ≳ 710).
pub fn ln_sinh(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x > LOG_SINH_SWITCH {
        x + log1p(-exp(-2.0 * x)) - core::f64::consts::LN_2
    } else if x < 1e-4 {
        let x2 = x * x;
        log(x) + log1p(x2 / 6.0 + x2 * x2 / 120.0)
    } else {
        log(sinh(x))
    }
}

/// ln((x / sinh x)²), the logarithm of the thermal suppression factor.
/// Zero at x = 0, monotonically decreasing for x > 0.
pub fn ln_x_over_sinh_squared(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    2.0 * (log(x) - ln_sinh(x))
}

/// 1/sinh²(x) evaluated as exp(-2 ln sinh x); zero when it underflows.
pub fn inv_sinh_squared(x: f64) -> f64 {
    if x > LOG_SINH_SWITCH {
        exp(-2.0 * ln_sinh(x))
    } else {
        let s = sinh(x);
        1.0 / (s * s)
    }
}

/// sinh(x)/x, accurate near zero.
pub fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 + x2 / 6.0 + x2 * x2 / 120.0
    } else {
        sinh(x) / x
    }
}
