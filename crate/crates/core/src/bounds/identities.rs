//! Closed algebraic forms of `f(g^-1 A + g^-1 B)` for the hyperbolic functions.

use crate::error::{domain, Result};

fn finite(a: f64, b: f64) -> Result<()> {
    if a.is_finite() && b.is_finite() {
        Ok(())
    } else {
        Err(domain("arguments must be finite"))
    }
}

/// `sinh(asinh A + asinh B) = A sqrt(1 + B^2) + B sqrt(1 + A^2)`.
pub fn sinh_sum_asinh(a: f64, b: f64) -> Result<f64> {
    finite(a, b)?;
    let (p, q) = (a * b.hypot(1.0), b * a.hypot(1.0));
    if a * b >= 0.0 {
        return Ok(p + q);
    }
    // opposite signs: p + q = (p^2 - q^2)/(p - q) = (A - B)(A + B)/(p - q)
    Ok((a - b) * (a + b) / (p - q))
}

/// `cosh(asinh A + asinh B) = sqrt(1 + A^2) sqrt(1 + B^2) + A B`.
pub fn cosh_sum_asinh(a: f64, b: f64) -> Result<f64> {
    finite(a, b)?;
    let (pq, ab) = (a.hypot(1.0) * b.hypot(1.0), a * b);
    if ab >= 0.0 {
        return Ok(pq + ab);
    }
    // (pq)^2 - (ab)^2 = 1 + A^2 + B^2
    Ok((1.0 + a * a + b * b) / (pq - ab))
}

/// `cosh(acosh A + acosh B) = A B + sqrt(A^2 - 1) sqrt(B^2 - 1)` for `A, B >= 1`.
pub fn cosh_sum_acosh(a: f64, b: f64) -> Result<f64> {
    finite(a, b)?;
    if a < 1.0 || b < 1.0 {
        return Err(domain(format!(
            "acosh needs arguments >= 1, got ({a}, {b})"
        )));
    }
    let root = |x: f64| ((x - 1.0) * (x + 1.0)).sqrt();
    Ok(a * b + root(a) * root(b))
}

/// `tanh(atanh A + atanh B) = (A + B) / (1 + A B)` for `|A|, |B| < 1`.
pub fn tanh_sum_atanh(a: f64, b: f64) -> Result<f64> {
    finite(a, b)?;
    if a.abs() >= 1.0 || b.abs() >= 1.0 {
        return Err(domain(format!(
            "atanh needs |arguments| < 1, got ({a}, {b})"
        )));
    }
    let denom = if a * b >= 0.0 {
        1.0 + a * b
    } else {
        // 1 - |A||B| = (1 - |A|) + |A| (1 - |B|)
        (1.0 - a.abs()) + a.abs() * (1.0 - b.abs())
    };
    Ok((a + b) / denom)
}

/// `sech(asech A + asech B) = A B / (1 + sqrt(1 - A^2) sqrt(1 - B^2))` for `A, B in (0, 1]`.
pub fn sech_sum_asech(a: f64, b: f64) -> Result<f64> {
    finite(a, b)?;
    if !(a > 0.0 && a <= 1.0 && b > 0.0 && b <= 1.0) {
        return Err(domain(format!(
            "asech needs arguments in (0, 1], got ({a}, {b})"
        )));
    }
    let root = |x: f64| ((1.0 - x) * (1.0 + x)).sqrt();
    Ok(a * b / (1.0 + root(a) * root(b)))
}
